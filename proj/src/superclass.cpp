#include "somimpute/superclass.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace somimpute {

namespace {

struct Cluster {
    Unit rep;
    std::size_t size;
    std::vector<double> sum;
};

double ward_cost(const Cluster& a, const Cluster& b) {
    const double na = static_cast<double>(a.size);
    const double nb = static_cast<double>(b.size);
    double sq = 0.0;
    for (std::size_t j = 0; j < a.sum.size(); ++j) {
        const double d = a.sum[j] / na - b.sum[j] / nb;
        sq += d * d;
    }
    return na * nb / (na + nb) * sq;
}

}  // namespace

std::vector<Merge> ward_dendrogram(std::span<const double> points, std::size_t n, std::size_t dim) {
    if (points.size() != n * dim) throw std::invalid_argument("point buffer does not match n x dim");
    std::vector<Cluster> active;
    active.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        active.push_back({i, 1, std::vector<double>(points.begin() + i * dim, points.begin() + (i + 1) * dim)});
    }

    // `active` stays sorted by representative, so the first strict minimum found in
    // (i, j) order is the lexicographically smallest pair among equal costs.
    std::vector<Merge> merges;
    merges.reserve(n > 0 ? n - 1 : 0);
    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        double best = ward_cost(active[0], active[1]);
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                if (i == 0 && j == 1) continue;
                const double c = ward_cost(active[i], active[j]);
                if (c < best) {
                    best = c;
                    bi = i;
                    bj = j;
                }
            }
        }
        Cluster& a = active[bi];
        const Cluster& b = active[bj];
        for (std::size_t d = 0; d < dim; ++d) a.sum[d] += b.sum[d];
        a.size += b.size;
        merges.push_back({a.rep, b.rep, best, a.size});
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return merges;
}

std::vector<std::size_t> cut_dendrogram(const std::vector<Merge>& dendrogram, std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::out_of_range("super-class count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    if (dendrogram.size() + 1 != n) throw std::invalid_argument("dendrogram does not cover all units");
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t u) {
        while (parent[u] != u) u = parent[u] = parent[parent[u]];
        return u;
    };
    for (std::size_t s = 0; s < n - k; ++s) parent[find(dendrogram[s].right)] = find(dendrogram[s].left);

    std::vector<std::size_t> labels(n);
    std::vector<std::size_t> label_of_root(n, n);
    std::size_t next = 0;
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t root = find(u);
        if (label_of_root[root] == n) label_of_root[root] = next++;
        labels[u] = label_of_root[root];
    }
    return labels;
}

SuperClassing hierarchical_codes(const CodeBook& codebook, std::size_t k) {
    const std::size_t n = codebook.units();
    if (k < 1 || k > n) {
        throw std::out_of_range("super-class count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    SuperClassing sc;
    sc.k = k;
    sc.dendrogram = ward_dendrogram(codebook.raw(), n, codebook.dim());
    sc.labels = cut_dendrogram(sc.dendrogram, n, k);
    return sc;
}

std::vector<std::optional<std::size_t>> superclass_of_rows(const Assignment& assignment, const SuperClassing& sc) {
    std::vector<std::optional<std::size_t>> out(assignment.size());
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        const auto& u = assignment.rows[r].unit;
        if (!u) continue;
        if (*u >= sc.labels.size()) {
            throw std::invalid_argument("assignment refers to unit " + std::to_string(*u) +
                                        " but the super-classing covers " + std::to_string(sc.labels.size()) +
                                        " units");
        }
        out[r] = sc.labels[*u];
    }
    return out;
}

}  // namespace somimpute
