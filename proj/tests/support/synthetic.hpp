#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/random.hpp"

namespace synthetic {

/// Standard normal by Box-Muller on the library's uniform helper, so the generated
/// datasets do not depend on the standard library's distribution code.
class Normal {
public:
    explicit Normal(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = somimpute::uniform_unit(rng_);
        const double u2 = somimpute::uniform_unit(rng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }
    double uniform() { return somimpute::uniform_unit(rng_); }
    somimpute::Rng& rng() { return rng_; }

private:
    somimpute::Rng rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Isotropic Gaussian blobs; row labels are the generating cluster index.
inline somimpute::DataMatrix gaussian_clusters(const std::vector<std::vector<double>>& centers, std::size_t per_cluster,
                                               double sd, std::uint64_t seed, std::vector<std::size_t>* truth = nullptr) {
    Normal g(seed);
    const std::size_t p = centers.front().size();
    std::vector<double> v;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < per_cluster; ++i) {
        for (std::size_t c = 0; c < centers.size(); ++c) {
            for (std::size_t k = 0; k < p; ++k) v.push_back(centers[c][k] + sd * g());
            labels.push_back("c" + std::to_string(c) + "_" + std::to_string(i));
            if (truth) truth->push_back(c);
        }
    }
    const std::size_t n = labels.size();
    return somimpute::DataMatrix::complete(n, p, std::move(v), std::move(labels));
}

/// Three-period, strongly correlated table in the spirit of a yearly budget breakdown:
/// a latent level per row (three well separated periods plus within-period drift)
/// drives every column through a positive loading plus small idiosyncratic noise.
inline somimpute::DataMatrix correlated_periods(std::size_t rows, std::size_t p, std::uint64_t seed) {
    Normal g(seed);
    std::vector<double> loading(p), offset(p);
    for (std::size_t k = 0; k < p; ++k) {
        loading[k] = 0.8 + 0.4 * g.uniform();
        offset[k] = 10.0 * g.uniform();
    }
    std::vector<double> v;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t period = i * 3 / rows;
        const double level = (static_cast<double>(period) - 1.0) * 1.6 + 0.35 * g();
        for (std::size_t k = 0; k < p; ++k) v.push_back(offset[k] + loading[k] * level + 0.2 * g());
        labels.push_back("y" + std::to_string(i) + "_p" + std::to_string(period + 1));
    }
    return somimpute::DataMatrix::complete(rows, p, std::move(v), std::move(labels));
}

/// Masks each cell with probability `rate`, never emptying a column or a row.
inline somimpute::DataMatrix random_holes(const somimpute::DataMatrix& complete, double rate, std::uint64_t seed,
                                          bool keep_rows_nonempty = true) {
    somimpute::Rng rng(seed);
    auto mask = complete.raw_mask();
    const std::size_t n = complete.rows(), p = complete.cols();
    for (auto& m : mask) m = somimpute::uniform_unit(rng) < rate ? 0 : 1;
    for (std::size_t k = 0; k < p; ++k) {
        bool any = false;
        for (std::size_t r = 0; r < n; ++r) any = any || mask[r * p + k];
        if (!any) mask[somimpute::uniform_index(rng, n) * p + k] = 1;
    }
    if (keep_rows_nonempty) {
        for (std::size_t r = 0; r < n; ++r) {
            bool any = false;
            for (std::size_t k = 0; k < p; ++k) any = any || mask[r * p + k];
            if (!any) mask[r * p + somimpute::uniform_index(rng, p)] = 1;
        }
    }
    return somimpute::DataMatrix(n, p, complete.raw_values(), std::move(mask), complete.row_labels(),
                                 complete.col_names());
}

}  // namespace synthetic
