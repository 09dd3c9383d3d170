#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "somimpute/superclass.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace somimpute;

namespace {

CodeBook line_codes(std::vector<double> xs) {
    const std::size_t n = xs.size();
    return CodeBook(GridTopology(1, n), 1, std::move(xs));
}

std::vector<std::vector<double>> as_points(const CodeBook& cb) {
    std::vector<std::vector<double>> pts;
    for (Unit u = 0; u < cb.units(); ++u) pts.emplace_back(cb.code(u).begin(), cb.code(u).end());
    return pts;
}

std::size_t distinct(const std::vector<std::size_t>& v) { return std::set<std::size_t>(v.begin(), v.end()).size(); }

}  // namespace

TEST_CASE("cut extremes") {
    const CodeBook cb = line_codes({3, 1, 4, 1.5, 9});
    const auto all = hierarchical_codes(cb, 5);
    CHECK(all.labels == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(all.dendrogram.size() == 4);
    const auto one = hierarchical_codes(cb, 1);
    CHECK(one.labels == std::vector<std::size_t>(5, 0));
    CHECK_THROWS_AS(hierarchical_codes(cb, 0), std::out_of_range);
    CHECK_THROWS_AS(hierarchical_codes(cb, 6), std::out_of_range);
}

TEST_CASE("codes 0, 0.1, 10, 10.1 split into the two obvious pairs") {
    const CodeBook cb = line_codes({0, 0.1, 10, 10.1});
    const auto sc = hierarchical_codes(cb, 2);
    CHECK(sc.labels == std::vector<std::size_t>{0, 0, 1, 1});
    CHECK(oracle::same_partition(sc.labels, oracle::best_partition(as_points(cb), 2)));
}

TEST_CASE("merge heights are the Ward cost increase") {
    // 0 and 1 merge first at 1*1/2*1 = 0.5; then {0,1} with 4: 2*1/3*(3.5)^2
    const auto dg = ward_dendrogram(std::vector<double>{0, 1, 4}, 3, 1);
    REQUIRE(dg.size() == 2);
    CHECK(dg[0].left == 0);
    CHECK(dg[0].right == 1);
    CHECK(dg[0].height == doctest::Approx(0.5));
    CHECK(dg[0].size == 2);
    CHECK(dg[1].height == doctest::Approx(2.0 / 3.0 * 3.5 * 3.5));
    CHECK(dg[1].size == 3);
}

TEST_CASE("equal costs merge the lexicographically smallest pair") {
    const auto dg = ward_dendrogram(std::vector<double>{0, 1, 2, 3}, 4, 1);
    CHECK(dg[0].left == 0);
    CHECK(dg[0].right == 1);
    CHECK(dg[1].left == 2);
    CHECK(dg[1].right == 3);
}

TEST_CASE("dendrogram properties on random codebooks") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        synthetic::Normal g(seed);
        const std::size_t n = 2 + seed % 9, dim = 1 + seed % 3;
        std::vector<double> pts(n * dim);
        for (auto& v : pts) v = g();
        const auto dg = ward_dendrogram(pts, n, dim);
        REQUIRE(dg.size() == n - 1);
        for (std::size_t i = 1; i < dg.size(); ++i) CHECK(dg[i].height >= dg[i - 1].height - 1e-12);
        CHECK(dg.back().size == n);
        for (std::size_t k = 1; k <= n; ++k) {
            const auto labels = cut_dendrogram(dg, n, k);
            CHECK(distinct(labels) == k);
            if (k > 1) {
                // the coarser cut is the finer one with exactly two classes fused
                const auto coarser = cut_dendrogram(dg, n, k - 1);
                std::set<std::pair<std::size_t, std::size_t>> pairs;
                for (std::size_t i = 0; i < n; ++i) pairs.insert({labels[i], coarser[i]});
                CHECK(pairs.size() == k);
                std::map<std::size_t, std::size_t> fine_per_coarse;
                for (const auto& [f, c] : pairs) ++fine_per_coarse[c];
                std::size_t fused = 0;
                for (const auto& [c, count] : fine_per_coarse) fused += count == 2;
                CHECK(fused == 1);
            }
        }
    }
}

TEST_CASE("permuting the units permutes the partition only") {
    synthetic::Normal g(3);
    const std::size_t n = 7;
    std::vector<double> pts(n * 2);
    for (auto& v : pts) v = 3.0 * g();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = (i * 3 + 2) % n;
    std::vector<double> permuted(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        permuted[i * 2] = pts[perm[i] * 2];
        permuted[i * 2 + 1] = pts[perm[i] * 2 + 1];
    }
    const CodeBook a(GridTopology(1, n), 2, pts);
    const CodeBook b(GridTopology(1, n), 2, permuted);
    for (std::size_t k = 1; k <= n; ++k) {
        const auto la = hierarchical_codes(a, k).labels;
        const auto lb = hierarchical_codes(b, k).labels;
        std::vector<std::size_t> back(n);
        for (std::size_t i = 0; i < n; ++i) back[perm[i]] = lb[i];
        CHECK(oracle::same_partition(la, back));
    }
}

TEST_CASE("rows inherit their unit's super-class") {
    const CodeBook cb = line_codes({0, 0.1, 10});
    const auto sc = hierarchical_codes(cb, 2);
    Assignment a;
    a.rows = {{Unit{2}, 0.0}, {std::nullopt, 0.0}, {Unit{1}, 0.0}};
    const auto rows = superclass_of_rows(a, sc);
    CHECK(rows[0] == sc.labels[2]);
    CHECK_FALSE(rows[1].has_value());
    CHECK(rows[2] == sc.labels[1]);

    const auto one = superclass_of_rows(a, hierarchical_codes(cb, 1));
    CHECK(one[0] == one[2]);

    Assignment bad;
    bad.rows = {{Unit{5}, 0.0}};
    CHECK_THROWS(superclass_of_rows(bad, sc));
}
