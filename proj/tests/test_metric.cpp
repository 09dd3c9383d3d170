#include <doctest.h>

#include "somimpute/metric.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace somimpute;

TEST_CASE("masked squared distance") {
    const DataMatrix x(3, 3, {1, 0, 3, 0, 0, 0, 1, 1, 1}, {1, 0, 1, 0, 0, 0, 1, 1, 1}, {}, {}, std::nullopt);
    const std::vector<double> c{0, 5, 1};
    CHECK(masked_sq_distance(x.row(0), c) == 5.0);
    CHECK(masked_sq_distance(x.row(1), c) == 0.0);
    const DataMatrix same = DataMatrix::complete(1, 3, {0, 5, 1});
    CHECK(masked_sq_distance(same.row(0), c) == 0.0);
    CHECK_THROWS_AS(masked_sq_distance(x.row(0), std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("winner: examples and tie-breaking") {
    const DataMatrix x(2, 2, {0, 0, 1, 1}, {1, 0, 1, 1});
    CodeBook two(GridTopology(1, 2), 2, {0, 9, 5, 0});
    CHECK(winner(x.row(0), two) == 0);

    CodeBook one(GridTopology(1, 1), 2, {7, 7});
    CHECK(winner(x.row(0), one) == 0);

    // units 2 and 5 both sit at distance 1 from x
    std::vector<double> codes(6 * 2, 10.0);
    codes[2 * 2] = 1.0;
    codes[2 * 2 + 1] = 0.0;
    codes[5 * 2] = -1.0;
    codes[5 * 2 + 1] = 0.0;
    const CodeBook tie(GridTopology(2, 3), 2, codes);
    const DataMatrix origin = DataMatrix::complete(1, 2, {0, 0});
    CHECK(winner(origin.row(0), tie) == 2);

    const DataMatrix empty(2, 2, {0, 0, 1, 1}, {0, 0, 1, 1});
    CHECK_THROWS_AS(winner(empty.row(0), two), UnclassifiableRow);
}

TEST_CASE("masked distance properties on random instances") {
    synthetic::Normal g(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t p = 1 + somimpute::uniform_index(g.rng(), 8);
        std::vector<double> xv(p), c(p);
        std::vector<std::uint8_t> mask(p);
        for (std::size_t k = 0; k < p; ++k) {
            xv[k] = g();
            c[k] = g();
            mask[k] = g.uniform() < 0.7;
        }
        const std::vector<std::uint8_t> all(p, 1);
        const RowView full{xv, all};
        double euclid = 0.0;
        for (std::size_t k = 0; k < p; ++k) euclid += (xv[k] - c[k]) * (xv[k] - c[k]);
        CHECK(masked_sq_distance(full, c) == euclid);

        // masking one more component never increases the distance
        const RowView x{xv, mask};
        for (std::size_t k = 0; k < p; ++k) {
            if (!mask[k]) continue;
            auto fewer = mask;
            fewer[k] = 0;
            CHECK(masked_sq_distance(RowView{xv, fewer}, c) <= masked_sq_distance(x, c));
        }
    }
}

TEST_CASE("winner is invariant under positive rescaling and deterministic") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        synthetic::Normal g(seed);
        const std::size_t p = 4;
        std::vector<double> codes(9 * p);
        for (double& v : codes) v = g();
        const CodeBook cb(GridTopology(3, 3), p, codes);
        std::vector<double> scaled = codes;
        for (double& v : scaled) v *= 4.0;  // squared distances scale by 16
        const CodeBook cb4(GridTopology(3, 3), p, scaled);
        const DataMatrix d = synthetic::random_holes(synthetic::gaussian_clusters({{0, 0, 0, 0}}, 20, 1.0, seed), 0.4,
                                                    seed);
        for (std::size_t r = 0; r < d.rows(); ++r) {
            std::vector<double> xs(p);
            for (std::size_t k = 0; k < p; ++k) xs[k] = d.row(r).values[k] * 4.0;
            const RowView x4{xs, d.row(r).observed};
            CHECK(winner(d.row(r), cb) == winner(x4, cb4));
            CHECK(winner(d.row(r), cb) == winner(d.row(r), cb));
            CHECK(winner(d.row(r), cb) == oracle::winner_bruteforce(d, r, cb));
        }
    }
}
