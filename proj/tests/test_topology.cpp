#include <doctest.h>

#include <algorithm>

#include "somimpute/topology.hpp"

using namespace somimpute;

TEST_CASE("Chebyshev grid distance") {
    const GridTopology g(3, 3);
    CHECK(g.distance(g.unit_at(0, 0), g.unit_at(0, 0)) == 0);
    CHECK(g.distance(g.unit_at(0, 0), g.unit_at(1, 1)) == 1);
    CHECK(g.distance(g.unit_at(0, 0), g.unit_at(2, 1)) == 2);
    CHECK_THROWS_AS(g.distance(0, 9), std::out_of_range);
    CHECK_THROWS_AS(GridTopology(0, 3), std::invalid_argument);
}

TEST_CASE("neighborhoods on a 3x3 grid") {
    const GridTopology g(3, 3);
    CHECK(g.neighbors(4, 0) == std::vector<Unit>{4});
    CHECK(g.neighbors(4, 1).size() == 9);
    CHECK(g.neighbors(0, 1) == std::vector<Unit>{0, 1, 3, 4});
    CHECK(g.neighbors(8, 100).size() == 9);
    CHECK_THROWS_AS(g.neighbors(9, 0), std::out_of_range);
}

TEST_CASE("distance is a metric and neighbors agree with it (enumeration)") {
    for (std::size_t rows = 1; rows <= 4; ++rows) {
        for (std::size_t cols = 1; cols <= 5; ++cols) {
            const GridTopology g(rows, cols);
            const std::size_t n = g.size();
            for (Unit u = 0; u < n; ++u) {
                CHECK(g.neighbors(u, 0) == std::vector<Unit>{u});
                std::size_t prev = 0;
                for (std::size_t r = 0; r <= g.diameter() + 1; ++r) {
                    const auto nb = g.neighbors(u, r);
                    CHECK(nb.size() >= prev);
                    prev = nb.size();
                    for (Unit v = 0; v < n; ++v) {
                        const bool in = std::find(nb.begin(), nb.end(), v) != nb.end();
                        CHECK(in == (g.distance(u, v) <= r));
                        const auto back = g.neighbors(v, r);
                        CHECK(in == (std::find(back.begin(), back.end(), u) != back.end()));
                    }
                }
                CHECK(prev == n);
                for (Unit v = 0; v < n; ++v) {
                    CHECK(g.distance(u, v) == g.distance(v, u));
                    CHECK((g.distance(u, v) == 0) == (u == v));
                    for (Unit w = 0; w < n; ++w) CHECK(g.distance(u, w) <= g.distance(u, v) + g.distance(v, w));
                }
            }
        }
    }
}
