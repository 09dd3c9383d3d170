#include <doctest.h>

#include <cmath>

#include "somimpute/evaluation.hpp"
#include "support/synthetic.hpp"

using namespace somimpute;

TEST_CASE("mask_random deletes exactly d cells per row") {
    const DataMatrix full = synthetic::correlated_periods(12, 6, 4);

    const auto none = mask_random(full, {0, 1, {}});
    CHECK(none.ledger.empty());
    CHECK(none.data.raw_values() == full.raw_values());
    CHECK(none.data.missing_count() == 0);

    for (std::size_t d = 1; d < 6; ++d) {
        const auto m = mask_random(full, {d, 11, {}});
        CHECK(m.ledger.size() == d * 12);
        for (std::size_t r = 0; r < 12; ++r) CHECK(m.data.row(r).observed_count() == 6 - d);
        for (const auto& c : m.ledger) {
            CHECK_FALSE(m.data.observed(c.row, c.col));
            CHECK(c.truth == full.value(c.row, c.col));
        }
    }
    const auto a = mask_random(full, {3, 5, {}});
    const auto b = mask_random(full, {3, 5, {}});
    CHECK(a.data.raw_mask() == b.data.raw_mask());
    const auto c = mask_random(full, {3, 6, {}});
    CHECK(a.data.raw_mask() != c.data.raw_mask());

    CHECK_THROWS_AS(mask_random(full, {6, 0, {}}), std::invalid_argument);
    CHECK_THROWS(mask_random(full.with_cell(0, 0, std::nullopt), {1, 0, {}}));
}

TEST_CASE("protected cells are never deleted") {
    const DataMatrix full = synthetic::correlated_periods(10, 5, 1);
    std::vector<CellRef> keep;
    for (std::size_t r = 0; r < 10; ++r) keep.push_back({r, 2});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = mask_random(full, {3, seed, keep});
        for (std::size_t r = 0; r < 10; ++r) CHECK(m.data.observed(r, 2));
        CHECK(m.ledger.size() == 30);
    }
}

TEST_CASE("mask_global keeps every row non-empty") {
    const DataMatrix full = synthetic::correlated_periods(15, 3, 2);
    const auto m = mask_global(full, 30, 8);
    CHECK(m.ledger.size() == 30);
    for (std::size_t r = 0; r < 15; ++r) CHECK(m.data.row(r).observed_count() >= 1);
}

TEST_CASE("rmse examples") {
    const DataMatrix truth(2, 1, {1.0, 3.0}, {1, 1});

    SUBCASE("perfect recovery") {
        ImputationReport rep{truth, {{0, 0, 1.0, {}, {}, false}}, {}};
        CHECK(rmse_deleted({{0, 0, 1.0}}, rep).rmse == 0.0);
    }
    SUBCASE("single cell off by one half") {
        ImputationReport rep{truth.with_cell(0, 0, 0.5), {{0, 0, 0.5, {}, {}, false}}, {}};
        CHECK(rmse_deleted({{0, 0, 1.0}}, rep).rmse == 0.5);
    }
    SUBCASE("errors 0 and 1") {
        ImputationReport rep{truth.with_cell(1, 0, 4.0), {{0, 0, 1.0, {}, {}, false}, {1, 0, 4.0, {}, {}, false}}, {}};
        const auto r = rmse_deleted({{0, 0, 1.0}, {1, 0, 3.0}}, rep);
        CHECK(r.rmse == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
        CHECK(r.scored == 2);
    }
    SUBCASE("unresolved cells are counted, not scored") {
        const DataMatrix two(2, 1, {1.5, 0.0}, {1, 0});
        ImputationReport rep{two, {{0, 0, 1.5, {}, {}, false}}, {{1, 0}}};
        const auto r = rmse_deleted({{0, 0, 1.0}, {1, 0, 3.0}}, rep);
        CHECK(r.rmse == 0.5);
        CHECK(r.scored == 1);
        CHECK(r.unresolved == 1);
    }
    CHECK_THROWS_AS(rmse_deleted({}, ImputationReport{truth, {}, {}}), std::invalid_argument);
}

TEST_CASE("mean baseline") {
    const DataMatrix d(3, 2, {2, 1, 0, 5, 4, 0}, {1, 1, 0, 1, 1, 0});
    const auto rep = mean_impute_baseline(d);
    CHECK(rep.filled.value(1, 0) == 3.0);
    CHECK(rep.filled.value(2, 1) == 3.0);
    CHECK(rep.cells.size() == 2);

    const DataMatrix full = synthetic::correlated_periods(10, 3, 0);
    CHECK(mean_impute_baseline(full).cells.empty());

    const DataMatrix holed = synthetic::random_holes(full, 0.3, 2);
    const DataMatrix zs = standardize(holed, fit_standardizer(holed));
    for (const auto& c : mean_impute_baseline(zs).cells) CHECK(std::abs(c.estimate) < 1e-12);
}

TEST_CASE("deletion curve on perfectly clustered data recovers the deleted values") {
    std::vector<double> v;
    for (int i = 0; i < 8; ++i) v.insert(v.end(), {1.0, 2.0, 3.0, 4.0});
    for (int i = 0; i < 8; ++i) v.insert(v.end(), {-1.0, -2.0, -3.0, -4.0});
    const DataMatrix d = DataMatrix::complete(16, 4, v);
    TrainingSchedule s;
    s.total_iters = 1500;
    s.radius0 = 1;
    DeletionCurveConfig cfg;
    cfg.deletions = {1};
    cfg.mask_seed = 3;
    const auto rep = deletion_curve(d, GridTopology(1, 2), s, cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].n_cells == 16);
    CHECK(rep.rows[0].rmse_som < 1e-6);
    CHECK(rep.rows[0].rmse_mean > 0.9);
}

TEST_CASE("deletion curve is seed deterministic") {
    const DataMatrix d = synthetic::correlated_periods(18, 6, 5);
    TrainingSchedule s;
    s.total_iters = 300;
    DeletionCurveConfig cfg;
    cfg.deletions = {1, 2, 3};
    cfg.mask_seed = 9;
    cfg.n_maps = 2;
    const auto a = deletion_curve(d, GridTopology(2, 2), s, cfg);
    const auto b = deletion_curve(d, GridTopology(2, 2), s, cfg);
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.rows[i].rmse_som == b.rows[i].rmse_som);
        CHECK(a.rows[i].rmse_mean == b.rows[i].rmse_mean);
        CHECK(a.rows[i].n_cells == 18 * a.rows[i].d);
    }
}

TEST_CASE("pairwise correlation") {
    const DataMatrix d = DataMatrix::complete(3, 3, {1, 1, -2, 2, 2, -4, 3, 3, -6});
    const auto c = pairwise_correlation(d);
    CHECK(*c.at(0, 0) == 1.0);
    CHECK(*c.at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*c.at(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));

    SUBCASE("pairs without two joint rows or with a constant column are undefined") {
        const DataMatrix h(3, 3, {1, 0, 5, 2, 0, 5, 0, 7, 5}, {1, 0, 1, 1, 0, 1, 0, 1, 1});
        const auto ch = pairwise_correlation(h);
        CHECK_FALSE(ch.at(0, 1).has_value());
        CHECK_FALSE(ch.at(0, 2).has_value());
        CHECK(*ch.at(1, 1) == 1.0);
    }
    SUBCASE("complete data matches the classical formula") {
        const DataMatrix x = synthetic::correlated_periods(40, 5, 7);
        const auto cx = pairwise_correlation(x);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                double mi = 0, mj = 0;
                for (std::size_t r = 0; r < 40; ++r) {
                    mi += x.value(r, i);
                    mj += x.value(r, j);
                }
                mi /= 40;
                mj /= 40;
                double sij = 0, sii = 0, sjj = 0;
                for (std::size_t r = 0; r < 40; ++r) {
                    sij += (x.value(r, i) - mi) * (x.value(r, j) - mj);
                    sii += (x.value(r, i) - mi) * (x.value(r, i) - mi);
                    sjj += (x.value(r, j) - mj) * (x.value(r, j) - mj);
                }
                CHECK(std::abs(*cx.at(i, j) - sij / std::sqrt(sii * sjj)) < 1e-10);
            }
        }
    }
}

TEST_CASE("modality proportions") {
    const DataMatrix d(4, 1, {0, 0, 0, 0}, {1, 1, 1, 1}, {}, {}, std::vector<std::string>{"1", "1", "2", ""});
    Assignment a;
    a.rows = {{Unit{0}, 0.0}, {Unit{0}, 0.0}, {Unit{0}, 0.0}, {Unit{2}, 0.0}};
    const auto t = modality_proportions(a, d, 3);
    REQUIRE(t.size() == 3);
    CHECK(t[0].at("1") == doctest::Approx(2.0 / 3.0));
    CHECK(t[0].at("2") == doctest::Approx(1.0 / 3.0));
    CHECK(t[1].empty());
    CHECK(t[2].empty());

    const DataMatrix f(2, 1, {0, 0}, {1, 1}, {}, {}, std::vector<std::string>{"fort2", "fort2"});
    Assignment b;
    b.rows = {{Unit{1}, 0.0}, {Unit{1}, 0.0}};
    CHECK(modality_proportions(b, f, 2)[1].at("fort2") == 1.0);

    CHECK_THROWS(modality_proportions(b, DataMatrix::complete(2, 1, {0, 0}), 2));
}

TEST_CASE("modality distributions sum to one") {
    const DataMatrix raw = synthetic::correlated_periods(30, 3, 1);
    std::vector<std::string> mods;
    for (std::size_t r = 0; r < 30; ++r) mods.push_back(r % 4 == 3 ? "" : std::to_string(r % 3));
    const DataMatrix d(30, 3, raw.raw_values(), raw.raw_mask(), raw.row_labels(), raw.col_names(), mods);
    TrainingSchedule s;
    s.total_iters = 200;
    const auto model = train(d, GridTopology(2, 3), s);
    for (const auto& m : modality_proportions(model.assignment, d, 6)) {
        if (m.empty()) continue;
        double sum = 0.0;
        for (const auto& [k, v] : m) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}
