#include "somimpute/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "somimpute/random.hpp"

namespace somimpute {

void TrainingSchedule::validate() const {
    if (total_iters == 0) throw std::invalid_argument("iteration count must be positive");
    if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw std::invalid_argument("alpha0 must lie in (0, 1)");
    if (!(alpha_final > 0.0 && alpha_final <= alpha0)) {
        throw std::invalid_argument("alpha_final must lie in (0, alpha0]");
    }
    if (!(zero_radius_fraction > 0.0 && zero_radius_fraction <= 1.0)) {
        throw std::invalid_argument("zero-radius fraction must lie in (0, 1]");
    }
}

double TrainingSchedule::alpha(std::size_t t) const {
    if (total_iters <= 1) return alpha0;
    const double frac = static_cast<double>(t) / static_cast<double>(total_iters - 1);
    return alpha0 + (alpha_final - alpha0) * frac;
}

std::size_t TrainingSchedule::zero_phase_start() const {
    auto zero_steps = static_cast<std::size_t>(std::ceil(zero_radius_fraction * static_cast<double>(total_iters)));
    zero_steps = std::clamp<std::size_t>(zero_steps, 1, total_iters);
    return total_iters - zero_steps;
}

std::size_t TrainingSchedule::radius(std::size_t t) const {
    const std::size_t active = zero_phase_start();
    if (t >= active || radius0 == 0) return 0;
    // ceil(radius0 * (active - t) / active): radius0 at t = 0, never below 1 before the zero phase
    return (radius0 * (active - t) + active - 1) / active;
}

std::size_t default_radius0(const GridTopology& topology) {
    return std::max<std::size_t>(1, std::max(topology.rows(), topology.cols()) / 2);
}

std::string_view to_string(TrainingMode mode) {
    return mode == TrainingMode::CompleteOnly ? "complete-only" : "include-incomplete";
}

TrainingMode parse_training_mode(std::string_view s) {
    if (s == "include-incomplete") return TrainingMode::IncludeIncomplete;
    if (s == "complete-only") return TrainingMode::CompleteOnly;
    throw std::invalid_argument("unknown training mode '" + std::string(s) +
                                "' (expected include-incomplete or complete-only)");
}

std::size_t Assignment::unclassified() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const Placement& p) { return !p.unit; }));
}

std::vector<std::size_t> Assignment::unit_counts(std::size_t units) const {
    std::vector<std::size_t> counts(units, 0);
    for (const auto& p : rows) {
        if (p.unit) ++counts.at(*p.unit);
    }
    return counts;
}

CodeBook init_codebook(const DataMatrix& data, const GridTopology& topology, std::uint64_t seed) {
    if (data.cols() == 0) throw DataError("cannot initialize a codebook for zero columns");
    const auto ranges = observed_ranges(data);
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        if (!(ranges[k].lo <= ranges[k].hi)) throw DataError("column " + std::to_string(k) + " has no observed entry");
    }
    Rng rng = init_engine(seed);
    std::vector<double> codes(topology.size() * data.cols());
    for (Unit u = 0; u < topology.size(); ++u) {
        for (std::size_t k = 0; k < data.cols(); ++k) {
            const auto [lo, hi] = ranges[k];
            codes[u * data.cols() + k] = std::min(hi, lo + uniform_unit(rng) * (hi - lo));
        }
    }
    return CodeBook(topology, data.cols(), std::move(codes), data.col_names());
}

Unit sgd_step(CodeBook& codebook, const RowView& x, std::size_t radius, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("learning rate must lie in (0, 1]");
    const Unit win = winner(x, codebook);
    for (Unit v : codebook.topology().neighbors(win, radius)) {
        auto code = codebook.code(v);
        for (std::size_t k = 0; k < code.size(); ++k) {
            if (!x.observed[k]) continue;
            const double c = code[k];
            const double target = x.values[k];
            // convex combination; the clamp only absorbs rounding overshoot
            code[k] = std::clamp(c + alpha * (target - c), std::min(c, target), std::max(c, target));
        }
    }
    return win;
}

std::vector<std::size_t> trainable_rows(const DataMatrix& data, TrainingMode mode) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        const bool ok = mode == TrainingMode::CompleteOnly ? x.complete() : !x.all_missing();
        if (ok) rows.push_back(r);
    }
    return rows;
}

TrainResult train(const DataMatrix& data, const GridTopology& topology, const TrainingSchedule& schedule,
                  TrainingMode mode) {
    schedule.validate();
    return train_from(init_codebook(data, topology, schedule.rng_seed), data, schedule, mode);
}

TrainResult train_from(CodeBook initial, const DataMatrix& data, const TrainingSchedule& schedule,
                       TrainingMode mode) {
    schedule.validate();
    if (initial.dim() != data.cols()) {
        throw std::invalid_argument("codebook dimension " + std::to_string(initial.dim()) +
                                    " does not match data with " + std::to_string(data.cols()) + " columns");
    }
    const auto eligible = trainable_rows(data, mode);
    if (eligible.empty()) {
        throw DataError(mode == TrainingMode::CompleteOnly ? "complete-only training needs at least one complete row"
                                                          : "no row has an observed component");
    }

    TrainResult result{std::move(initial), {}, 0, 0};
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        if (x.all_missing()) {
            ++result.skipped_all_missing;
        } else if (mode == TrainingMode::CompleteOnly && !x.complete()) {
            ++result.excluded_incomplete;
        }
    }

    Rng rng = sampling_engine(schedule.rng_seed);
    for (std::size_t t = 0; t < schedule.total_iters; ++t) {
        const std::size_t r = eligible[uniform_index(rng, eligible.size())];
        sgd_step(result.codebook, data.row(r), schedule.radius(t), schedule.alpha(t));
    }
    result.assignment = classify_supplementary(result.codebook, data);
    return result;
}

Assignment classify_supplementary(const CodeBook& codebook, const DataMatrix& data) {
    if (codebook.dim() != data.cols()) {
        throw std::invalid_argument("data has " + std::to_string(data.cols()) + " columns, model expects " +
                                    std::to_string(codebook.dim()));
    }
    Assignment out;
    out.rows.resize(data.rows());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        if (x.all_missing()) continue;
        const auto w = find_winner(x, codebook);
        out.rows[r] = {w.unit, w.sq_distance};
    }
    return out;
}

CodeBook forgy_init(const DataMatrix& data, std::size_t n_classes, std::uint64_t seed) {
    if (n_classes == 0) throw std::invalid_argument("number of classes must be at least 1");
    auto candidates = trainable_rows(data, TrainingMode::IncludeIncomplete);
    if (candidates.empty()) throw DataError("no classifiable rows");
    if (candidates.size() < n_classes) {
        throw DataError("only " + std::to_string(candidates.size()) + " classifiable rows for " +
                        std::to_string(n_classes) + " classes");
    }
    Rng rng = init_engine(seed);
    for (std::size_t i = 0; i < n_classes; ++i) {
        std::swap(candidates[i], candidates[i + uniform_index(rng, candidates.size() - i)]);
    }
    const auto means = observed_means(data);
    std::vector<double> codes;
    codes.reserve(n_classes * data.cols());
    for (std::size_t i = 0; i < n_classes; ++i) {
        const RowView x = data.row(candidates[i]);
        for (std::size_t k = 0; k < x.size(); ++k) codes.push_back(x.is_observed(k) ? x.values[k] : means[k]);
    }
    return CodeBook(GridTopology(1, n_classes), data.cols(), std::move(codes), data.col_names());
}

ForgyResult forgy_train(const DataMatrix& data, std::size_t n_classes, std::size_t max_iters,
                        std::uint64_t seed) {
    return forgy_from(data, forgy_init(data, n_classes, seed), max_iters);
}

ForgyResult forgy_from(const DataMatrix& data, CodeBook initial, std::size_t max_iters) {
    if (trainable_rows(data, TrainingMode::IncludeIncomplete).empty()) throw DataError("no classifiable rows");
    ForgyResult res{std::move(initial), {}, 0, false, {}};
    const std::size_t p = data.cols();
    const std::size_t k = res.centroids.units();

    auto total_distortion = [](const Assignment& a) {
        double s = 0.0;
        for (const auto& pl : a.rows) {
            if (pl.unit) s += pl.sq_distance;
        }
        return s;
    };

    res.assignment = classify_supplementary(res.centroids, data);
    res.distortion.push_back(total_distortion(res.assignment));
    while (res.iterations < max_iters) {
        std::vector<double> sum(k * p, 0.0);
        std::vector<std::size_t> count(k * p, 0);
        for (std::size_t r = 0; r < data.rows(); ++r) {
            const auto& pl = res.assignment.rows[r];
            if (!pl.unit) continue;
            const RowView x = data.row(r);
            for (std::size_t j = 0; j < p; ++j) {
                if (!x.observed[j]) continue;
                sum[*pl.unit * p + j] += x.values[j];
                ++count[*pl.unit * p + j];
            }
        }
        for (Unit u = 0; u < k; ++u) {
            auto c = res.centroids.code(u);
            for (std::size_t j = 0; j < p; ++j) {
                if (count[u * p + j] > 0) c[j] = sum[u * p + j] / static_cast<double>(count[u * p + j]);
            }
        }
        ++res.iterations;

        Assignment next = classify_supplementary(res.centroids, data);
        res.distortion.push_back(total_distortion(next));
        const bool same = std::equal(next.rows.begin(), next.rows.end(), res.assignment.rows.begin(),
                                     [](const Placement& a, const Placement& b) { return a.unit == b.unit; });
        res.assignment = std::move(next);
        if (same) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace somimpute
