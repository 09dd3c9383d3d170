#include "somimpute/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

#include "somimpute/random.hpp"

namespace somimpute {

MaskedData mask_random(const DataMatrix& data, const MaskingPlan& plan) {
    const std::size_t p = data.cols();
    const std::size_t d = plan.per_row_deletions;
    if (d >= p) {
        throw std::invalid_argument("cannot delete " + std::to_string(d) + " of " + std::to_string(p) +
                                    " values per row; at least one must remain");
    }
    if (data.has_missing()) throw DataError("random masking expects a complete matrix");

    std::vector<std::uint8_t> blocked(data.rows() * p, 0);
    for (const auto& c : plan.protected_cells) {
        if (c.row >= data.rows() || c.col >= p) throw std::out_of_range("protected cell outside the matrix");
        blocked[c.row * p + c.col] = 1;
    }

    // A draw that leaves some column without any observed value cannot form a
    // DataMatrix; such draws are rejected and the stream continues.
    constexpr int max_attempts = 1000;
    Rng rng(plan.seed);
    std::vector<std::size_t> pool;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto mask = data.raw_mask();
        std::vector<DeletedCell> ledger;
        ledger.reserve(data.rows() * d);
        std::vector<std::size_t> col_left(p, data.rows());
        for (std::size_t r = 0; r < data.rows(); ++r) {
            pool.clear();
            for (std::size_t k = 0; k < p; ++k) {
                if (!blocked[r * p + k]) pool.push_back(k);
            }
            if (pool.size() < d) {
                throw std::invalid_argument("row " + std::to_string(r) + " has only " + std::to_string(pool.size()) +
                                            " unprotected cells for " + std::to_string(d) + " deletions");
            }
            for (std::size_t i = 0; i < d; ++i) {
                std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
                const std::size_t k = pool[i];
                mask[r * p + k] = 0;
                --col_left[k];
                ledger.push_back({r, k, data.value(r, k)});
            }
        }
        if (std::find(col_left.begin(), col_left.end(), std::size_t{0}) != col_left.end()) continue;
        return {DataMatrix(data.rows(), p, data.raw_values(), std::move(mask), data.row_labels(), data.col_names(),
                           data.categorical()),
                std::move(ledger)};
    }
    throw DataError("random masking keeps emptying a column; too few rows for " + std::to_string(d) +
                    " deletions per row");
}

MaskedData mask_global(const DataMatrix& data, std::size_t n_cells, std::uint64_t seed) {
    if (data.has_missing()) throw DataError("random masking expects a complete matrix");
    const std::size_t p = data.cols();
    const std::size_t total = data.rows() * p;
    if (n_cells > total - data.rows()) {
        throw std::invalid_argument("cannot delete " + std::to_string(n_cells) + " cells and keep one value per row");
    }
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    auto mask = data.raw_mask();
    std::vector<std::size_t> left(data.rows(), p);
    std::vector<std::size_t> col_left(p, data.rows());
    std::vector<DeletedCell> ledger;
    for (std::size_t i = 0; i < total && ledger.size() < n_cells; ++i) {
        std::swap(order[i], order[i + uniform_index(rng, total - i)]);
        const std::size_t r = order[i] / p;
        const std::size_t k = order[i] % p;
        if (left[r] == 1 || col_left[k] == 1) continue;
        --left[r];
        --col_left[k];
        mask[order[i]] = 0;
        ledger.push_back({r, k, data.value(r, k)});
    }
    if (ledger.size() < n_cells) {
        throw std::invalid_argument("cannot delete " + std::to_string(n_cells) +
                                    " cells and keep one value per row and column");
    }
    return {DataMatrix(data.rows(), p, data.raw_values(), std::move(mask), data.row_labels(), data.col_names(),
                       data.categorical()),
            std::move(ledger)};
}

RmseResult rmse_deleted(const std::vector<DeletedCell>& ledger, const ImputationReport& report) {
    if (ledger.empty()) throw std::invalid_argument("no deleted cells to score");
    const DataMatrix& filled = report.filled;
    std::vector<std::uint8_t> unresolved(filled.rows() * filled.cols(), 0);
    for (const auto& c : report.unresolved) unresolved[c.row * filled.cols() + c.col] = 1;

    RmseResult res;
    double sse = 0.0;
    for (const auto& cell : ledger) {
        if (unresolved.at(cell.row * filled.cols() + cell.col)) {
            ++res.unresolved;
            continue;
        }
        const auto est = filled.get(cell.row, cell.col);
        if (!est) {
            throw std::invalid_argument("deleted cell (" + std::to_string(cell.row) + ", " + std::to_string(cell.col) +
                                        ") missing from the imputation report");
        }
        const double e = *est - cell.truth;
        sse += e * e;
        ++res.scored;
    }
    if (res.scored > 0) res.rmse = std::sqrt(sse / static_cast<double>(res.scored));
    return res;
}

ImputationReport mean_impute_baseline(const DataMatrix& data) {
    const auto means = observed_means(data);
    auto values = data.raw_values();
    auto mask = data.raw_mask();
    ImputationReport report{DataMatrix{}, {}, {}};
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) continue;
        const std::size_t k = i % data.cols();
        values[i] = means[k];
        mask[i] = 1;
        report.cells.push_back({i / data.cols(), k, means[k], {}, {}, true});
    }
    report.filled = DataMatrix(data.rows(), data.cols(), std::move(values), std::move(mask), data.row_labels(),
                               data.col_names(), data.categorical());
    return report;
}

namespace {

EvalRow run_arm(const DataMatrix& standardized, std::size_t d, const GridTopology& topology,
                const TrainingSchedule& schedule, const DeletionCurveConfig& config) {
    MaskingPlan plan;
    plan.per_row_deletions = d;
    plan.seed = mix_seed(config.mask_seed + d);
    const MaskedData masked = config.global_mcar ? mask_global(standardized, d * standardized.rows(), plan.seed)
                                                 : mask_random(standardized, plan);

    EvalRow row;
    row.d = d;
    row.n_cells = masked.ledger.size();
    if (d == 0) return row;

    ImputationReport som = config.n_maps == 1
                               ? impute(train(masked.data, topology, schedule, config.mode).codebook, masked.data)
                               : impute_multi(masked.data, topology, schedule, config.n_maps, schedule.rng_seed,
                                              config.mode);
    const RmseResult som_err = rmse_deleted(masked.ledger, som);
    const RmseResult mean_err = rmse_deleted(masked.ledger, mean_impute_baseline(masked.data));
    row.rmse_som = som_err.rmse;
    row.rmse_mean = mean_err.rmse;
    row.n_unresolved = som_err.unresolved;
    return row;
}

}  // namespace

EvalReport deletion_curve(const DataMatrix& data, const GridTopology& topology, const TrainingSchedule& schedule,
                          const DeletionCurveConfig& config) {
    if (data.has_missing()) throw DataError("the deletion experiment needs a complete matrix");
    if (config.n_maps == 0) throw std::invalid_argument("number of maps must be at least 1");
    schedule.validate();
    for (std::size_t d : config.deletions) {
        if (d >= data.cols()) {
            throw std::invalid_argument("deletion count " + std::to_string(d) + " must stay below " +
                                        std::to_string(data.cols()) + " columns");
        }
    }
    const DataMatrix standardized = standardize(data, fit_standardizer(data));

    std::vector<std::future<EvalRow>> arms;
    for (std::size_t d : config.deletions) {
        arms.push_back(std::async(std::launch::async, [&, d] {
            return run_arm(standardized, d, topology, schedule, config);
        }));
    }
    EvalReport report;
    for (auto& a : arms) report.rows.push_back(a.get());
    return report;
}

CorrelationMatrix pairwise_correlation(const DataMatrix& data) {
    const std::size_t p = data.cols();
    CorrelationMatrix out(p);
    for (std::size_t i = 0; i < p; ++i) {
        out.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < p; ++j) {
            double si = 0.0, sj = 0.0;
            std::size_t n = 0;
            for (std::size_t r = 0; r < data.rows(); ++r) {
                const RowView x = data.row(r);
                if (!x.is_observed(i) || !x.is_observed(j)) continue;
                si += x.values[i];
                sj += x.values[j];
                ++n;
            }
            std::optional<double> rho;
            if (n >= 2) {
                const double mi = si / static_cast<double>(n);
                const double mj = sj / static_cast<double>(n);
                double cij = 0.0, cii = 0.0, cjj = 0.0;
                for (std::size_t r = 0; r < data.rows(); ++r) {
                    const RowView x = data.row(r);
                    if (!x.is_observed(i) || !x.is_observed(j)) continue;
                    const double a = x.values[i] - mi;
                    const double b = x.values[j] - mj;
                    cij += a * b;
                    cii += a * a;
                    cjj += b * b;
                }
                if (cii > 0.0 && cjj > 0.0) rho = std::clamp(cij / std::sqrt(cii * cjj), -1.0, 1.0);
            }
            out.set(i, j, rho);
            out.set(j, i, rho);
        }
    }
    return out;
}

std::vector<std::map<std::string, double>> modality_proportions(const Assignment& assignment,
                                                                const DataMatrix& data, std::size_t units) {
    if (!data.categorical()) throw DataError("dataset has no categorical column");
    if (assignment.size() != data.rows()) throw std::invalid_argument("assignment does not match the dataset rows");
    const auto& cat = *data.categorical();
    std::vector<std::map<std::string, double>> table(units);
    std::vector<std::size_t> totals(units, 0);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const auto& u = assignment.rows[r].unit;
        if (!u || cat[r].empty()) continue;
        table.at(*u)[cat[r]] += 1.0;
        ++totals[*u];
    }
    for (std::size_t u = 0; u < units; ++u) {
        for (auto& [label, count] : table[u]) count /= static_cast<double>(totals[u]);
    }
    return table;
}

}  // namespace somimpute
