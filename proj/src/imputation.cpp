#include "somimpute/imputation.hpp"

#include <future>
#include <stdexcept>

namespace somimpute {

ImputationReport impute(const CodeBook& codebook, const DataMatrix& data) {
    return impute_with_maps({codebook}, {}, data);
}

ImputationReport impute_with_maps(const std::vector<CodeBook>& maps, const std::vector<std::uint64_t>& seeds,
                                  const DataMatrix& data) {
    if (maps.empty()) throw std::invalid_argument("need at least one map to impute");
    for (const auto& cb : maps) {
        if (cb.dim() != data.cols()) {
            throw std::invalid_argument("data has " + std::to_string(data.cols()) + " columns, model expects " +
                                        std::to_string(cb.dim()));
        }
    }
    if (trainable_rows(data, TrainingMode::IncludeIncomplete).empty()) {
        throw DataError("every row is entirely missing; nothing can be imputed");
    }

    std::vector<Assignment> assignments;
    assignments.reserve(maps.size());
    for (const auto& cb : maps) assignments.push_back(classify_supplementary(cb, data));

    auto values = data.raw_values();
    auto mask = data.raw_mask();
    ImputationReport report{DataMatrix{}, {}, {}};
    const std::size_t p = data.cols();
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        for (std::size_t k = 0; k < p; ++k) {
            if (x.is_observed(k)) continue;
            if (x.all_missing()) {
                report.unresolved.push_back({r, k});
                continue;
            }
            ImputedCell cell{r, k, 0.0, {}, seeds, false};
            double sum = 0.0;
            for (std::size_t m = 0; m < maps.size(); ++m) {
                const Unit u = *assignments[m].rows[r].unit;
                cell.units.push_back(u);
                sum += maps[m].at(u, k);
            }
            cell.estimate = maps.size() == 1 ? sum : sum / static_cast<double>(maps.size());
            values[r * p + k] = cell.estimate;
            mask[r * p + k] = 1;
            report.cells.push_back(std::move(cell));
        }
    }
    report.filled = DataMatrix(data.rows(), p, std::move(values), std::move(mask), data.row_labels(),
                               data.col_names(), data.categorical());
    return report;
}

ImputationReport impute_multi(const DataMatrix& data, const GridTopology& topology,
                              const TrainingSchedule& schedule, std::size_t n_maps, std::uint64_t base_seed,
                              TrainingMode mode) {
    if (n_maps == 0) throw std::invalid_argument("number of maps must be at least 1");
    schedule.validate();
    std::vector<std::uint64_t> seeds;
    std::vector<std::future<CodeBook>> jobs;
    for (std::size_t m = 0; m < n_maps; ++m) {
        TrainingSchedule s = schedule;
        s.rng_seed = base_seed + m;
        seeds.push_back(s.rng_seed);
        jobs.push_back(std::async(std::launch::async, [&data, &topology, s, mode] {
            return train(data, topology, s, mode).codebook;
        }));
    }
    std::vector<CodeBook> maps;
    maps.reserve(n_maps);
    for (auto& j : jobs) maps.push_back(j.get());
    return impute_with_maps(maps, seeds, data);
}

ImputationReport apply_column_fallback(ImputationReport report, const std::vector<double>& column_values) {
    if (column_values.size() != report.filled.cols()) {
        throw std::invalid_argument("fallback needs one value per column");
    }
    const DataMatrix& in = report.filled;
    auto values = in.raw_values();
    auto mask = in.raw_mask();
    for (const auto& c : report.unresolved) {
        values[c.row * in.cols() + c.col] = column_values[c.col];
        mask[c.row * in.cols() + c.col] = 1;
        report.cells.push_back({c.row, c.col, column_values[c.col], {}, {}, true});
    }
    report.unresolved.clear();
    report.filled = DataMatrix(in.rows(), in.cols(), std::move(values), std::move(mask), in.row_labels(),
                               in.col_names(), in.categorical());
    return report;
}

}  // namespace somimpute
