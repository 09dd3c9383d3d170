#pragma once

#include <cstdint>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/metric.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

struct CellRef {
    std::size_t row;
    std::size_t col;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// One originally missing cell and where its estimate came from.
struct ImputedCell {
    std::size_t row;
    std::size_t col;
    double estimate;
    std::vector<Unit> units;           ///< winning unit in each contributing map
    std::vector<std::uint64_t> seeds;  ///< training seed of each map (empty for a given codebook)
    bool fallback = false;             ///< filled by the column-mean fallback, not by a map
};

struct ImputationReport {
    DataMatrix filled;  ///< input with every resolved cell observed
    std::vector<ImputedCell> cells;
    std::vector<CellRef> unresolved;  ///< cells of all-missing rows
};

/// Fills each missing component k of a classifiable row with component k of the
/// row's winning code vector. Observed cells are copied unchanged.
ImputationReport impute(const CodeBook& codebook, const DataMatrix& data);

/// Trains n_maps maps (seeds base_seed, base_seed+1, ...) with identical topology and
/// schedule, imputes with each and averages the estimates cell by cell.
/// Maps are trained concurrently.
ImputationReport impute_multi(const DataMatrix& data, const GridTopology& topology,
                              const TrainingSchedule& schedule, std::size_t n_maps, std::uint64_t base_seed,
                              TrainingMode mode = TrainingMode::IncludeIncomplete);

/// Same averaging over already trained codebooks (seeds are recorded as given).
ImputationReport impute_with_maps(const std::vector<CodeBook>& maps, const std::vector<std::uint64_t>& seeds,
                                  const DataMatrix& data);

/// Resolves the remaining cells with per-column values (typically observed column means).
ImputationReport apply_column_fallback(ImputationReport report, const std::vector<double>& column_values);

}  // namespace somimpute
