#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/imputation.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

struct MaskingPlan {
    std::size_t per_row_deletions = 1;
    std::uint64_t seed = 0;
    std::vector<CellRef> protected_cells;  ///< never deleted
};

struct DeletedCell {
    std::size_t row;
    std::size_t col;
    double truth;
};

struct MaskedData {
    DataMatrix data;
    std::vector<DeletedCell> ledger;  ///< ordered by row, then by draw order within the row
};

/// Deletes exactly d cells per row of a complete matrix, drawn uniformly without
/// replacement among the row's unprotected cells.
MaskedData mask_random(const DataMatrix& data, const MaskingPlan& plan);

/// Extension: deletes `n_cells` cells uniformly over the whole matrix, skipping any
/// draw that would leave its row without an observed value.
MaskedData mask_global(const DataMatrix& data, std::size_t n_cells, std::uint64_t seed);

struct RmseResult {
    double rmse = 0.0;
    std::size_t scored = 0;      ///< deleted cells that received an estimate
    std::size_t unresolved = 0;  ///< deleted cells left unresolved (excluded from rmse)
};

/// Root mean squared error over the deleted cells that were filled.
RmseResult rmse_deleted(const std::vector<DeletedCell>& ledger, const ImputationReport& report);

/// Every missing cell replaced by the observed mean of its column.
ImputationReport mean_impute_baseline(const DataMatrix& data);

struct EvalRow {
    std::size_t d = 0;
    std::size_t n_cells = 0;
    double rmse_som = 0.0;
    double rmse_mean = 0.0;
    std::size_t n_unresolved = 0;
};

struct EvalReport {
    std::vector<EvalRow> rows;
};

struct DeletionCurveConfig {
    std::vector<std::size_t> deletions{1, 2, 3, 4, 5, 6, 7, 8};
    std::size_t n_maps = 1;
    std::uint64_t mask_seed = 0;
    TrainingMode mode = TrainingMode::IncludeIncomplete;
    /// Extension: delete d*n cells anywhere (mask_global) instead of d per row.
    bool global_mcar = false;
};

/// Deletion experiment on a complete matrix. The data are standardized once (fit on
/// the complete matrix) so errors are in standardized units; for each d the mask is
/// drawn with seed mix_seed(mask_seed + d), maps are trained on the masked data and
/// the deleted cells are estimated by the map and by column means. Arms run
/// concurrently and each is fully seeded.
EvalReport deletion_curve(const DataMatrix& data, const GridTopology& topology, const TrainingSchedule& schedule,
                          const DeletionCurveConfig& config);

/// Pearson correlations over pairwise-complete rows; nullopt marks a pair with fewer
/// than two jointly observed rows or a constant column over those rows.
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(std::size_t p) : p_(p), values_(p * p) {}
    std::size_t size() const noexcept { return p_; }
    std::optional<double> at(std::size_t i, std::size_t j) const { return values_.at(i * p_ + j); }
    void set(std::size_t i, std::size_t j, std::optional<double> v) { values_.at(i * p_ + j) = v; }

private:
    std::size_t p_;
    std::vector<std::optional<double>> values_;
};

CorrelationMatrix pairwise_correlation(const DataMatrix& data);

/// Per unit: relative frequency of each modality among the rows assigned to it.
/// Rows with a missing (empty) modality are left out; empty units get an empty map.
std::vector<std::map<std::string, double>> modality_proportions(const Assignment& assignment,
                                                                const DataMatrix& data, std::size_t units);

}  // namespace somimpute
