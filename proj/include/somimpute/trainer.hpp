#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/metric.hpp"
#include "somimpute/topology.hpp"

namespace somimpute {

/// Learning-rate and neighborhood schedule for online training.
///
/// alpha decays linearly from alpha0 (first step) to alpha_final (last step).
/// The radius is a step function decreasing linearly from radius0 to 1 over the
/// first part of training; the last `zero_radius_fraction` of the steps (rounded
/// up, at least one step) run at radius 0, i.e. winner-only updates.
struct TrainingSchedule {
    std::size_t total_iters = 1000;
    double alpha0 = 0.5;
    double alpha_final = 0.01;
    std::size_t radius0 = 1;
    double zero_radius_fraction = 0.4;
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    double alpha(std::size_t t) const;
    std::size_t radius(std::size_t t) const;
    /// Index of the first step trained at radius 0.
    std::size_t zero_phase_start() const;
};

/// radius0 covering half the larger grid side (at least 1).
std::size_t default_radius0(const GridTopology& topology);

enum class TrainingMode {
    IncludeIncomplete,  ///< incomplete rows take part, updating only their observed components
    CompleteOnly,       ///< only complete rows train; the rest are classified afterwards
};

std::string_view to_string(TrainingMode mode);
TrainingMode parse_training_mode(std::string_view s);

struct Placement {
    std::optional<Unit> unit;  ///< empty for an all-missing (unclassifiable) row
    double sq_distance = 0.0;
};

struct Assignment {
    std::vector<Placement> rows;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t unclassified() const noexcept;
    /// Rows per unit; unclassified rows are not counted.
    std::vector<std::size_t> unit_counts(std::size_t units) const;
};

/// Code components drawn uniformly from each column's observed range.
CodeBook init_codebook(const DataMatrix& data, const GridTopology& topology, std::uint64_t seed);

/// One online update: the winner of x and its grid neighbors within `radius` move
/// towards x by `alpha` on the observed components of x only. Returns the winner.
/// alpha must lie in (0, 1].
Unit sgd_step(CodeBook& codebook, const RowView& x, std::size_t radius, double alpha);

struct TrainResult {
    CodeBook codebook;
    Assignment assignment;          ///< every input row against the final codebook
    std::size_t skipped_all_missing = 0;
    std::size_t excluded_incomplete = 0;  ///< CompleteOnly: incomplete rows left out of training
};

/// Seeded online training. Steps present rows drawn uniformly with replacement from
/// the eligible set (rows with an observed component, or complete rows in
/// CompleteOnly mode). Data is expected to be standardized by the caller.
TrainResult train(const DataMatrix& data, const GridTopology& topology, const TrainingSchedule& schedule,
                  TrainingMode mode = TrainingMode::IncludeIncomplete);

/// Same as train() but starting from a given codebook instead of init_codebook().
TrainResult train_from(CodeBook initial, const DataMatrix& data, const TrainingSchedule& schedule,
                       TrainingMode mode = TrainingMode::IncludeIncomplete);

/// Rows eligible for training under `mode`, ascending.
std::vector<std::size_t> trainable_rows(const DataMatrix& data, TrainingMode mode);

/// Winner of every row against a frozen codebook; all-missing rows stay unassigned.
Assignment classify_supplementary(const CodeBook& codebook, const DataMatrix& data);

struct ForgyResult {
    CodeBook centroids;  ///< laid out on a 1 x n_classes grid
    Assignment assignment;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> distortion;  ///< total masked distortion after each assignment pass
};

/// Batch k-means with masked assignment and observed-only centroid means. A centroid
/// component with no observed value among its members keeps its previous value.
ForgyResult forgy_train(const DataMatrix& data, std::size_t n_classes, std::size_t max_iters,
                        std::uint64_t seed);
ForgyResult forgy_from(const DataMatrix& data, CodeBook initial, std::size_t max_iters);

/// Initial centroids: n_classes distinct classifiable rows, missing parts filled with column means.
CodeBook forgy_init(const DataMatrix& data, std::size_t n_classes, std::uint64_t seed);

}  // namespace somimpute
