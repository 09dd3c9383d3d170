#pragma once

#include <optional>
#include <vector>

#include "somimpute/metric.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

/// One agglomeration step. Clusters are named by their smallest unit index.
struct Merge {
    Unit left;      ///< smaller representative; also the representative of the merged cluster
    Unit right;
    double height;  ///< Ward cost: increase of the within-cluster sum of squares
    std::size_t size;
};

struct SuperClassing {
    std::vector<std::size_t> labels;  ///< super-class per unit, numbered by first appearance in unit order
    std::size_t k = 0;
    std::vector<Merge> dendrogram;    ///< full merge sequence, units-1 steps
};

/// Ward agglomeration over arbitrary points (row-major n x dim).
/// Equal costs are resolved by the lexicographically smallest (left, right) pair.
std::vector<Merge> ward_dendrogram(std::span<const double> points, std::size_t n, std::size_t dim);

/// Labels obtained by applying the first n-k merges.
std::vector<std::size_t> cut_dendrogram(const std::vector<Merge>& dendrogram, std::size_t n, std::size_t k);

/// Ward clustering of the code vectors cut at k super-classes.
SuperClassing hierarchical_codes(const CodeBook& codebook, std::size_t k);

/// Super-class of every row through its unit; unassigned rows stay unlabeled.
std::vector<std::optional<std::size_t>> superclass_of_rows(const Assignment& assignment, const SuperClassing& sc);

}  // namespace somimpute
