#pragma once

#include <span>
#include <string>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/topology.hpp"

namespace somimpute {

/// One fully-defined p-dimensional code vector per grid unit.
class CodeBook {
public:
    CodeBook(GridTopology topology, std::size_t dim, std::vector<double> codes,
             std::vector<std::string> col_names = {});

    const GridTopology& topology() const noexcept { return topology_; }
    std::size_t units() const noexcept { return topology_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& col_names() const noexcept { return col_names_; }

    std::span<const double> code(Unit u) const;
    std::span<double> code(Unit u);
    double at(Unit u, std::size_t k) const { return code(u)[k]; }

    const std::vector<double>& raw() const noexcept { return codes_; }

    friend bool operator==(const CodeBook&, const CodeBook&) = default;

private:
    GridTopology topology_;
    std::size_t dim_;
    std::vector<double> codes_;
    std::vector<std::string> col_names_;
};

/// Sum of (x_k - c_k)^2 over the observed components of x, accumulated in
/// ascending k. An all-missing row yields 0.
double masked_sq_distance(const RowView& x, std::span<const double> code);

/// Thrown by winner() for a row with no observed component.
class UnclassifiableRow : public std::invalid_argument {
public:
    UnclassifiableRow() : std::invalid_argument("row has no observed component; winner is undefined") {}
};

struct WinnerResult {
    Unit unit;
    double sq_distance;
};

/// Unit minimizing the masked distance; ties go to the lowest unit index.
WinnerResult find_winner(const RowView& x, const CodeBook& codebook);
inline Unit winner(const RowView& x, const CodeBook& codebook) { return find_winner(x, codebook).unit; }

}  // namespace somimpute
