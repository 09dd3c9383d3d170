#include "somimpute/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace somimpute {

GridTopology::GridTopology(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid needs at least one row and one column");
}

void GridTopology::check(Unit u) const {
    if (u >= size()) {
        throw std::out_of_range("unit " + std::to_string(u) + " outside a " + std::to_string(rows_) +
                                "x" + std::to_string(cols_) + " grid");
    }
}

GridCoord GridTopology::coord(Unit u) const {
    check(u);
    return {u / cols_, u % cols_};
}

Unit GridTopology::unit_at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("grid coordinate out of range");
    return row * cols_ + col;
}

std::size_t GridTopology::distance(Unit u, Unit v) const {
    const GridCoord a = coord(u);
    const GridCoord b = coord(v);
    const std::size_t dr = a.row > b.row ? a.row - b.row : b.row - a.row;
    const std::size_t dc = a.col > b.col ? a.col - b.col : b.col - a.col;
    return std::max(dr, dc);
}

std::vector<Unit> GridTopology::neighbors(Unit u, std::size_t radius) const {
    const GridCoord c = coord(u);
    const std::size_t r0 = c.row > radius ? c.row - radius : 0;
    const std::size_t c0 = c.col > radius ? c.col - radius : 0;
    const std::size_t r1 = std::min(rows_ - 1, c.row + std::min(radius, rows_));
    const std::size_t c1 = std::min(cols_ - 1, c.col + std::min(radius, cols_));
    std::vector<Unit> out;
    out.reserve((r1 - r0 + 1) * (c1 - c0 + 1));
    for (std::size_t r = r0; r <= r1; ++r) {
        for (std::size_t k = c0; k <= c1; ++k) out.push_back(r * cols_ + k);
    }
    return out;
}

std::size_t GridTopology::diameter() const noexcept { return std::max(rows_, cols_) - 1; }

}  // namespace somimpute
