#pragma once

#include <cstddef>
#include <vector>

namespace somimpute {

using Unit = std::size_t;

struct GridCoord {
    std::size_t row;
    std::size_t col;
};

/// Rectangular map of rows x cols units, indexed row-major, without wraparound.
/// Unit distance is Chebyshev, so the neighborhood of radius r is a (2r+1)-wide square
/// clipped at the borders.
class GridTopology {
public:
    GridTopology(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return rows_ * cols_; }

    GridCoord coord(Unit u) const;
    Unit unit_at(std::size_t row, std::size_t col) const;

    std::size_t distance(Unit u, Unit v) const;
    /// Units within `radius` of `u`, ascending; always contains `u`.
    std::vector<Unit> neighbors(Unit u, std::size_t radius) const;

    /// Largest distance between any two units.
    std::size_t diameter() const noexcept;

    friend bool operator==(const GridTopology&, const GridTopology&) = default;

private:
    void check(Unit u) const;

    std::size_t rows_;
    std::size_t cols_;
};

}  // namespace somimpute
