#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace somimpute {

/// Thrown when a masked cell's value is requested.
class MissingValueAccess : public std::logic_error {
public:
    MissingValueAccess(std::size_t row, std::size_t col);
};

/// Thrown for malformed or degenerate datasets (names the offending column when known).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read-only view of one observation: values are meaningful only where observed[k] != 0.
struct RowView {
    std::span<const double> values;
    std::span<const std::uint8_t> observed;

    std::size_t size() const noexcept { return values.size(); }
    bool is_observed(std::size_t k) const noexcept { return observed[k] != 0; }
    std::size_t observed_count() const noexcept;
    bool complete() const noexcept { return observed_count() == size(); }
    bool all_missing() const noexcept { return observed_count() == 0; }
};

/// n x p matrix of reals with an aligned observed/missing mask.
///
/// Missing cells carry no value; the storage slot behind a masked cell is never
/// read by any operation in this library. Every column must have at least one
/// observed entry. Rows may be entirely missing.
class DataMatrix {
public:
    DataMatrix() = default;

    /// `values` and `observed` are row-major n*p. Values behind masked cells are ignored.
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::vector<std::uint8_t> observed, std::vector<std::string> row_labels = {},
               std::vector<std::string> col_names = {},
               std::optional<std::vector<std::string>> categorical = std::nullopt);

    /// Fully observed matrix.
    static DataMatrix complete(std::size_t rows, std::size_t cols, std::vector<double> values,
                               std::vector<std::string> row_labels = {},
                               std::vector<std::string> col_names = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool observed(std::size_t r, std::size_t c) const;
    /// Throws MissingValueAccess for a masked cell.
    double value(std::size_t r, std::size_t c) const;
    std::optional<double> get(std::size_t r, std::size_t c) const;

    RowView row(std::size_t r) const;

    std::size_t missing_count() const noexcept;
    bool has_missing() const noexcept { return missing_count() != 0; }

    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_names() const noexcept { return col_names_; }
    /// Modality label per row; an empty string means the modality is missing.
    const std::optional<std::vector<std::string>>& categorical() const noexcept { return categorical_; }

    /// Copy with one cell replaced (observed) or masked (nullopt).
    DataMatrix with_cell(std::size_t r, std::size_t c, std::optional<double> v) const;
    /// Copy keeping only the listed rows, in order.
    DataMatrix select_rows(std::span<const std::size_t> rows) const;

    const std::vector<double>& raw_values() const noexcept { return values_; }
    const std::vector<std::uint8_t>& raw_mask() const noexcept { return observed_; }

private:
    void check_index(std::size_t r, std::size_t c) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
    std::vector<std::uint8_t> observed_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_names_;
    std::optional<std::vector<std::string>> categorical_;
};

/// Column indices missing in `row` (the M_x set), ascending.
std::vector<std::size_t> missing_set(const DataMatrix& data, std::size_t row);

struct StandardizationParams {
    std::vector<double> means;
    std::vector<double> stds;
};

/// Column means and population standard deviations over observed cells only.
/// Requires at least two observed entries and nonzero variance in every column.
StandardizationParams fit_standardizer(const DataMatrix& data);

/// Observed cells become (x - mean) / std; the mask is carried over unchanged.
DataMatrix standardize(const DataMatrix& data, const StandardizationParams& params);
DataMatrix destandardize(const DataMatrix& data, const StandardizationParams& params);

double standardize_value(double x, std::size_t col, const StandardizationParams& params);
double destandardize_value(double z, std::size_t col, const StandardizationParams& params);

/// Observed [min, max] of each column.
struct ColumnRange {
    double lo;
    double hi;
};
std::vector<ColumnRange> observed_ranges(const DataMatrix& data);
std::vector<double> observed_means(const DataMatrix& data);

}  // namespace somimpute
