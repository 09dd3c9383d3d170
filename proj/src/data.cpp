#include "somimpute/data.hpp"

#include <algorithm>
#include <cmath>

namespace somimpute {

namespace {

std::string column_label(const DataMatrix& data, std::size_t c) {
    const auto& names = data.col_names();
    if (c < names.size() && !names[c].empty()) {
        return "'" + names[c] + "'";
    }
    return "#" + std::to_string(c);
}

}  // namespace

MissingValueAccess::MissingValueAccess(std::size_t row, std::size_t col)
    : std::logic_error("read of missing cell (" + std::to_string(row) + ", " + std::to_string(col) + ")") {}

std::size_t RowView::observed_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(observed.begin(), observed.end(),
                                                  [](std::uint8_t m) { return m != 0; }));
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       std::vector<std::uint8_t> observed, std::vector<std::string> row_labels,
                       std::vector<std::string> col_names,
                       std::optional<std::vector<std::string>> categorical)
    : rows_(rows),
      cols_(cols),
      values_(std::move(values)),
      observed_(std::move(observed)),
      row_labels_(std::move(row_labels)),
      col_names_(std::move(col_names)),
      categorical_(std::move(categorical)) {
    if (values_.size() != rows_ * cols_ || observed_.size() != rows_ * cols_) {
        throw DataError("values and mask must both hold rows*cols entries");
    }
    if (row_labels_.empty()) {
        row_labels_.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) row_labels_.push_back(std::to_string(r));
    } else if (row_labels_.size() != rows_) {
        throw DataError("row label count does not match row count");
    }
    if (col_names_.empty()) {
        col_names_.reserve(cols_);
        for (std::size_t c = 0; c < cols_; ++c) col_names_.push_back("V" + std::to_string(c + 1));
    } else if (col_names_.size() != cols_) {
        throw DataError("column name count does not match column count");
    }
    if (categorical_ && categorical_->size() != rows_) {
        throw DataError("categorical column length does not match row count");
    }
    for (std::size_t i = 0; i < observed_.size(); ++i) {
        if (observed_[i]) {
            if (!std::isfinite(values_[i])) {
                throw DataError("non-finite observed value at row " + std::to_string(i / cols_) +
                                ", column " + column_label(*this, i % cols_));
            }
        } else {
            values_[i] = 0.0;
        }
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        bool any = false;
        for (std::size_t r = 0; r < rows_ && !any; ++r) any = observed_[r * cols_ + c] != 0;
        if (!any) throw DataError("column " + column_label(*this, c) + " has no observed entry");
    }
}

DataMatrix DataMatrix::complete(std::size_t rows, std::size_t cols, std::vector<double> values,
                                std::vector<std::string> row_labels, std::vector<std::string> col_names) {
    std::vector<std::uint8_t> mask(rows * cols, 1);
    return DataMatrix(rows, cols, std::move(values), std::move(mask), std::move(row_labels),
                      std::move(col_names));
}

void DataMatrix::check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("cell (" + std::to_string(r) + ", " + std::to_string(c) +
                                ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

bool DataMatrix::observed(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return observed_[r * cols_ + c] != 0;
}

double DataMatrix::value(std::size_t r, std::size_t c) const {
    if (!observed(r, c)) throw MissingValueAccess(r, c);
    return values_[r * cols_ + c];
}

std::optional<double> DataMatrix::get(std::size_t r, std::size_t c) const {
    if (!observed(r, c)) return std::nullopt;
    return values_[r * cols_ + c];
}

RowView DataMatrix::row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("row " + std::to_string(r) + " out of range");
    return RowView{std::span<const double>(values_).subspan(r * cols_, cols_),
                   std::span<const std::uint8_t>(observed_).subspan(r * cols_, cols_)};
}

std::size_t DataMatrix::missing_count() const noexcept {
    return static_cast<std::size_t>(std::count(observed_.begin(), observed_.end(), std::uint8_t{0}));
}

DataMatrix DataMatrix::with_cell(std::size_t r, std::size_t c, std::optional<double> v) const {
    check_index(r, c);
    auto values = values_;
    auto mask = observed_;
    values[r * cols_ + c] = v.value_or(0.0);
    mask[r * cols_ + c] = v ? 1 : 0;
    return DataMatrix(rows_, cols_, std::move(values), std::move(mask), row_labels_, col_names_,
                      categorical_);
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> rows) const {
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    std::vector<std::string> labels;
    std::optional<std::vector<std::string>> cat;
    if (categorical_) cat.emplace();
    values.reserve(rows.size() * cols_);
    mask.reserve(rows.size() * cols_);
    for (std::size_t r : rows) {
        if (r >= rows_) throw std::out_of_range("row " + std::to_string(r) + " out of range");
        values.insert(values.end(), values_.begin() + r * cols_, values_.begin() + (r + 1) * cols_);
        mask.insert(mask.end(), observed_.begin() + r * cols_, observed_.begin() + (r + 1) * cols_);
        labels.push_back(row_labels_[r]);
        if (cat) cat->push_back((*categorical_)[r]);
    }
    return DataMatrix(rows.size(), cols_, std::move(values), std::move(mask), std::move(labels),
                      col_names_, std::move(cat));
}

std::vector<std::size_t> missing_set(const DataMatrix& data, std::size_t row) {
    const RowView x = data.row(row);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x.is_observed(k)) out.push_back(k);
    }
    return out;
}

StandardizationParams fit_standardizer(const DataMatrix& data) {
    StandardizationParams params;
    params.means.resize(data.cols());
    params.stds.resize(data.cols());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t r = 0; r < data.rows(); ++r) {
            if (auto v = data.get(r, c)) {
                sum += *v;
                ++n;
            }
        }
        if (n < 2) {
            throw DataError("column " + column_label(data, c) + " needs at least two observed values");
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < data.rows(); ++r) {
            if (auto v = data.get(r, c)) ss += (*v - mean) * (*v - mean);
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        if (!(sd > 0.0)) throw DataError("column " + column_label(data, c) + " has zero variance");
        params.means[c] = mean;
        params.stds[c] = sd;
    }
    return params;
}

namespace {

template <typename F>
DataMatrix map_observed(const DataMatrix& data, const StandardizationParams& params, F f) {
    if (params.means.size() != data.cols() || params.stds.size() != data.cols()) {
        throw DataError("standardization expects " + std::to_string(params.means.size()) +
                        " columns, data has " + std::to_string(data.cols()));
    }
    auto values = data.raw_values();
    const auto& mask = data.raw_mask();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask[i]) values[i] = f(values[i], i % data.cols());
    }
    return DataMatrix(data.rows(), data.cols(), std::move(values), mask, data.row_labels(),
                      data.col_names(), data.categorical());
}

}  // namespace

double standardize_value(double x, std::size_t col, const StandardizationParams& params) {
    return (x - params.means.at(col)) / params.stds.at(col);
}

double destandardize_value(double z, std::size_t col, const StandardizationParams& params) {
    return z * params.stds.at(col) + params.means.at(col);
}

DataMatrix standardize(const DataMatrix& data, const StandardizationParams& params) {
    return map_observed(data, params,
                        [&](double x, std::size_t c) { return standardize_value(x, c, params); });
}

DataMatrix destandardize(const DataMatrix& data, const StandardizationParams& params) {
    return map_observed(data, params,
                        [&](double z, std::size_t c) { return destandardize_value(z, c, params); });
}

std::vector<ColumnRange> observed_ranges(const DataMatrix& data) {
    std::vector<ColumnRange> out(data.cols(), ColumnRange{INFINITY, -INFINITY});
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!x.is_observed(k)) continue;
            out[k].lo = std::min(out[k].lo, x.values[k]);
            out[k].hi = std::max(out[k].hi, x.values[k]);
        }
    }
    return out;
}

std::vector<double> observed_means(const DataMatrix& data) {
    std::vector<double> sum(data.cols(), 0.0);
    std::vector<std::size_t> n(data.cols(), 0);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const RowView x = data.row(r);
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!x.is_observed(k)) continue;
            sum[k] += x.values[k];
            ++n[k];
        }
    }
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] /= static_cast<double>(n[k]);
    return sum;
}

}  // namespace somimpute
