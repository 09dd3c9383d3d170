#include "somimpute/metric.hpp"

#include <cmath>

namespace somimpute {

CodeBook::CodeBook(GridTopology topology, std::size_t dim, std::vector<double> codes,
                   std::vector<std::string> col_names)
    : topology_(topology), dim_(dim), codes_(std::move(codes)), col_names_(std::move(col_names)) {
    if (dim_ == 0) throw std::invalid_argument("codebook dimension must be positive");
    if (codes_.size() != topology_.size() * dim_) {
        throw std::invalid_argument("codebook holds " + std::to_string(codes_.size()) + " values, expected " +
                                    std::to_string(topology_.size() * dim_));
    }
    for (double c : codes_) {
        if (!std::isfinite(c)) throw std::invalid_argument("codebook component is not finite");
    }
    if (col_names_.empty()) {
        for (std::size_t k = 0; k < dim_; ++k) col_names_.push_back("V" + std::to_string(k + 1));
    } else if (col_names_.size() != dim_) {
        throw std::invalid_argument("codebook column names do not match its dimension");
    }
}

std::span<const double> CodeBook::code(Unit u) const {
    if (u >= units()) throw std::out_of_range("unit " + std::to_string(u) + " out of range");
    return std::span<const double>(codes_).subspan(u * dim_, dim_);
}

std::span<double> CodeBook::code(Unit u) {
    if (u >= units()) throw std::out_of_range("unit " + std::to_string(u) + " out of range");
    return std::span<double>(codes_).subspan(u * dim_, dim_);
}

double masked_sq_distance(const RowView& x, std::span<const double> code) {
    if (x.size() != code.size()) {
        throw std::invalid_argument("row has " + std::to_string(x.size()) + " components, code has " +
                                    std::to_string(code.size()));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < code.size(); ++k) {
        if (!x.observed[k]) continue;
        const double d = x.values[k] - code[k];
        sum += d * d;
    }
    return sum;
}

WinnerResult find_winner(const RowView& x, const CodeBook& codebook) {
    if (x.size() != codebook.dim()) {
        throw std::invalid_argument("row has " + std::to_string(x.size()) + " components, codebook has " +
                                    std::to_string(codebook.dim()));
    }
    if (x.all_missing()) throw UnclassifiableRow();
    WinnerResult best{0, masked_sq_distance(x, codebook.code(0))};
    for (Unit u = 1; u < codebook.units(); ++u) {
        const double d = masked_sq_distance(x, codebook.code(u));
        if (d < best.sq_distance) best = {u, d};
    }
    return best;
}

}  // namespace somimpute
