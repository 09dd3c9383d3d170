#include "somimpute/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace somimpute {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_decimal(const std::string& s) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DataMatrix read_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_csv(in, options, path.string());
}

DataMatrix read_csv(std::istream& in, const CsvOptions& options, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(source + ": empty file");
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    auto find_column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError(source + ": no column named '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t label_col = options.label_column ? find_column(*options.label_column) : 0;
    // header.size() stands for "no categorical column"
    const std::size_t cat_col = options.categorical_column ? find_column(*options.categorical_column) : header.size();
    const bool has_cat = cat_col < header.size();
    if (has_cat && cat_col == label_col) throw DataError(source + ": label and categorical column coincide");

    std::vector<std::size_t> numeric;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_col || c == cat_col) continue;
        numeric.push_back(c);
        names.push_back(header[c]);
    }
    if (numeric.empty()) throw DataError(source + ": no numeric columns");

    auto is_missing = [&](const std::string& cell) {
        return std::find(options.missing_markers.begin(), options.missing_markers.end(), cell) !=
               options.missing_markers.end();
    };

    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    std::vector<std::string> labels;
    std::vector<std::string> modalities;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError(source + ": line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(header.size()));
        }
        labels.push_back(trim(fields[label_col]));
        if (has_cat) {
            const std::string m = trim(fields[cat_col]);
            modalities.push_back(is_missing(m) ? std::string{} : m);
        }
        for (std::size_t c : numeric) {
            const std::string cell = trim(fields[c]);
            if (is_missing(cell)) {
                values.push_back(0.0);
                mask.push_back(0);
                continue;
            }
            const auto v = parse_decimal(cell);
            if (!v) {
                throw DataError(source + ": line " + std::to_string(line_no) + ", column '" + header[c] +
                                "': cannot parse '" + cell + "' as a number");
            }
            values.push_back(*v);
            mask.push_back(1);
        }
    }
    const std::size_t rows = labels.size();
    std::optional<std::vector<std::string>> cat;
    if (has_cat) cat = std::move(modalities);
    try {
        return DataMatrix(rows, numeric.size(), std::move(values), std::move(mask), std::move(labels),
                          std::move(names), std::move(cat));
    } catch (const DataError& e) {
        throw DataError(source + ": " + e.what());
    }
}

void write_csv(std::ostream& out, const DataMatrix& data, const std::string& label_header) {
    out << csv_escape(label_header);
    for (const auto& n : data.col_names()) out << ',' << csv_escape(n);
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        out << csv_escape(data.row_labels()[r]);
        for (std::size_t c = 0; c < data.cols(); ++c) {
            out << ',';
            if (auto v = data.get(r, c)) out << format_double(*v);
        }
        out << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const DataMatrix& data, const std::string& label_header) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_csv(out, data, label_header);
}

}  // namespace somimpute
