#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "somimpute/data.hpp"

namespace somimpute {

struct CsvOptions {
    std::vector<std::string> missing_markers{"", "NA"};
    /// Column holding row labels; defaults to the first column.
    std::optional<std::string> label_column;
    /// Non-numeric column kept as modality labels instead of a variable.
    std::optional<std::string> categorical_column;
};

/// Header row plus one row per observation. Cells equal (after trimming) to a
/// missing marker are masked; every other numeric cell must parse as a finite decimal.
DataMatrix read_csv(const std::filesystem::path& path, const CsvOptions& options = {});
DataMatrix read_csv(std::istream& in, const CsvOptions& options = {}, const std::string& source = "<stream>");

/// Splits one CSV record; double quotes may enclose fields containing commas.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

/// %.17g, which round-trips every finite double.
std::string format_double(double v);

/// Label column first, then variables; missing cells become empty fields.
void write_csv(std::ostream& out, const DataMatrix& data, const std::string& label_header = "label");
void write_csv(const std::filesystem::path& path, const DataMatrix& data, const std::string& label_header = "label");

}  // namespace somimpute
