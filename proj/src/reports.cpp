#include "somimpute/reports.hpp"

#include <ostream>

#include "somimpute/csv.hpp"

namespace somimpute {

void write_assignment_csv(std::ostream& out, const DataMatrix& data, const Assignment& assignment,
                          const GridTopology& topology, const std::vector<bool>& supplementary,
                          const SuperClassing* superclasses) {
    if (assignment.size() != data.rows()) throw std::invalid_argument("assignment does not match the dataset rows");
    out << "label,unit,grid_row,grid_col,sq_distance,status";
    if (superclasses) out << ",superclass";
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const Placement& p = assignment.rows[r];
        out << csv_escape(data.row_labels()[r]) << ',';
        if (p.unit) {
            const GridCoord c = topology.coord(*p.unit);
            out << *p.unit << ',' << c.row << ',' << c.col << ',' << format_double(p.sq_distance) << ','
                << (!supplementary.empty() && supplementary[r] ? "supplementary" : "train");
        } else {
            out << ",,,,unclassifiable";
        }
        if (superclasses) {
            out << ',';
            if (p.unit) out << superclasses->labels.at(*p.unit);
        }
        out << '\n';
    }
}

void write_provenance_csv(std::ostream& out, const ImputationReport& report,
                          const std::optional<StandardizationParams>& scaling) {
    const DataMatrix& data = report.filled;
    out << "row,label,column,estimate,units,seeds,source\n";
    for (const auto& c : report.cells) {
        const double v = scaling ? destandardize_value(c.estimate, c.col, *scaling) : c.estimate;
        out << c.row << ',' << csv_escape(data.row_labels()[c.row]) << ',' << csv_escape(data.col_names()[c.col]) << ','
            << format_double(v) << ',';
        for (std::size_t i = 0; i < c.units.size(); ++i) out << (i ? ";" : "") << c.units[i];
        out << ',';
        for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? ";" : "") << c.seeds[i];
        out << ',' << (c.fallback ? "column-mean" : c.units.size() > 1 ? "map-average" : "map") << '\n';
    }
    for (const auto& c : report.unresolved) {
        out << c.row << ',' << csv_escape(data.row_labels()[c.row]) << ',' << csv_escape(data.col_names()[c.col])
            << ",,,,unresolved\n";
    }
}

void write_eval_csv(std::ostream& out, const EvalReport& report) {
    out << "d,n_cells,rmse_som,rmse_mean,n_unresolved\n";
    for (const auto& r : report.rows) {
        out << r.d << ',' << r.n_cells << ',' << format_double(r.rmse_som) << ',' << format_double(r.rmse_mean) << ','
            << r.n_unresolved << '\n';
    }
}

void write_dendrogram_csv(std::ostream& out, const std::vector<Merge>& dendrogram) {
    out << "step,left,right,height\n";
    for (std::size_t s = 0; s < dendrogram.size(); ++s) {
        out << s + 1 << ',' << dendrogram[s].left << ',' << dendrogram[s].right << ','
            << format_double(dendrogram[s].height) << '\n';
    }
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& corr, const std::vector<std::string>& names) {
    out << "variable";
    for (const auto& n : names) out << ',' << csv_escape(n);
    out << '\n';
    for (std::size_t i = 0; i < corr.size(); ++i) {
        out << csv_escape(names.at(i));
        for (std::size_t j = 0; j < corr.size(); ++j) {
            const auto v = corr.at(i, j);
            out << ',' << (v ? format_double(*v) : "NA");
        }
        out << '\n';
    }
}

}  // namespace somimpute
