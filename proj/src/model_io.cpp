#include "somimpute/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "somimpute/csv.hpp"

namespace somimpute {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError(std::string("model file: bad ") + what + " '" + s + "'");
    }
    return v;
}

std::vector<double> parse_row(const std::vector<std::string>& fields, std::size_t first, std::size_t p,
                              const char* what) {
    if (fields.size() != first + p) {
        throw DataError(std::string("model file: ") + what + " line has " + std::to_string(fields.size() - first) +
                        " values, expected " + std::to_string(p));
    }
    std::vector<double> out;
    for (std::size_t i = first; i < fields.size(); ++i) out.push_back(parse_number<double>(fields[i], what));
    return out;
}

}  // namespace

void save_model(std::ostream& out, const SomModel& model) {
    const CodeBook& cb = model.codebook;
    out << cb.topology().rows() << '\t' << cb.topology().cols() << '\t' << cb.dim();
    for (const auto& n : cb.col_names()) out << '\t' << n;
    out << '\n';
    for (Unit u = 0; u < cb.units(); ++u) {
        const auto code = cb.code(u);
        for (std::size_t k = 0; k < code.size(); ++k) out << (k ? "\t" : "") << format_double(code[k]);
        out << '\n';
    }
    const TrainingSchedule& s = model.schedule;
    out << "schedule\titers=" << s.total_iters << "\talpha0=" << format_double(s.alpha0)
        << "\talpha_final=" << format_double(s.alpha_final) << "\tradius0=" << s.radius0
        << "\tzero_fraction=" << format_double(s.zero_radius_fraction) << "\tseed=" << s.rng_seed
        << "\tmode=" << to_string(model.mode) << '\n';
    if (model.scaling) {
        out << "mean";
        for (double m : model.scaling->means) out << '\t' << format_double(m);
        out << "\nstd";
        for (double sd : model.scaling->stds) out << '\t' << format_double(sd);
        out << '\n';
    }
}

void save_model(const std::filesystem::path& path, const SomModel& model) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    save_model(out, model);
}

SomModel load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("model file: empty");
    const auto head = split_tabs(line);
    if (head.size() < 3) throw DataError("model file: header needs rows, cols and dimension");
    const auto rows = parse_number<std::size_t>(head[0], "grid rows");
    const auto cols = parse_number<std::size_t>(head[1], "grid cols");
    const auto p = parse_number<std::size_t>(head[2], "dimension");
    if (head.size() != 3 + p) throw DataError("model file: header lists the wrong number of column names");
    std::vector<std::string> names(head.begin() + 3, head.end());

    const GridTopology topo(rows, cols);
    std::vector<double> codes;
    codes.reserve(topo.size() * p);
    for (Unit u = 0; u < topo.size(); ++u) {
        if (!std::getline(in, line)) throw DataError("model file: truncated at unit " + std::to_string(u));
        const auto row = parse_row(split_tabs(line), 0, p, "code vector");
        codes.insert(codes.end(), row.begin(), row.end());
    }

    TrainingSchedule schedule;
    TrainingMode mode = TrainingMode::IncludeIncomplete;
    std::optional<std::vector<double>> means, stds;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f[0] == "schedule") {
            std::map<std::string, std::string> kv;
            for (std::size_t i = 1; i < f.size(); ++i) {
                const auto eq = f[i].find('=');
                if (eq == std::string::npos) throw DataError("model file: bad schedule entry '" + f[i] + "'");
                kv[f[i].substr(0, eq)] = f[i].substr(eq + 1);
            }
            auto get = [&](const char* key) -> const std::string& {
                const auto it = kv.find(key);
                if (it == kv.end()) throw DataError(std::string("model file: schedule lacks ") + key);
                return it->second;
            };
            schedule.total_iters = parse_number<std::size_t>(get("iters"), "iters");
            schedule.alpha0 = parse_number<double>(get("alpha0"), "alpha0");
            schedule.alpha_final = parse_number<double>(get("alpha_final"), "alpha_final");
            schedule.radius0 = parse_number<std::size_t>(get("radius0"), "radius0");
            schedule.zero_radius_fraction = parse_number<double>(get("zero_fraction"), "zero_fraction");
            schedule.rng_seed = parse_number<std::uint64_t>(get("seed"), "seed");
            mode = parse_training_mode(get("mode"));
        } else if (f[0] == "mean") {
            means = parse_row(f, 1, p, "mean");
        } else if (f[0] == "std") {
            stds = parse_row(f, 1, p, "std");
        } else {
            throw DataError("model file: unexpected line '" + f[0] + "'");
        }
    }
    if (means.has_value() != stds.has_value()) throw DataError("model file: mean and std lines must come together");

    SomModel model{CodeBook(topo, p, std::move(codes), std::move(names)), std::nullopt, schedule, mode};
    if (means) model.scaling = StandardizationParams{std::move(*means), std::move(*stds)};
    return model;
}

SomModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model " + path.string());
    return load_model(in);
}

}  // namespace somimpute
