// somimpute: train, classify, impute, evaluate and render self-organizing maps on
// data with missing values. Every run writes manifest.txt next to its outputs;
// `somimpute replay <manifest> --out DIR` re-executes it.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "somimpute/csv.hpp"
#include "somimpute/data.hpp"
#include "somimpute/evaluation.hpp"
#include "somimpute/imputation.hpp"
#include "somimpute/manifest.hpp"
#include "somimpute/model_io.hpp"
#include "somimpute/render.hpp"
#include "somimpute/reports.hpp"
#include "somimpute/superclass.hpp"
#include "somimpute/trainer.hpp"

namespace fs = std::filesystem;
using namespace somimpute;

namespace {

constexpr const char* kManifestVersion = "1";

struct DataOptions {
    std::string input;
    std::vector<std::string> missing_markers;
    std::string label_column;
    std::string categorical;

    CsvOptions csv() const {
        CsvOptions o;
        if (!missing_markers.empty()) o.missing_markers = missing_markers;
        if (!label_column.empty()) o.label_column = label_column;
        if (!categorical.empty()) o.categorical_column = categorical;
        return o;
    }
};

struct MapOptions {
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    std::size_t iters = 1000;
    double alpha0 = 0.5;
    double alpha_final = 0.01;
    std::size_t radius0 = 0;  // 0: derived from the grid
    double zero_fraction = 0.4;
    std::uint64_t seed = 1;
    std::string mode = "include-incomplete";

    GridTopology topology() const { return GridTopology(grid_rows, grid_cols); }

    TrainingSchedule schedule() const {
        TrainingSchedule s;
        s.total_iters = iters;
        s.alpha0 = alpha0;
        s.alpha_final = alpha_final;
        s.radius0 = radius0 == 0 ? default_radius0(topology()) : radius0;
        s.zero_radius_fraction = zero_fraction;
        s.rng_seed = seed;
        return s;
    }

    void validate() const {
        if (grid_rows == 0 || grid_cols == 0) throw std::invalid_argument("--grid-rows and --grid-cols must be positive");
        schedule().validate();
        parse_training_mode(mode);
    }
};

void add_data_options(CLI::App* sub, DataOptions& d, bool input_required = true) {
    auto* in = sub->add_option("--input", d.input, "CSV with a header row; first column holds row labels");
    if (input_required) in->required();
    in->check(CLI::ExistingFile);
    sub->add_option("--missing-marker", d.missing_markers, "cell text meaning 'missing' (repeatable; default: empty and NA)");
    sub->add_option("--label-column", d.label_column, "column holding row labels (default: first column)");
    sub->add_option("--categorical", d.categorical, "non-numeric column kept as modality labels");
}

void add_map_options(CLI::App* sub, MapOptions& m, bool required) {
    auto* r = sub->add_option("--grid-rows", m.grid_rows, "map rows");
    auto* c = sub->add_option("--grid-cols", m.grid_cols, "map columns");
    if (required) {
        r->required();
        c->required();
    }
    sub->add_option("--iters", m.iters, "training steps");
    sub->add_option("--alpha0", m.alpha0, "initial learning rate, in (0,1)");
    sub->add_option("--alpha-final", m.alpha_final, "final learning rate, in (0, alpha0]");
    sub->add_option("--radius0", m.radius0, "initial neighborhood radius (0: half the larger grid side)");
    sub->add_option("--zero-fraction", m.zero_fraction, "fraction of steps trained with radius 0");
    sub->add_option("--seed", m.seed, "random seed");
    sub->add_option("--mode", m.mode, "include-incomplete | complete-only")
        ->check(CLI::IsMember({"include-incomplete", "complete-only"}));
}

std::vector<bool> incomplete_flags(const DataMatrix& data) {
    std::vector<bool> out(data.rows());
    for (std::size_t r = 0; r < data.rows(); ++r) out[r] = !data.row(r).complete();
    return out;
}

template <typename F>
void write_file(const fs::path& path, F&& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    body(out);
}

void write_text(const fs::path& path, const std::string& text) {
    write_file(path, [&](std::ostream& o) { o << text; });
}

/// Records every option of `sub` (given or defaulted) as opt.<name>, plus file digests.
Manifest start_manifest(const CLI::App* sub, const std::vector<std::string>& file_options) {
    Manifest m;
    m.add("manifest_version", kManifestVersion);
    m.add("command", sub->get_name());
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = opt->get_lnames().front();
        if (name == "help" || name == "out") continue;
        const bool is_file = std::find(file_options.begin(), file_options.end(), name) != file_options.end();
        if (opt->count() > 0) {
            for (const auto& v : opt->results()) {
                if (is_file) {
                    m.add("opt." + name, fs::absolute(v).lexically_normal().string());
                    m.add("digest." + name, file_digest(v));
                } else {
                    m.add("opt." + name, v);
                }
            }
        } else if (!is_file && !opt->get_default_str().empty() && opt->get_expected_max() <= 1) {
            m.add("opt." + name, opt->get_default_str());
        }
    }
    return m;
}

void finish_manifest(Manifest& m, const fs::path& out_dir, const std::vector<std::string>& outputs) {
    for (const auto& o : outputs) m.add("output", o);
    m.write(out_dir / "manifest.txt");
}

SuperClassing maybe_superclasses(const CodeBook& cb, std::size_t k, std::optional<SuperClassing>& holder) {
    holder = hierarchical_codes(cb, k);
    return *holder;
}

// ---------------------------------------------------------------- train

struct TrainCmd {
    DataOptions data;
    MapOptions map;
    std::size_t superclasses = 0;
    std::string out;
};

int run_train(const CLI::App* sub, const TrainCmd& cmd) {
    cmd.map.validate();
    const DataMatrix raw = read_csv(cmd.data.input, cmd.data.csv());
    const StandardizationParams scaling = fit_standardizer(raw);
    const DataMatrix z = standardize(raw, scaling);
    const TrainingMode mode = parse_training_mode(cmd.map.mode);
    const TrainingSchedule schedule = cmd.map.schedule();
    const TrainResult res = train(z, cmd.map.topology(), schedule, mode);

    const fs::path dir(cmd.out);
    fs::create_directories(dir);
    Manifest manifest = start_manifest(sub, {"input"});
    std::vector<std::string> outputs{"model.txt", "assignment.csv", "map.txt", "map.svg", "correlation.csv"};

    save_model(dir / "model.txt", SomModel{res.codebook, scaling, schedule, mode});

    std::optional<SuperClassing> sc;
    if (cmd.superclasses > 0) {
        maybe_superclasses(res.codebook, cmd.superclasses, sc);
        write_file(dir / "dendrogram.csv", [&](std::ostream& o) { write_dendrogram_csv(o, sc->dendrogram); });
        outputs.push_back("dendrogram.csv");
    }
    const std::vector<bool> supplementary =
        mode == TrainingMode::CompleteOnly ? incomplete_flags(z) : std::vector<bool>{};
    write_file(dir / "assignment.csv", [&](std::ostream& o) {
        write_assignment_csv(o, z, res.assignment, res.codebook.topology(), supplementary, sc ? &*sc : nullptr);
    });

    std::optional<std::vector<std::map<std::string, double>>> modalities;
    if (z.categorical()) modalities = modality_proportions(res.assignment, z, res.codebook.units());
    MapView view{&res.codebook, &res.assignment, z.row_labels(), supplementary, sc ? &*sc : nullptr,
                 modalities ? &*modalities : nullptr, ""};
    write_text(dir / "map.txt", render_map_text(view));
    write_text(dir / "map.svg", render_map_svg(view));
    write_file(dir / "correlation.csv",
               [&](std::ostream& o) { write_correlation_csv(o, pairwise_correlation(raw), raw.col_names()); });

    manifest.add("effective.radius0", std::to_string(schedule.radius0));
    manifest.add("effective.skipped_all_missing", std::to_string(res.skipped_all_missing));
    manifest.add("effective.excluded_incomplete", std::to_string(res.excluded_incomplete));
    finish_manifest(manifest, dir, outputs);
    if (res.skipped_all_missing > 0) {
        std::cerr << "warning: " << res.skipped_all_missing << " all-missing rows skipped and left unclassified\n";
    }
    return 0;
}

// ---------------------------------------------------------------- classify

struct ClassifyCmd {
    DataOptions data;
    std::string model;
    std::size_t superclasses = 0;
    std::string out;
};

DataMatrix to_model_space(const DataMatrix& raw, const SomModel& model) {
    if (raw.cols() != model.codebook.dim()) {
        throw std::invalid_argument("data has " + std::to_string(raw.cols()) + " numeric columns, model expects " +
                                    std::to_string(model.codebook.dim()));
    }
    if (raw.col_names() != model.codebook.col_names()) {
        throw std::invalid_argument("data columns do not match the model's columns");
    }
    return model.scaling ? standardize(raw, *model.scaling) : raw;
}

int run_classify(const CLI::App* sub, const ClassifyCmd& cmd) {
    const SomModel model = load_model(cmd.model);
    const DataMatrix z = to_model_space(read_csv(cmd.data.input, cmd.data.csv()), model);
    const Assignment a = classify_supplementary(model.codebook, z);

    const fs::path dir(cmd.out);
    fs::create_directories(dir);
    Manifest manifest = start_manifest(sub, {"input", "model"});
    std::vector<std::string> outputs{"assignment.csv"};
    std::optional<SuperClassing> sc;
    if (cmd.superclasses > 0) maybe_superclasses(model.codebook, cmd.superclasses, sc);
    write_file(dir / "assignment.csv", [&](std::ostream& o) {
        write_assignment_csv(o, z, a, model.codebook.topology(), std::vector<bool>(z.rows(), true),
                             sc ? &*sc : nullptr);
    });
    finish_manifest(manifest, dir, outputs);
    if (a.unclassified() > 0) std::cerr << "warning: " << a.unclassified() << " rows are unclassifiable\n";
    return 0;
}

// ---------------------------------------------------------------- impute

struct ImputeCmd {
    DataOptions data;
    MapOptions map;
    std::string model;
    std::size_t n_maps = 1;
    std::string fallback = "none";
    std::string out;
};

int run_impute(const CLI::App* sub, const ImputeCmd& cmd) {
    const DataMatrix raw = read_csv(cmd.data.input, cmd.data.csv());
    if (cmd.n_maps == 0) throw std::invalid_argument("--n-maps must be at least 1");

    StandardizationParams scaling;
    ImputationReport report{DataMatrix{}, {}, {}};
    if (!cmd.model.empty()) {
        if (cmd.n_maps != 1) throw std::invalid_argument("--n-maps applies only when training from --input");
        const SomModel model = load_model(cmd.model);
        if (!model.scaling) throw std::invalid_argument("model file carries no standardization parameters");
        scaling = *model.scaling;
        report = impute(model.codebook, to_model_space(raw, model));
    } else {
        cmd.map.validate();
        scaling = fit_standardizer(raw);
        const DataMatrix z = standardize(raw, scaling);
        const TrainingMode mode = parse_training_mode(cmd.map.mode);
        const TrainingSchedule schedule = cmd.map.schedule();
        report = cmd.n_maps == 1 ? impute_with_maps({train(z, cmd.map.topology(), schedule, mode).codebook},
                                                    {schedule.rng_seed}, z)
                                 : impute_multi(z, cmd.map.topology(), schedule, cmd.n_maps, schedule.rng_seed, mode);
    }
    const std::size_t unresolved = report.unresolved.size();
    if (cmd.fallback == "column-mean") {
        // training-time column means are 0 in standardized space
        report = apply_column_fallback(std::move(report), std::vector<double>(raw.cols(), 0.0));
    }

    const fs::path dir(cmd.out);
    fs::create_directories(dir);
    Manifest manifest = start_manifest(sub, {"input", "model"});
    write_file(dir / "filled.csv", [&](std::ostream& o) {
        // observed cells are copied from the input so they stay bit-identical
        auto values = destandardize(report.filled, scaling).raw_values();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (raw.raw_mask()[i]) values[i] = raw.raw_values()[i];
        }
        write_csv(o, DataMatrix(raw.rows(), raw.cols(), std::move(values), report.filled.raw_mask(), raw.row_labels(),
                                raw.col_names()));
    });
    write_file(dir / "provenance.csv", [&](std::ostream& o) { write_provenance_csv(o, report, scaling); });
    manifest.add("effective.imputed_cells", std::to_string(report.cells.size()));
    manifest.add("effective.unresolved_cells", std::to_string(unresolved));
    finish_manifest(manifest, dir, {"filled.csv", "provenance.csv"});
    if (!report.unresolved.empty()) {
        std::cerr << "warning: " << report.unresolved.size()
                  << " cells of all-missing rows left unresolved (see --fallback)\n";
    }
    return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateCmd {
    DataOptions data;
    MapOptions map;
    std::size_t d_min = 1;
    std::size_t d_max = 8;
    std::size_t n_maps = 1;
    std::uint64_t mask_seed = 1;
    std::string masking = "per-row";
    std::string out;
};

int run_evaluate(const CLI::App* sub, const EvaluateCmd& cmd) {
    cmd.map.validate();
    if (cmd.d_min > cmd.d_max) throw std::invalid_argument("--d-min exceeds --d-max");
    const DataMatrix raw = read_csv(cmd.data.input, cmd.data.csv());
    DeletionCurveConfig config;
    config.deletions.clear();
    for (std::size_t d = cmd.d_min; d <= cmd.d_max; ++d) config.deletions.push_back(d);
    config.n_maps = cmd.n_maps;
    config.mask_seed = cmd.mask_seed;
    config.mode = parse_training_mode(cmd.map.mode);
    config.global_mcar = cmd.masking == "global";
    const EvalReport report = deletion_curve(raw, cmd.map.topology(), cmd.map.schedule(), config);

    const fs::path dir(cmd.out);
    fs::create_directories(dir);
    Manifest manifest = start_manifest(sub, {"input"});
    write_file(dir / "eval.csv", [&](std::ostream& o) { write_eval_csv(o, report); });
    write_text(dir / "eval.svg", render_curve_svg(report, "Estimation error vs. deleted values per row"));
    finish_manifest(manifest, dir, {"eval.csv", "eval.svg"});
    return 0;
}

// ---------------------------------------------------------------- render

struct RenderCmd {
    DataOptions data;
    std::string model;
    std::string supplementary;
    std::size_t superclasses = 0;
    std::string title;
    std::string out;
};

// The modality column is optional in the supplementary file.
CsvOptions supplementary_csv(const std::string& path, CsvOptions csv) {
    if (!csv.categorical_column) return csv;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    auto names = split_csv_line(header);
    for (auto& n : names) {
        const auto b = n.find_first_not_of(" \t\r");
        const auto e = n.find_last_not_of(" \t\r");
        n = b == std::string::npos ? std::string{} : n.substr(b, e - b + 1);
    }
    if (std::find(names.begin(), names.end(), *csv.categorical_column) == names.end()) csv.categorical_column.reset();
    return csv;
}

int run_render(const CLI::App* sub, const RenderCmd& cmd) {
    const SomModel model = load_model(cmd.model);
    const CsvOptions csv = cmd.data.csv();
    DataMatrix members = to_model_space(read_csv(cmd.data.input, csv), model);
    std::vector<std::string> labels = members.row_labels();
    std::vector<bool> supp(members.rows(), false);
    Assignment a = classify_supplementary(model.codebook, members);
    std::optional<DataMatrix> extra;
    if (!cmd.supplementary.empty()) {
        extra = to_model_space(read_csv(cmd.supplementary, supplementary_csv(cmd.supplementary, csv)), model);
        const Assignment b = classify_supplementary(model.codebook, *extra);
        a.rows.insert(a.rows.end(), b.rows.begin(), b.rows.end());
        labels.insert(labels.end(), extra->row_labels().begin(), extra->row_labels().end());
        supp.resize(labels.size(), true);
    }
    std::optional<SuperClassing> sc;
    if (cmd.superclasses > 0) maybe_superclasses(model.codebook, cmd.superclasses, sc);
    std::optional<std::vector<std::map<std::string, double>>> modalities;
    if (members.categorical()) {
        Assignment own{std::vector<Placement>(a.rows.begin(), a.rows.begin() + static_cast<std::ptrdiff_t>(members.rows()))};
        modalities = modality_proportions(own, members, model.codebook.units());
    }
    MapView view{&model.codebook, &a, labels, supp, sc ? &*sc : nullptr, modalities ? &*modalities : nullptr,
                 cmd.title};

    const fs::path dir(cmd.out);
    fs::create_directories(dir);
    Manifest manifest = start_manifest(sub, {"input", "model", "supplementary"});
    write_text(dir / "map.txt", render_map_text(view));
    write_text(dir / "map.svg", render_map_svg(view));
    finish_manifest(manifest, dir, {"map.txt", "map.svg"});
    return 0;
}

int run(const std::vector<std::string>& args);

// ---------------------------------------------------------------- replay

int run_replay(const std::string& manifest_path, const std::string& out) {
    const Manifest m = Manifest::read(manifest_path);
    const auto command = m.get("command");
    if (!command) throw DataError("manifest has no command entry");
    if (m.get("manifest_version") != kManifestVersion) throw DataError("unsupported manifest version");
    std::vector<std::string> args{"somimpute", *command};
    for (const auto& [key, value] : m.entries()) {
        if (key.rfind("opt.", 0) == 0) {
            args.push_back("--" + key.substr(4));
            args.push_back(value);
        } else if (key.rfind("digest.", 0) == 0) {
            const std::string opt = key.substr(7);
            const auto path = m.get("opt." + opt);
            if (!path) throw DataError("manifest digest without a matching opt." + opt);
            if (file_digest(*path) != value) throw DataError("input " + *path + " changed since the manifest was written");
        }
    }
    args.push_back("--out");
    args.push_back(out);
    return run(args);
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Self-organizing maps for data with missing values", "somimpute"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    TrainCmd train_cmd;
    auto* train_sub = app.add_subcommand("train", "train a map and write model, assignment and map renderings");
    add_data_options(train_sub, train_cmd.data);
    add_map_options(train_sub, train_cmd.map, true);
    train_sub->add_option("--superclasses", train_cmd.superclasses, "group units into k super-classes (0: off)");
    train_sub->add_option("--out", train_cmd.out, "output directory")->required();

    ClassifyCmd classify_cmd;
    auto* classify_sub = app.add_subcommand("classify", "assign rows to units of a trained model");
    add_data_options(classify_sub, classify_cmd.data);
    classify_sub->add_option("--model", classify_cmd.model, "model file from `train`")->required()->check(CLI::ExistingFile);
    classify_sub->add_option("--superclasses", classify_cmd.superclasses, "also report k super-classes (0: off)");
    classify_sub->add_option("--out", classify_cmd.out, "output directory")->required();

    ImputeCmd impute_cmd;
    auto* impute_sub = app.add_subcommand("impute", "estimate missing cells from the winning code vectors");
    add_data_options(impute_sub, impute_cmd.data);
    add_map_options(impute_sub, impute_cmd.map, false);
    impute_sub->add_option("--model", impute_cmd.model, "trained model; otherwise maps are trained from --input")
        ->check(CLI::ExistingFile);
    impute_sub->add_option("--n-maps", impute_cmd.n_maps, "average the estimates of this many maps");
    impute_sub->add_option("--fallback", impute_cmd.fallback, "none | column-mean, for all-missing rows")
        ->check(CLI::IsMember({"none", "column-mean"}));
    impute_sub->add_option("--out", impute_cmd.out, "output directory")->required();

    EvaluateCmd eval_cmd;
    auto* eval_sub = app.add_subcommand("evaluate", "random-deletion experiment on a complete dataset");
    add_data_options(eval_sub, eval_cmd.data);
    add_map_options(eval_sub, eval_cmd.map, true);
    eval_sub->add_option("--d-min", eval_cmd.d_min, "smallest number of values deleted per row");
    eval_sub->add_option("--d-max", eval_cmd.d_max, "largest number of values deleted per row");
    eval_sub->add_option("--n-maps", eval_cmd.n_maps, "maps averaged per estimate");
    eval_sub->add_option("--mask-seed", eval_cmd.mask_seed, "seed of the deletion masks");
    eval_sub->add_option("--masking", eval_cmd.masking, "per-row | global (d*n cells anywhere)")
        ->check(CLI::IsMember({"per-row", "global"}));
    eval_sub->add_option("--out", eval_cmd.out, "output directory")->required();

    RenderCmd render_cmd;
    auto* render_sub = app.add_subcommand("render", "draw a trained map with its members");
    add_data_options(render_sub, render_cmd.data);
    render_sub->add_option("--model", render_cmd.model, "model file from `train`")->required()->check(CLI::ExistingFile);
    render_sub->add_option("--supplementary", render_cmd.supplementary, "rows shown as supplementary members")
        ->check(CLI::ExistingFile);
    render_sub->add_option("--superclasses", render_cmd.superclasses, "color k super-classes (0: off)");
    render_sub->add_option("--title", render_cmd.title, "heading of the SVG");
    render_sub->add_option("--out", render_cmd.out, "output directory")->required();

    std::string replay_manifest, replay_out;
    auto* replay_sub = app.add_subcommand("replay", "re-run a command from its manifest.txt");
    replay_sub->add_option("manifest", replay_manifest, "manifest written by an earlier run")
        ->required()
        ->check(CLI::ExistingFile);
    replay_sub->add_option("--out", replay_out, "output directory")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (train_sub->parsed()) return run_train(train_sub, train_cmd);
    if (classify_sub->parsed()) return run_classify(classify_sub, classify_cmd);
    if (impute_sub->parsed()) return run_impute(impute_sub, impute_cmd);
    if (eval_sub->parsed()) return run_evaluate(eval_sub, eval_cmd);
    if (render_sub->parsed()) return run_render(render_sub, render_cmd);
    return run_replay(replay_manifest, replay_out);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(std::vector<std::string>(argv, argv + argc));
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << msg << '\n';
        return 1;
    }
}
