// magmap: run the magnetostatic mapping experiments from the command line.
//
//   magmap run <experiment> [--grid N] [--spacing M] [--iters K | --tol T]
//              [--scale desk|paper] [--out DIR] [--emit slices,metrics,volumes,spectra]
//              [--config FILE]
//   magmap sweep <experiment> --caps 13,20 [same options]
//   magmap list
//
// Exit codes: 0 success (a divergent solve is still a result), 2 config error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "magmap/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
    std::string experiment;
    std::optional<std::string> config_file;
    std::optional<std::string> scale;
    std::optional<std::string> grid;
    std::optional<std::string> spacing;
    std::optional<std::string> iters;
    std::optional<std::string> tol;
    std::optional<std::string> cap;
    std::optional<std::string> out;
    std::optional<std::string> emit;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("experiment", o.experiment, "Experiment name (see `magmap list`)");
    cmd->add_option("--config", o.config_file, "Key/value configuration file; flags override it");
    cmd->add_option("--scale", o.scale, "desk (64^3, 4 mm) or paper (128^3, 2 mm)");
    cmd->add_option("--grid", o.grid, "Voxels per axis");
    cmd->add_option("--spacing", o.spacing, "Voxel edge length in metres");
    auto* iters = cmd->add_option("--iters", o.iters, "Fixed number of BiCGSTAB iterations");
    auto* tol = cmd->add_option("--tol", o.tol, "Relative residual tolerance");
    iters->excludes(tol);
    cmd->add_option("--cap", o.cap, "Iteration cap in tolerance mode");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--emit", o.emit, "Comma-separated artifacts: slices,metrics,volumes,spectra");
}

magmap::ExperimentConfig resolve(const CommonOptions& o) {
    using namespace magmap;
    std::map<std::string, std::string> file;
    if (o.config_file) file = read_config_file(*o.config_file);

    std::string name = o.experiment;
    if (name.empty() && file.contains("experiment")) name = file.at("experiment");
    if (name.empty()) throw ConfigError("no experiment given");
    const auto experiment = parse_experiment(name);
    if (!experiment) throw ConfigError("unknown experiment '" + name + "'");

    std::string scale_name = "paper";
    if (file.contains("scale")) scale_name = file.at("scale");
    if (o.scale) scale_name = *o.scale;
    const auto scale = parse_scale(scale_name);
    if (!scale) throw ConfigError("unknown scale '" + scale_name + "'");

    ExperimentConfig cfg = ExperimentConfig::defaults(*experiment, *scale);
    for (const auto& [key, value] : file) {
        if (key != "experiment" && key != "scale") apply_setting(cfg, key, value);
    }
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"grid", &o.grid}, {"spacing", &o.spacing}, {"iters", &o.iters}, {"tol", &o.tol},
        {"cap", &o.cap},   {"out", &o.out},         {"emit", &o.emit},
    };
    for (const auto& [key, value] : flags) {
        if (*value) apply_setting(cfg, key, **value);
    }
    cfg.validate();
    return cfg;
}

void print_summary(const magmap::ExperimentResult& r) {
    std::printf("%s  grid %zu^3  h = %.4g m  operator %s\n", std::string(to_string(r.config.experiment)).c_str(),
                r.config.grid_n, r.config.spacing_m, std::string(to_string(r.config.operator_kind())).c_str());
    std::printf("  iterations        %d (%s)\n", r.report.iterations_used,
                std::string(to_string(r.report.termination)).c_str());
    std::printf("  relative residual %.3e (recomputed %.3e)\n", r.report.final_relative_residual,
                r.report.true_relative_residual);
    std::printf("  mean error        %.4f %%\n", 100.0 * r.mean_error);
    std::printf("  time / iteration  %.3f s\n", r.report.seconds_per_iteration);
}

std::vector<int> parse_caps(const std::string& list) {
    std::vector<int> caps;
    std::size_t pos = 0;
    while (pos < list.size()) {
        const auto comma = list.find(',', pos);
        const std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            caps.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw magmap::ConfigError("invalid iteration cap '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return caps;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magnetostatic susceptibility / magnetisation mapping experiments"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto* run = app.add_subcommand("run", "Run one experiment end to end and write artifacts");
    add_common(run, run_opts);

    CommonOptions sweep_opts;
    std::string caps = "5,10,13,20";
    auto* sweep = app.add_subcommand("sweep", "Mean error versus fixed iteration count");
    add_common(sweep, sweep_opts);
    sweep->add_option("--caps", caps, "Comma-separated iteration counts");

    auto* list = app.add_subcommand("list", "List experiment names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (list->parsed()) {
            for (auto e : magmap::kAllExperiments) std::cout << to_string(e) << '\n';
            return 0;
        }
        if (run->parsed()) {
            const auto cfg = resolve(run_opts);
            const auto result = magmap::run_experiment(cfg);
            print_summary(result);
            magmap::emit_artifacts(result, cfg.output_dir);
            std::printf("  artifacts         %s\n", cfg.output_dir.string().c_str());
            return 0;
        }
        if (sweep->parsed()) {
            const auto cfg = resolve(sweep_opts);
            const auto points = magmap::run_iteration_sweep(cfg, parse_caps(caps));
            std::filesystem::create_directories(cfg.output_dir);
            const auto path = cfg.output_dir / "sweep.csv";
            std::ofstream os(path);
            if (!os) throw magmap::IoError("cannot write " + path.string());
            os << "iterations,mean_error,relative_residual\n";
            std::printf("%10s %14s %18s\n", "iterations", "mean error %", "rel. residual");
            for (const auto& p : points) {
                os << p.iterations << ',' << p.mean_error << ',' << p.relative_residual << '\n';
                std::printf("%10d %14.4f %18.3e\n", p.iterations, 100.0 * p.mean_error, p.relative_residual);
            }
            if (!os) throw magmap::IoError("write failed: " + path.string());
            return 0;
        }
    } catch (const magmap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const magmap::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
