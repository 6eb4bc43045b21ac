#include "magmap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "magmap/analytic.hpp"

namespace magmap {
namespace {

struct ExperimentInfo {
    Experiment id;
    std::string_view name;
    OperatorKind op;
    PhantomKind phantom;
    bool analytic;
};

constexpr ExperimentInfo kInfo[] = {
    {Experiment::qsm_sphere_crime, "qsm_sphere_crime", OperatorKind::QSM, PhantomKind::sphere, false},
    {Experiment::qsm_defect_crime, "qsm_defect_crime", OperatorKind::QSM, PhantomKind::sphere_with_defect, false},
    {Experiment::qsm_sphere_analytic, "qsm_sphere_analytic", OperatorKind::QSM, PhantomKind::sphere, true},
    {Experiment::qmm_sphere_crime, "qmm_sphere_crime", OperatorKind::QMM, PhantomKind::sphere, false},
    {Experiment::qmm_defect_crime, "qmm_defect_crime", OperatorKind::QMM, PhantomKind::sphere_with_defect, false},
    {Experiment::qmm_sphere_analytic, "qmm_sphere_analytic", OperatorKind::QMM, PhantomKind::sphere, true},
    {Experiment::qmm_composite, "qmm_composite", OperatorKind::QMM, PhantomKind::composite, false},
};

const ExperimentInfo& info(Experiment e) {
    return *std::find_if(std::begin(kInfo), std::end(kInfo), [e](const auto& i) { return i.id == e; });
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::string_view to_string(Experiment e) { return info(e).name; }

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& i : kInfo) {
        if (i.name == name) return i.id;
    }
    return std::nullopt;
}

std::optional<Scale> parse_scale(std::string_view name) {
    if (name == "paper") return Scale::paper;
    if (name == "desk") return Scale::desk;
    return std::nullopt;
}

ExperimentConfig ExperimentConfig::defaults(Experiment e, Scale scale) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    if (scale == Scale::paper) {
        cfg.grid_n = 128;
        cfg.spacing_m = 0.002;
    } else {
        cfg.grid_n = 64;
        cfg.spacing_m = 0.004;
    }
    const auto& i = info(e);
    cfg.solver = i.op == OperatorKind::QSM ? SolveConfig::fixed(200) : SolveConfig::tolerance(1e-4, 200);
    cfg.phantom.kind = i.phantom;
    cfg.phantom.sphere_radius_m = 0.10;
    cfg.phantom.amplitude = 1.0;
    cfg.output_dir = std::filesystem::path("out") / std::string(i.name);
    return cfg;
}

OperatorKind ExperimentConfig::operator_kind() const { return info(experiment).op; }

bool ExperimentConfig::uses_analytic_data() const { return info(experiment).analytic; }

void ExperimentConfig::validate() const {
    try {
        VoxelGrid grid(grid_n, spacing_m);
        solver.validate();
        if (phantom.kind != info(experiment).phantom) {
            throw ConfigError("phantom kind does not match experiment " + std::string(to_string(experiment)));
        }
        if (!(phantom.sphere_radius_m > 0.0)) throw ConfigError("sphere radius must be positive");
        const double half_window = 0.5 * static_cast<double>(grid_n) * spacing_m;
        const double extent =
            phantom.kind == PhantomKind::composite ? phantom.composite.large_radius : phantom.sphere_radius_m;
        if (extent >= half_window) throw ConfigError("phantom does not fit inside the grid");
        if (phantom.kind == PhantomKind::composite) composite_layout(grid, phantom.composite);
        if (phantom.kind == PhantomKind::sphere_with_defect) {
            const auto& d = phantom.defect;
            if (!(d.p_x > 0.0 && d.p_y > 0.0 && d.p_z > 0.0)) throw ConfigError("defect parameters must be positive");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    const VoxelGrid grid(cfg.grid_n, cfg.spacing_m);

    ScalarField exact = make_phantom(grid, cfg.phantom);
    const auto t_kernel = std::chrono::steady_clock::now();
    DipoleModel model(grid);
    const double kernel_seconds = seconds_since(t_kernel);

    const OperatorKind kind = cfg.operator_kind();
    ScalarField data = cfg.uses_analytic_data()
                           ? analytic_data_field(grid, kind == OperatorKind::QSM ? FieldModel::QSM : FieldModel::QMM,
                                                 cfg.phantom.sphere_radius_m, cfg.phantom.amplitude)
                           : model.apply(kind, exact);

    const double exact_norm = norm2(exact.values());
    std::vector<double> error_history{1.0};
    auto observer = [&](int, std::span<const double> x, double) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (exact[i] - x[i]) * (exact[i] - x[i]);
        error_history.push_back(std::sqrt(s) / exact_norm);
    };

    FieldOperator op(model, kind);
    auto [recon, report] = bicgstab(op, data, cfg.solver, observer);

    ExperimentResult result{cfg,
                            std::move(exact),
                            std::move(data),
                            std::move(recon),
                            0.0,
                            std::move(error_history),
                            std::move(report),
                            model.kernel().params.radius_m,
                            model.kernel().imaginary_residue,
                            kernel_seconds,
                            0.0};
    result.mean_error = mean_error(result.exact, result.recon);
    result.total_seconds = seconds_since(t_start);
    return result;
}

std::vector<SweepPoint> run_iteration_sweep(const ExperimentConfig& cfg, const std::vector<int>& caps) {
    if (caps.empty()) throw ConfigError("iteration sweep needs at least one cap");
    if (*std::min_element(caps.begin(), caps.end()) < 1) throw ConfigError("iteration caps must be >= 1");
    ExperimentConfig run_cfg = cfg;
    run_cfg.solver = SolveConfig::fixed(*std::max_element(caps.begin(), caps.end()));
    const ExperimentResult r = run_experiment(run_cfg);

    std::vector<SweepPoint> out;
    for (int cap : caps) {
        // An exact early stop leaves the last iterate in force for larger caps.
        const auto idx = static_cast<std::size_t>(std::min(cap, r.report.iterations_used));
        out.push_back({cap, r.mean_error_history[idx], r.report.residual_history[idx]});
    }
    return out;
}

} // namespace magmap
