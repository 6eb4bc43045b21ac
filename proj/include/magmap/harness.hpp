#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "magmap/grid.hpp"
#include "magmap/operators.hpp"
#include "magmap/phantoms.hpp"
#include "magmap/solver.hpp"

namespace magmap {

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure writing artifacts (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    qsm_sphere_crime,
    qsm_defect_crime,
    qsm_sphere_analytic,
    qmm_sphere_crime,
    qmm_defect_crime,
    qmm_sphere_analytic,
    qmm_composite,
};

inline constexpr Experiment kAllExperiments[] = {
    Experiment::qsm_sphere_crime,  Experiment::qsm_defect_crime,    Experiment::qsm_sphere_analytic,
    Experiment::qmm_sphere_crime,  Experiment::qmm_defect_crime,    Experiment::qmm_sphere_analytic,
    Experiment::qmm_composite,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

/// paper: 128^3 at 2 mm. desk: 64^3 at 4 mm (same 0.256 m window).
enum class Scale { desk, paper };
std::optional<Scale> parse_scale(std::string_view name);

struct EmitSet {
    bool slices = true;
    bool metrics = true;
    bool volumes = false;
    bool spectra = false;

    /// Comma-separated subset of {slices, metrics, volumes, spectra}; throws ConfigError.
    static EmitSet parse(std::string_view list);
};

struct ExperimentConfig {
    Experiment experiment = Experiment::qmm_sphere_crime;
    std::size_t grid_n = 128;
    double spacing_m = 0.002;
    SolveConfig solver{};
    PhantomSpec phantom{};
    std::filesystem::path output_dir = "out";
    EmitSet emit{};

    /// Settings used for the published runs of each experiment.
    static ExperimentConfig defaults(Experiment e, Scale scale = Scale::paper);

    OperatorKind operator_kind() const;
    bool uses_analytic_data() const;
    /// Throws ConfigError.
    void validate() const;
};

/**
 * Applies one `key = value` setting. Keys: grid, spacing, iters, tol, cap,
 * out, emit, radius, amplitude, defect_px, defect_py, defect_pz,
 * large_radius, background, small_radius, small_value, box_half_x,
 * box_half_y, box_half_z, box_value, box_exponent, gap.
 * Throws ConfigError for unknown keys or unparsable values.
 */
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/**
 * Reads a plain-text configuration file:
 *
 *   # comment
 *   key = value
 *
 * Blank lines and text after '#' are ignored; keys are case-sensitive; later
 * duplicates replace earlier ones. `experiment` and `scale` are accepted in
 * addition to the apply_setting keys. Throws ConfigError (IoError if unreadable).
 */
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

struct ExperimentResult {
    ExperimentConfig config;
    ScalarField exact;
    ScalarField data;
    ScalarField recon;
    double mean_error = 0.0;
    /// mean error after each iteration (index 0 = zero start).
    std::vector<double> mean_error_history;
    SolveReport report;
    double weak_green_radius_m = 0.0;
    double kernel_imaginary_residue = 0.0;
    double kernel_seconds = 0.0;
    double total_seconds = 0.0;
};

/// phantom -> data (forward operator or closed form) -> BiCGSTAB on the same operator -> mean error.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Deterministic metrics document (no timings).
nlohmann::json metrics_json(const ExperimentResult& result);

/**
 * Writes metrics.json, timings.json, residuals.csv and, per the emit set,
 * slice_{z0,x0}_{exact,recon,diff}.{csv,pgm}, volume_{exact,data,recon}.bin,
 * symbols.csv and kernel_table.bin. Throws IoError.
 */
void emit_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

struct SweepPoint {
    int iterations;
    double mean_error;
    double relative_residual;
};

/// Runs `cfg` in fixed-iteration mode up to max(caps) and samples the error at each cap.
std::vector<SweepPoint> run_iteration_sweep(const ExperimentConfig& cfg, const std::vector<int>& caps);

// Slice helpers, exposed for tests.
enum class SlicePlane { z0, x0 };
std::string_view to_string(SlicePlane p);

/// Plane through the centre voxel. z0: rows x, cols y. x0: rows y, cols z.
std::vector<std::vector<double>> extract_slice(const ScalarField& f, SlicePlane plane);
void write_slice_csv(const std::filesystem::path& path, const std::vector<std::vector<double>>& slice);
/// 8-bit binary PGM, values mapped linearly from [lo, hi] to [0, 255] and clamped.
void write_slice_pgm(const std::filesystem::path& path, const std::vector<std::vector<double>>& slice, double lo,
                     double hi);

} // namespace magmap
