#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magmap/grid.hpp"
#include "magmap/operators.hpp"

namespace magmap {

enum class StopMode { fixed_iterations, tolerance };

struct SolveConfig {
    StopMode mode = StopMode::tolerance;
    int max_iterations = 200;
    /// Target for ||Op(x) - b|| / ||b||; ignored in fixed_iterations mode.
    double rel_tolerance = 1e-4;
    bool record_history = true;

    static SolveConfig fixed(int iterations);
    static SolveConfig tolerance(double rel_tol, int cap = 200);

    /// Throws std::invalid_argument on max_iterations < 1 or rel_tolerance <= 0.
    void validate() const;
};

enum class Termination { converged, max_iter, breakdown };

std::string_view to_string(Termination t);
std::string_view to_string(StopMode m);

struct SolveReport {
    int iterations_used = 0;
    /// Recursively updated relative residual at exit (last history entry).
    double final_relative_residual = 0.0;
    /// ||Op(x) - b|| / ||b|| recomputed from scratch at exit.
    double true_relative_residual = 0.0;
    /// Entry 0 is the initial residual (1 for the zero start), then one per iteration.
    std::vector<double> residual_history;
    Termination termination = Termination::max_iter;
    double seconds_per_iteration = 0.0;
};

/// Timings are left out unless requested so that the rest serialises deterministically.
nlohmann::json to_json(const SolveReport& report, bool include_timing = true);

/// Called after every completed iteration with the current iterate.
using IterationObserver = std::function<void(int iteration, std::span<const double> x, double rel_residual)>;

/// |rho| below this times ||b||^2 counts as breakdown.
inline constexpr double kBreakdownThreshold = 1e-30;

/**
 * Unpreconditioned BiCGSTAB from a zero initial guess.
 *
 * In fixed_iterations mode exactly max_iterations iterations run, unless the
 * residual vanishes exactly or the method breaks down. Divergence is reported,
 * never thrown. On breakdown `x` holds the last complete iterate.
 */
SolveReport bicgstab(LinearMap& op, std::span<const double> b, std::span<double> x, const SolveConfig& cfg,
                     const IterationObserver& observer = {});

std::pair<ScalarField, SolveReport> bicgstab(LinearMap& op, const ScalarField& b, const SolveConfig& cfg,
                                             const IterationObserver& observer = {});

} // namespace magmap
