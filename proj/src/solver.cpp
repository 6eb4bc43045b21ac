#include "magmap/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace magmap {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

SolveConfig SolveConfig::fixed(int iterations) {
    SolveConfig cfg;
    cfg.mode = StopMode::fixed_iterations;
    cfg.max_iterations = iterations;
    return cfg;
}

SolveConfig SolveConfig::tolerance(double rel_tol, int cap) {
    SolveConfig cfg;
    cfg.mode = StopMode::tolerance;
    cfg.rel_tolerance = rel_tol;
    cfg.max_iterations = cap;
    return cfg;
}

void SolveConfig::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("SolveConfig: max_iterations must be >= 1");
    if (!(rel_tolerance > 0.0)) throw std::invalid_argument("SolveConfig: rel_tolerance must be > 0");
}

std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::breakdown: return "breakdown";
    }
    return "?";
}

std::string_view to_string(StopMode m) {
    return m == StopMode::fixed_iterations ? "fixed_iterations" : "tolerance";
}

nlohmann::json to_json(const SolveReport& report, bool include_timing) {
    nlohmann::json j;
    j["iterations_used"] = report.iterations_used;
    j["final_relative_residual"] = report.final_relative_residual;
    j["true_relative_residual"] = report.true_relative_residual;
    j["residual_history"] = report.residual_history;
    j["termination"] = std::string(to_string(report.termination));
    if (include_timing) j["seconds_per_iteration"] = report.seconds_per_iteration;
    return j;
}

SolveReport bicgstab(LinearMap& op, std::span<const double> b, std::span<double> x, const SolveConfig& cfg,
                     const IterationObserver& observer) {
    cfg.validate();
    const std::size_t n = op.size();
    if (b.size() != n || x.size() != n) throw std::invalid_argument("bicgstab: vector size mismatch");

    SolveReport report;
    std::fill(x.begin(), x.end(), 0.0);

    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        report.termination = Termination::converged;
        if (cfg.record_history) report.residual_history.push_back(0.0);
        return report;
    }

    const bool use_tol = cfg.mode == StopMode::tolerance;
    const double tol = use_tol ? cfg.rel_tolerance : 0.0;

    std::vector<double> r(b.begin(), b.end());
    const std::vector<double> r_hat = r;
    std::vector<double> p(n, 0.0), v(n, 0.0), s(n), t(n);
    double rho_prev = 1.0, alpha = 1.0, omega = 1.0;
    double rel_res = 1.0;
    if (cfg.record_history) report.residual_history.push_back(rel_res);

    const auto start = std::chrono::steady_clock::now();
    report.termination = Termination::max_iter;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const double rho = dot(r_hat, r);
        if (std::abs(rho) < kBreakdownThreshold * b_norm * b_norm) {
            report.termination = Termination::breakdown;
            break;
        }
        const double beta = (rho / rho_prev) * (alpha / omega);
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);

        op.apply(p, v);
        const double rv = dot(r_hat, v);
        if (rv == 0.0) {
            report.termination = Termination::breakdown;
            break;
        }
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

        const double s_rel = std::sqrt(dot(s, s)) / b_norm;
        if (s_rel == 0.0 || (use_tol && s_rel <= tol)) {
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
            r = s;
            rel_res = s_rel;
            report.iterations_used = it;
            if (cfg.record_history) report.residual_history.push_back(rel_res);
            if (observer) observer(it, x, rel_res);
            report.termination = Termination::converged;
            break;
        }

        op.apply(s, t);
        const double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i] + omega * s[i];
        for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
        rel_res = std::sqrt(dot(r, r)) / b_norm;
        report.iterations_used = it;
        if (cfg.record_history) report.residual_history.push_back(rel_res);
        if (observer) observer(it, x, rel_res);

        if (rel_res == 0.0 || (use_tol && rel_res <= tol)) {
            report.termination = Termination::converged;
            break;
        }
        if (omega == 0.0) {
            report.termination = Termination::breakdown;
            break;
        }
        rho_prev = rho;
    }

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.seconds_per_iteration = report.iterations_used > 0 ? elapsed / report.iterations_used : 0.0;
    report.final_relative_residual = rel_res;

    // Fresh residual to expose drift of the recursive update.
    op.apply(x, t);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += (t[i] - b[i]) * (t[i] - b[i]);
    report.true_relative_residual = std::sqrt(diff) / b_norm;
    return report;
}

std::pair<ScalarField, SolveReport> bicgstab(LinearMap& op, const ScalarField& b, const SolveConfig& cfg,
                                             const IterationObserver& observer) {
    ScalarField x(b.grid());
    SolveReport report = bicgstab(op, b.values(), x.values(), cfg, observer);
    return {std::move(x), std::move(report)};
}

} // namespace magmap
