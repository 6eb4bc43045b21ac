#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "magmap/field_io.hpp"
#include "magmap/harness.hpp"
#include "magmap/kernel.hpp"

namespace magmap {
namespace {

using Slice = std::vector<std::vector<double>>;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << std::setprecision(17);
    return os;
}

void check(const std::ofstream& os, const std::filesystem::path& path) {
    if (!os) throw IoError("write failed: " + path.string());
}

std::pair<double, double> value_range(const Slice& a, const Slice& b) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Slice* s : {&a, &b}) {
        for (const auto& row : *s) {
            for (double v : row) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!(hi > lo)) hi = lo + 1.0;
    return {lo, hi};
}

double max_abs(const Slice& s) {
    double m = 0.0;
    for (const auto& row : s) {
        for (double v : row) m = std::max(m, std::abs(v));
    }
    return m > 0.0 ? m : 1.0;
}

ScalarField difference(const ScalarField& a, const ScalarField& b) {
    ScalarField d(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

nlohmann::json slice_ranges(const ExperimentResult& r) {
    nlohmann::json out;
    const ScalarField diff = difference(r.exact, r.recon);
    for (SlicePlane plane : {SlicePlane::z0, SlicePlane::x0}) {
        const Slice e = extract_slice(r.exact, plane);
        const Slice c = extract_slice(r.recon, plane);
        const auto [lo, hi] = value_range(e, c);
        const double m = max_abs(extract_slice(diff, plane));
        out[std::string(to_string(plane))] = {{"exact", {lo, hi}}, {"recon", {lo, hi}}, {"diff", {-m, m}}};
    }
    return out;
}

} // namespace

std::string_view to_string(SlicePlane p) { return p == SlicePlane::z0 ? "z0" : "x0"; }

Slice extract_slice(const ScalarField& f, SlicePlane plane) {
    const std::size_t n = f.grid().n();
    const std::size_t mid = n / 2;
    Slice s(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            s[r][c] = plane == SlicePlane::z0 ? f.at(r, c, mid) : f.at(mid, r, c);
        }
    }
    return s;
}

void write_slice_csv(const std::filesystem::path& path, const Slice& slice) {
    auto os = open_out(path);
    for (const auto& row : slice) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << row[c];
        }
        os << '\n';
    }
    check(os, path);
}

void write_slice_pgm(const std::filesystem::path& path, const Slice& slice, double lo, double hi) {
    auto os = open_out(path, std::ios::out | std::ios::binary);
    const std::size_t rows = slice.size();
    const std::size_t cols = rows ? slice.front().size() : 0;
    os << "P5\n" << cols << ' ' << rows << "\n255\n";
    const double span = hi > lo ? hi - lo : 1.0;
    for (const auto& row : slice) {
        for (double v : row) {
            const double t = std::clamp((v - lo) / span, 0.0, 1.0);
            os.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
        }
    }
    check(os, path);
}

nlohmann::json metrics_json(const ExperimentResult& r) {
    const auto& cfg = r.config;
    nlohmann::json phantom = {{"kind", std::string(to_string(cfg.phantom.kind))},
                              {"sphere_radius_m", cfg.phantom.sphere_radius_m},
                              {"amplitude", cfg.phantom.amplitude}};
    if (cfg.phantom.kind == PhantomKind::sphere_with_defect) {
        phantom["defect"] = {cfg.phantom.defect.p_x, cfg.phantom.defect.p_y, cfg.phantom.defect.p_z};
    }
    if (cfg.phantom.kind == PhantomKind::composite) {
        const auto& c = cfg.phantom.composite;
        const auto layout = composite_layout(r.exact.grid(), c);
        phantom["composite"] = {{"large_radius_m", c.large_radius},
                                {"background", c.background},
                                {"small_radius_m", c.small_radius},
                                {"small_value", c.small_value},
                                {"small_centre_m", layout.small_centre},
                                {"box_half_extent_m", c.box_half_extent},
                                {"box_value", c.box_value},
                                {"box_exponent", c.box_exponent},
                                {"box_centre_m", layout.box_centre},
                                {"gap_m", layout.gap_m}};
    }
    return {
        {"experiment", std::string(to_string(cfg.experiment))},
        {"operator", std::string(to_string(cfg.operator_kind()))},
        {"data_source", cfg.uses_analytic_data() ? "analytic" : "inverse_crime"},
        {"grid_n", cfg.grid_n},
        {"spacing_m", cfg.spacing_m},
        {"weak_green_radius_m", r.weak_green_radius_m},
        {"kernel_imaginary_residue", r.kernel_imaginary_residue},
        {"phantom", phantom},
        {"solver",
         {{"mode", std::string(to_string(cfg.solver.mode))},
          {"max_iterations", cfg.solver.max_iterations},
          {"rel_tolerance", cfg.solver.rel_tolerance}}},
        {"mean_error", r.mean_error},
        {"mean_error_history", r.mean_error_history},
        {"iterations", r.report.iterations_used},
        {"solve_report", to_json(r.report, false)},
        {"slice_ranges", slice_ranges(r)},
    };
}

void emit_artifacts(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const auto& emit = r.config.emit;

    if (emit.metrics) {
        {
            auto os = open_out(dir / "metrics.json");
            os << metrics_json(r).dump(2) << '\n';
            check(os, dir / "metrics.json");
        }
        {
            const nlohmann::json timings = {{"seconds_per_iteration", r.report.seconds_per_iteration},
                                            {"kernel_seconds", r.kernel_seconds},
                                            {"total_seconds", r.total_seconds}};
            auto os = open_out(dir / "timings.json");
            os << timings.dump(2) << '\n';
            check(os, dir / "timings.json");
        }
        auto os = open_out(dir / "residuals.csv");
        os << "iteration,relative_residual,mean_error\n";
        const auto& res = r.report.residual_history;
        for (std::size_t i = 0; i < res.size(); ++i) {
            os << i << ',' << res[i] << ',';
            if (i < r.mean_error_history.size()) os << r.mean_error_history[i];
            os << '\n';
        }
        check(os, dir / "residuals.csv");
    }

    if (emit.slices) {
        const ScalarField diff = difference(r.exact, r.recon);
        for (SlicePlane plane : {SlicePlane::z0, SlicePlane::x0}) {
            const Slice e = extract_slice(r.exact, plane);
            const Slice c = extract_slice(r.recon, plane);
            const Slice d = extract_slice(diff, plane);
            const auto [lo, hi] = value_range(e, c);
            const double m = max_abs(d);
            const std::string p(to_string(plane));
            write_slice_csv(dir / ("slice_" + p + "_exact.csv"), e);
            write_slice_csv(dir / ("slice_" + p + "_recon.csv"), c);
            write_slice_csv(dir / ("slice_" + p + "_diff.csv"), d);
            write_slice_pgm(dir / ("slice_" + p + "_exact.pgm"), e, lo, hi);
            write_slice_pgm(dir / ("slice_" + p + "_recon.pgm"), c, lo, hi);
            write_slice_pgm(dir / ("slice_" + p + "_diff.pgm"), d, -m, m);
        }
    }

    try {
        if (emit.volumes) {
            write_field(dir / "volume_exact.bin", r.exact);
            write_field(dir / "volume_data.bin", r.data);
            write_field(dir / "volume_recon.bin", r.recon);
        }
        if (emit.spectra) {
            write_field(dir / "kernel_table.bin",
                        tabulate_kernel_table(r.exact.grid(), {r.weak_green_radius_m}));
        }
    } catch (const std::runtime_error& ex) {
        throw IoError(ex.what());
    }

    if (emit.spectra) {
        auto os = open_out(dir / "symbols.csv");
        os << "polar_angle_deg,qsm_symbol,qmm_symbol\n";
        for (int deg = 0; deg <= 90; ++deg) {
            const double t = deg * std::acos(-1.0) / 180.0;
            const std::array<double, 3> k{std::sin(t), 0.0, std::cos(t)};
            os << deg << ',' << qsm_symbol(k) << ',' << qmm_symbol(k) << '\n';
        }
        check(os, dir / "symbols.csv");
    }
}

} // namespace magmap
