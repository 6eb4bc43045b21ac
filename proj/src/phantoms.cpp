#include "magmap/phantoms.hpp"

#include <cmath>
#include <stdexcept>

namespace magmap {
namespace {

template <typename Fn>
ScalarField fill(const VoxelGrid& grid, Fn&& value_at) {
    ScalarField f(grid);
    const std::size_t n = grid.n();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.centre(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = grid.centre(j);
            for (std::size_t k = 0; k < n; ++k) {
                f.at(i, j, k) = value_at(x, y, grid.centre(k));
            }
        }
    }
    return f;
}

double sq(double v) { return v * v; }

} // namespace

ScalarField sphere_phantom(const VoxelGrid& grid, double radius, double value) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere_phantom: radius must be positive");
    const double a2 = radius * radius;
    return fill(grid, [&](double x, double y, double z) { return x * x + y * y + z * z < a2 ? value : 0.0; });
}

ScalarField defect_phantom(const VoxelGrid& grid, double radius, const DefectParams& p) {
    if (!(radius > 0.0)) throw std::invalid_argument("defect_phantom: radius must be positive");
    if (!(p.p_x > 0.0 && p.p_y > 0.0 && p.p_z > 0.0)) {
        throw std::invalid_argument("defect_phantom: ellipsoid parameters must be positive");
    }
    const double a2 = radius * radius;
    return fill(grid, [&](double x, double y, double z) {
        if (x * x + y * y + z * z >= a2) return 0.0;
        return 1.0 + std::exp(-sq(x / p.p_x) - sq(y / p.p_y) - sq(z / p.p_z));
    });
}

CompositeLayout composite_layout(const VoxelGrid& grid, const CompositeParams& params) {
    if (!(params.large_radius > 0.0)) throw std::invalid_argument("composite: large radius must be positive");
    if (params.small_radius < 0.0) throw std::invalid_argument("composite: negative small radius");
    for (double e : params.box_half_extent) {
        if (e < 0.0) throw std::invalid_argument("composite: negative box extent");
    }
    if (!(params.box_exponent >= 2.0)) throw std::invalid_argument("composite: box exponent must be >= 2");

    CompositeLayout layout{};
    layout.has_small = params.small_radius > 0.0;
    layout.has_box = params.box_half_extent[0] > 0.0 && params.box_half_extent[1] > 0.0 &&
                     params.box_half_extent[2] > 0.0;
    layout.gap_m = params.gap_m.value_or(grid.spacing());
    if (layout.has_small && layout.has_box && !(layout.gap_m > 0.0)) {
        throw std::invalid_argument("composite: inclusions overlap (gap must be positive)");
    }
    layout.gap_centre_x = grid.centre(grid.n() / 2);
    layout.small_centre = {layout.gap_centre_x - 0.5 * layout.gap_m - params.small_radius, 0.0, 0.0};
    layout.box_centre = {layout.gap_centre_x + 0.5 * layout.gap_m + params.box_half_extent[0], 0.0, 0.0};

    const double R = params.large_radius;
    if (layout.has_small && std::abs(layout.small_centre[0]) + params.small_radius >= R) {
        throw std::invalid_argument("composite: small sphere extends beyond the large sphere");
    }
    if (layout.has_box) {
        const auto& e = params.box_half_extent;
        const double far_x = std::abs(layout.box_centre[0]) + e[0];
        if (std::sqrt(far_x * far_x + e[1] * e[1] + e[2] * e[2]) >= R) {
            throw std::invalid_argument("composite: box extends beyond the large sphere");
        }
    }
    return layout;
}

ScalarField composite_phantom(const VoxelGrid& grid, const CompositeParams& params) {
    const CompositeLayout layout = composite_layout(grid, params);
    const double R2 = sq(params.large_radius);
    const double rs2 = sq(params.small_radius);
    const auto& e = params.box_half_extent;
    const double p = params.box_exponent;
    return fill(grid, [&](double x, double y, double z) {
        if (x * x + y * y + z * z >= R2) return 0.0;
        if (layout.has_small &&
            sq(x - layout.small_centre[0]) + sq(y - layout.small_centre[1]) + sq(z - layout.small_centre[2]) < rs2) {
            return params.small_value;
        }
        if (layout.has_box) {
            const double s = std::pow(std::abs(x - layout.box_centre[0]) / e[0], p) +
                             std::pow(std::abs(y - layout.box_centre[1]) / e[1], p) +
                             std::pow(std::abs(z - layout.box_centre[2]) / e[2], p);
            if (s < 1.0) return params.box_value;
        }
        return params.background;
    });
}

std::string_view to_string(PhantomKind kind) {
    switch (kind) {
    case PhantomKind::sphere: return "sphere";
    case PhantomKind::sphere_with_defect: return "sphere_with_defect";
    case PhantomKind::composite: return "composite";
    }
    return "?";
}

ScalarField make_phantom(const VoxelGrid& grid, const PhantomSpec& spec) {
    switch (spec.kind) {
    case PhantomKind::sphere: return sphere_phantom(grid, spec.sphere_radius_m, spec.amplitude);
    case PhantomKind::sphere_with_defect: {
        ScalarField f = defect_phantom(grid, spec.sphere_radius_m, spec.defect);
        for (double& v : f.values()) v *= spec.amplitude;
        return f;
    }
    case PhantomKind::composite: return composite_phantom(grid, spec.composite);
    }
    throw std::invalid_argument("make_phantom: unknown kind");
}

} // namespace magmap
