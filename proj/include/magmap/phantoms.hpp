#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "magmap/grid.hpp"

namespace magmap {

/// Homogeneous ball: `value` where the voxel centre satisfies |r| < a.
ScalarField sphere_phantom(const VoxelGrid& grid, double radius, double value);

struct DefectParams {
    double p_x = 0.03;
    double p_y = 0.006;
    double p_z = 0.02;
};

/// Ball with a smooth ellipsoidal Gaussian bump: 1 + exp(-x^2/px^2 - y^2/py^2 - z^2/pz^2) inside.
ScalarField defect_phantom(const VoxelGrid& grid, double radius, const DefectParams& p);

/**
 * Large ball containing a small ball and a rounded box, side by side along x.
 *
 * The box is a superellipsoid |x/ax|^p + |y/ay|^p + |z/az|^p <= 1. The two
 * inclusions face each other across a gap of `gap_m` (default: one voxel)
 * whose centre is the voxel centre nearest the origin on the +x side, so
 * exactly one column of background voxels separates them.
 */
struct CompositeParams {
    double large_radius = 0.10;
    double background = 1.0;
    double small_radius = 0.024;
    double small_value = 2.0;
    std::array<double, 3> box_half_extent{0.030, 0.030, 0.020};
    double box_value = 2.0;
    double box_exponent = 4.0;
    std::optional<double> gap_m;
};

struct CompositeLayout {
    double gap_centre_x;
    double gap_m;
    std::array<double, 3> small_centre;
    std::array<double, 3> box_centre;
    bool has_small;
    bool has_box;
};

/// Throws std::invalid_argument for overlapping inclusions or inclusions leaving the large ball.
CompositeLayout composite_layout(const VoxelGrid& grid, const CompositeParams& params);
ScalarField composite_phantom(const VoxelGrid& grid, const CompositeParams& params);

enum class PhantomKind { sphere, sphere_with_defect, composite };

std::string_view to_string(PhantomKind kind);

struct PhantomSpec {
    PhantomKind kind = PhantomKind::sphere;
    double sphere_radius_m = 0.10;
    double amplitude = 1.0;
    DefectParams defect{};
    CompositeParams composite{};
};

/// Builds the phantom; sphere and defect scenes are scaled by `amplitude`.
ScalarField make_phantom(const VoxelGrid& grid, const PhantomSpec& spec);

} // namespace magmap
