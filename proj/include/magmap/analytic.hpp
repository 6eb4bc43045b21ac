#pragma once

#include <array>

#include "magmap/grid.hpp"

namespace magmap {

using Vec3 = std::array<double, 3>;

enum class FieldModel { QSM, QMM };

struct SphereModel {
    double radius_m;
    double amplitude;  ///< chi for QSM, M for QMM
};

/**
 * K(r) = d^2/dz^2 of the integral of 1/(4 pi |r - r'|) over a ball of radius a:
 *   (a^3/3) (3 z^2 - |r|^2) / |r|^5  outside,  -1/3 inside.
 * Undefined on the surface (throws std::domain_error); use the limits below.
 */
double k_closed(const Vec3& r, double a);

struct PoleLimits {
    double outside;
    double inside;
};

/// One-sided limits of K at the poles: (2/3, -1/3).
constexpr PoleLimits pole_limits() { return {2.0 / 3.0, -1.0 / 3.0}; }

/// K evaluated at (0, 0, a(1 + eps)) and (0, 0, a(1 - eps)).
PoleLimits pole_values(double a, double eps);

/// QSM flux-density perturbation: chi K outside, 0 inside.
double qsm_sphere_field(const Vec3& r, double a, double chi);
/// QMM field perturbation: M K on both sides.
double qmm_sphere_H(const Vec3& r, double a, double M);
/// QMM flux-density perturbation: M K outside, M + M K inside.
double qmm_sphere_B(const Vec3& r, double a, double M);

/// |dB(0,0,a(1+eps)) - dB(0,0,a(1-eps))| for the chosen model.
double boundary_jump(FieldModel model, double a, double amplitude, double eps);

/**
 * Closed-form flux-density data sampled at every voxel centre. A centre that
 * falls exactly on the surface is pushed outward by 1e-9 h.
 */
ScalarField analytic_data_field(const VoxelGrid& grid, FieldModel model, double a, double amplitude);

} // namespace magmap
