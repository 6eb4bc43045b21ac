#pragma once

#include <complex>
#include <vector>

#include "magmap/grid.hpp"

namespace magmap {

/// Radius of the ball over which the Green function is averaged.
struct WeakGreenParams {
    double radius_m;

    /// Radius of the sphere with the same volume as one voxel: (3/(4 pi))^(1/3) h.
    static WeakGreenParams voxel_equivalent(const VoxelGrid& grid);
};

/**
 * Ball average of G(r) = 1/(4 pi |r|) over a ball of radius `a_w` centred at
 * distance `R` from the source point.
 *
 * Outside the ball this is the point value 1/(4 pi R); inside it is the
 * uniform-ball potential (3 a_w^2 - R^2) / (8 pi a_w^3), which is finite at R = 0.
 */
double green_weak(double R, double a_w);

/**
 * Kernel sampled on the doubled grid: entry (i, j, k) holds
 * h^3 * green_weak(|d| h, a_w) with each displacement component d taken in
 * (-n, n] by circular wrap-around.
 */
ExtendedField tabulate_kernel_table(const VoxelGrid& grid, const WeakGreenParams& params);

/**
 * DFT of the tabulated kernel on the (2n)^3 grid.
 *
 * Stored in half-complex (r2c) layout: (2n) x (2n) x (n + 1) coefficients,
 * unnormalised. The kernel is even, so the spectrum is real up to rounding.
 */
struct KernelSpectrum {
    VoxelGrid base_grid;
    WeakGreenParams params;
    std::vector<std::complex<double>> spectrum;
    /// max |Im| / max |coefficient| measured at tabulation time.
    double imaginary_residue = 0.0;
};

KernelSpectrum tabulate_kernel(const VoxelGrid& grid, const WeakGreenParams& params);
KernelSpectrum tabulate_kernel(const VoxelGrid& grid);

/// Central second difference along z; out-of-grid neighbours are zero.
ScalarField fd_zz(const ScalarField& f);
/// Central second difference along z with circular neighbours.
ExtendedField fd_zz(const ExtendedField& f);

} // namespace magmap
