#pragma once

#include <variant>

#include "magmap/grid.hpp"
#include "magmap/operators.hpp"

namespace magmap {

/// z-component of the background magnetic field (A/m), uniform or per voxel.
class BackgroundField {
public:
    explicit BackgroundField(double uniform) : value_(uniform) {}
    explicit BackgroundField(ScalarField field) : value_(std::move(field)) {}

    double at(std::size_t idx) const;
    /// Throws if the field is non-uniform and on another grid.
    void check_grid(const VoxelGrid& grid) const;

private:
    std::variant<double, ScalarField> value_;
};

/// Field perturbation dH produced by a magnetisation map: K(M).
ScalarField h_from_m(DipoleModel& model, const ScalarField& M);

enum class FieldApproximation {
    background_only,  ///< H ~ H_z^b
    total_field,      ///< H = H_z^b + dH(M)
};

/**
 * Effective susceptibility chi = M / H. Voxels with M = 0 give chi = 0.
 * A zero field at a voxel with M != 0 throws std::domain_error naming (i, j, k).
 * The total_field variant needs the model to compute dH.
 */
ScalarField susceptibility_from_m(const ScalarField& M, const BackgroundField& bg);
ScalarField susceptibility_from_m(DipoleModel& model, const ScalarField& M, const BackgroundField& bg,
                                  FieldApproximation approx);

} // namespace magmap
