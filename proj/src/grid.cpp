#include "magmap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace magmap {

VoxelGrid::VoxelGrid(std::size_t n, double spacing_m) : n_(n), spacing_(spacing_m) {
    if (n < 2) {
        throw std::invalid_argument("VoxelGrid: need at least 2 voxels per axis, got " + std::to_string(n));
    }
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
        throw std::invalid_argument("VoxelGrid: spacing must be positive and finite");
    }
}

double VoxelGrid::centre(std::size_t i) const {
    return (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(n_)) * spacing_;
}

std::array<double, 3> VoxelGrid::centre(std::size_t i, std::size_t j, std::size_t k) const {
    return {centre(i), centre(j), centre(k)};
}

VoxelGrid make_grid(std::size_t n, double spacing_m) { return VoxelGrid(n, spacing_m); }

ScalarField::ScalarField(const VoxelGrid& grid) : grid_(grid), values_(grid.voxel_count(), 0.0) {}

ScalarField::ScalarField(const VoxelGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.voxel_count()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ExtendedField::ExtendedField(const VoxelGrid& base_grid)
    : base_(base_grid), m_(base_grid.extended_n()), values_(m_ * m_ * m_, 0.0) {}

ExtendedField embed_extended(const ScalarField& f) {
    const auto& g = f.grid();
    const std::size_t n = g.n();
    ExtendedField e(g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* src = &f.values()[g.index(i, j, 0)];
            std::copy(src, src + n, &e.values()[e.index(i, j, 0)]);
        }
    }
    return e;
}

ScalarField restrict_to_base(const ExtendedField& e) {
    const auto& g = e.base_grid();
    const std::size_t n = g.n();
    ScalarField f(g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* src = &e.values()[e.index(i, j, 0)];
            std::copy(src, src + n, &f.values()[g.index(i, j, 0)]);
        }
    }
    return f;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double mean_error(const ScalarField& exact, const ScalarField& recon) {
    require_same_grid(exact.grid(), recon.grid(), "mean_error");
    const double ref = norm2(exact.values());
    if (ref == 0.0) {
        throw std::invalid_argument("mean_error: exact field has zero norm");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const double d = exact[i] - recon[i];
        s += d * d;
    }
    return std::sqrt(s) / ref;
}

void require_same_grid(const VoxelGrid& a, const VoxelGrid& b, const char* what) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
    }
}

} // namespace magmap
