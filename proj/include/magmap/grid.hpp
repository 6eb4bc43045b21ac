#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace magmap {

/**
 * Cubic voxel lattice with n voxels per axis and edge length `spacing` (m).
 *
 * Voxel centres sit at ((i + 1/2) - n/2) * spacing for i in [0, n), so the
 * lattice is symmetric about the origin. Linear storage order is x-major,
 * z fastest: index(i, j, k) = (i * n + j) * n + k.
 */
class VoxelGrid {
public:
    VoxelGrid(std::size_t n, double spacing_m);

    std::size_t n() const { return n_; }
    double spacing() const { return spacing_; }
    std::size_t voxel_count() const { return n_ * n_ * n_; }
    double voxel_volume() const { return spacing_ * spacing_ * spacing_; }

    /// Coordinate of voxel centre `i` along any axis.
    double centre(std::size_t i) const;
    std::array<double, 3> centre(std::size_t i, std::size_t j, std::size_t k) const;

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * n_ + j) * n_ + k;
    }

    /// Per-axis size of the doubled (zero-padded) grid.
    std::size_t extended_n() const { return 2 * n_; }

    bool operator==(const VoxelGrid&) const = default;

private:
    std::size_t n_;
    double spacing_;
};

/// Throws std::invalid_argument for n < 2 or non-positive spacing.
VoxelGrid make_grid(std::size_t n, double spacing_m);

/// One real value per voxel (chi, M, dB or dH samples).
class ScalarField {
public:
    explicit ScalarField(const VoxelGrid& grid);
    ScalarField(const VoxelGrid& grid, std::vector<double> values);

    const VoxelGrid& grid() const { return grid_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t idx) { return values_[idx]; }
    double operator[](std::size_t idx) const { return values_[idx]; }
    double& at(std::size_t i, std::size_t j, std::size_t k) { return values_[grid_.index(i, j, k)]; }
    double at(std::size_t i, std::size_t j, std::size_t k) const { return values_[grid_.index(i, j, k)]; }

    bool all_finite() const;

private:
    VoxelGrid grid_;
    std::vector<double> values_;
};

/// Field on the (2n)^3 doubled grid, circularly indexed.
class ExtendedField {
public:
    explicit ExtendedField(const VoxelGrid& base_grid);

    const VoxelGrid& base_grid() const { return base_; }
    std::size_t n() const { return m_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * m_ + j) * m_ + k;
    }
    double& at(std::size_t i, std::size_t j, std::size_t k) { return values_[index(i, j, k)]; }
    double at(std::size_t i, std::size_t j, std::size_t k) const { return values_[index(i, j, k)]; }

private:
    VoxelGrid base_;
    std::size_t m_;
    std::vector<double> values_;
};

ExtendedField embed_extended(const ScalarField& f);

/// The [0, n)^3 block of an extended field.
ScalarField restrict_to_base(const ExtendedField& e);

double norm2(std::span<const double> v);

/// ||exact - recon|| / ||exact|| over the full grid.
double mean_error(const ScalarField& exact, const ScalarField& recon);

void require_same_grid(const VoxelGrid& a, const VoxelGrid& b, const char* what);

} // namespace magmap
