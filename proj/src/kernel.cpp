#include "magmap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "magmap/fft3d.hpp"

namespace magmap {

using std::numbers::pi;

WeakGreenParams WeakGreenParams::voxel_equivalent(const VoxelGrid& grid) {
    return {std::cbrt(3.0 / (4.0 * pi)) * grid.spacing()};
}

double green_weak(double R, double a_w) {
    if (!(a_w > 0.0)) throw std::invalid_argument("green_weak: radius must be positive");
    if (R >= a_w) return 1.0 / (4.0 * pi * R);
    return (3.0 * a_w * a_w - R * R) / (8.0 * pi * a_w * a_w * a_w);
}

ExtendedField tabulate_kernel_table(const VoxelGrid& grid, const WeakGreenParams& params) {
    if (!(params.radius_m > 0.0)) throw std::invalid_argument("tabulate_kernel: radius must be positive");
    const std::size_t n = grid.n();
    const std::size_t m = grid.extended_n();
    const double h = grid.spacing();
    const double h3 = grid.voxel_volume();

    // Signed displacement in (-n, n] for each circular index.
    std::vector<double> d2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double d = i <= n ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(m);
        d2[i] = d * d;
    }

    ExtendedField table(grid);
    auto values = table.values();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                const double R = h * std::sqrt(d2[i] + d2[j] + d2[k]);
                values[table.index(i, j, k)] = h3 * green_weak(R, params.radius_m);
            }
        }
    }
    return table;
}

KernelSpectrum tabulate_kernel(const VoxelGrid& grid, const WeakGreenParams& params) {
    const ExtendedField table = tabulate_kernel_table(grid, params);
    detail::RealFft3d fft(grid.extended_n());
    std::copy(table.values().begin(), table.values().end(), fft.real().begin());
    fft.forward();

    KernelSpectrum ks{grid, params, {fft.spectrum().begin(), fft.spectrum().end()}, 0.0};
    double max_abs = 0.0;
    double max_imag = 0.0;
    for (const auto& c : ks.spectrum) {
        max_abs = std::max(max_abs, std::abs(c));
        max_imag = std::max(max_imag, std::abs(c.imag()));
    }
    ks.imaginary_residue = max_abs > 0.0 ? max_imag / max_abs : 0.0;
    return ks;
}

KernelSpectrum tabulate_kernel(const VoxelGrid& grid) {
    return tabulate_kernel(grid, WeakGreenParams::voxel_equivalent(grid));
}

ScalarField fd_zz(const ScalarField& f) {
    const auto& g = f.grid();
    const std::size_t n = g.n();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    ScalarField out(g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* col = &f.values()[g.index(i, j, 0)];
            double* dst = &out.values()[g.index(i, j, 0)];
            for (std::size_t k = 0; k < n; ++k) {
                const double below = k > 0 ? col[k - 1] : 0.0;
                const double above = k + 1 < n ? col[k + 1] : 0.0;
                dst[k] = (above - 2.0 * col[k] + below) * inv_h2;
            }
        }
    }
    return out;
}

ExtendedField fd_zz(const ExtendedField& f) {
    const std::size_t m = f.n();
    const double h = f.base_grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    ExtendedField out(f.base_grid());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double* col = &f.values()[f.index(i, j, 0)];
            double* dst = &out.values()[out.index(i, j, 0)];
            for (std::size_t k = 0; k < m; ++k) {
                const double below = col[(k + m - 1) % m];
                const double above = col[(k + 1) % m];
                dst[k] = (above - 2.0 * col[k] + below) * inv_h2;
            }
        }
    }
    return out;
}

} // namespace magmap
