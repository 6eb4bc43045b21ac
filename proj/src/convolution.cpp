#include "magmap/convolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace magmap {

ConvolutionEngine::ConvolutionEngine(const VoxelGrid& grid) : grid_(grid), fft_(grid.extended_n()) {}

std::span<const double> ConvolutionEngine::convolve_in_workspace(const KernelSpectrum& kernel,
                                                                 std::span<const double> f) {
    require_same_grid(kernel.base_grid, grid_, "convolve");
    if (f.size() != grid_.voxel_count()) throw std::invalid_argument("convolve: field size mismatch");

    const std::size_t n = grid_.n();
    const std::size_t m = fft_.m();
    auto work = fft_.real();

    std::fill(work.begin(), work.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* src = &f[grid_.index(i, j, 0)];
            std::copy(src, src + n, &work[(i * m + j) * m]);
        }
    }

    fft_.forward();
    auto spec = fft_.spectrum();
    const auto& ks = kernel.spectrum;
    for (std::size_t idx = 0; idx < spec.size(); ++idx) spec[idx] *= ks[idx];
    fft_.inverse();

    const double scale = 1.0 / static_cast<double>(m * m * m);
    for (double& v : work) v *= scale;
    return work;
}

ExtendedField ConvolutionEngine::convolve_extended(const KernelSpectrum& kernel, const ScalarField& f) {
    require_same_grid(f.grid(), grid_, "convolve");
    auto work = convolve_in_workspace(kernel, f.values());
    ExtendedField out(grid_);
    std::copy(work.begin(), work.end(), out.values().begin());
    return out;
}

ScalarField ConvolutionEngine::convolve(const KernelSpectrum& kernel, const ScalarField& f) {
    return restrict_to_base(convolve_extended(kernel, f));
}

} // namespace magmap
