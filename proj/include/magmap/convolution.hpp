#pragma once

#include <span>

#include "magmap/fft3d.hpp"
#include "magmap/grid.hpp"
#include "magmap/kernel.hpp"

namespace magmap {

/**
 * Aperiodic discrete convolution of a grid field with a tabulated kernel,
 * computed as a circular convolution on the zero-padded (2n)^3 grid.
 *
 * Holds its own FFT plans and workspaces; one engine per thread.
 */
class ConvolutionEngine {
public:
    explicit ConvolutionEngine(const VoxelGrid& grid);

    const VoxelGrid& grid() const { return grid_; }

    /// restrict(IDFT(K . DFT(embed(f)))).
    ScalarField convolve(const KernelSpectrum& kernel, const ScalarField& f);

    /// Full circular result on the doubled grid (before restriction).
    ExtendedField convolve_extended(const KernelSpectrum& kernel, const ScalarField& f);

    /**
     * Runs the convolution and leaves the normalised circular result in the
     * engine's real workspace, returned as a (2n)^3 view valid until the next
     * call. `f` is a z-fastest n^3 array.
     */
    std::span<const double> convolve_in_workspace(const KernelSpectrum& kernel, std::span<const double> f);

private:
    VoxelGrid grid_;
    detail::RealFft3d fft_;
};

} // namespace magmap
