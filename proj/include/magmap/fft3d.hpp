#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace magmap::detail {

/**
 * Out-of-place real <-> half-complex 3D transform of size m^3 backed by FFTW.
 *
 * The spectrum uses FFTW's r2c layout: m x m x (m/2 + 1), last axis halved.
 * Neither direction is normalised; forward followed by inverse scales the
 * input by m^3. Plans use FFTW_ESTIMATE so repeated runs are bit-identical.
 * Instances are not shareable between threads; create one per thread.
 */
class RealFft3d {
public:
    explicit RealFft3d(std::size_t m);
    ~RealFft3d();
    RealFft3d(const RealFft3d&) = delete;
    RealFft3d& operator=(const RealFft3d&) = delete;

    std::size_t m() const { return m_; }
    std::size_t spectrum_size() const { return m_ * m_ * (m_ / 2 + 1); }

    std::span<double> real() { return {real_, m_ * m_ * m_}; }
    std::span<std::complex<double>> spectrum() { return {spectrum_, spectrum_size()}; }

    /// real() -> spectrum(); real() is preserved.
    void forward();
    /// spectrum() -> real(); spectrum() is clobbered.
    void inverse();

private:
    void release();

    std::size_t m_;
    double* real_ = nullptr;
    std::complex<double>* spectrum_ = nullptr;
    void* plan_forward_ = nullptr;
    void* plan_inverse_ = nullptr;
};

} // namespace magmap::detail
