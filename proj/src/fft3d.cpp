#include "magmap/fft3d.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <stdexcept>

namespace magmap::detail {
namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

RealFft3d::RealFft3d(std::size_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("RealFft3d: size must be >= 2");
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * m_ * m_ * m_));
    spectrum_ = reinterpret_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * spectrum_size()));
    if (!real_ || !spectrum_) {
        fftw_free(real_);
        fftw_free(spectrum_);
        throw std::bad_alloc();
    }
    const int mi = static_cast<int>(m_);
    auto* out = reinterpret_cast<fftw_complex*>(spectrum_);
    {
        std::lock_guard lock(planner_mutex());
        plan_forward_ = fftw_plan_dft_r2c_3d(mi, mi, mi, real_, out, FFTW_ESTIMATE);
        plan_inverse_ = fftw_plan_dft_c2r_3d(mi, mi, mi, out, real_, FFTW_ESTIMATE);
    }
    if (!plan_forward_ || !plan_inverse_) {
        release();
        throw std::runtime_error("RealFft3d: FFTW planning failed");
    }
    std::fill(real().begin(), real().end(), 0.0);
}

RealFft3d::~RealFft3d() { release(); }

void RealFft3d::release() {
    {
        std::lock_guard lock(planner_mutex());
        if (plan_forward_) fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
        if (plan_inverse_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
    }
    plan_forward_ = plan_inverse_ = nullptr;
    fftw_free(real_);
    fftw_free(spectrum_);
    real_ = nullptr;
    spectrum_ = nullptr;
}

void RealFft3d::forward() { fftw_execute(static_cast<fftw_plan>(plan_forward_)); }

void RealFft3d::inverse() { fftw_execute(static_cast<fftw_plan>(plan_inverse_)); }

} // namespace magmap::detail
