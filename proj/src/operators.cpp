#include "magmap/operators.hpp"

#include <stdexcept>

namespace magmap {
namespace {

double identity_weight(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::K: return 0.0;
    case OperatorKind::QSM: return 1.0 / 3.0;
    case OperatorKind::QMM: return 1.0;
    }
    return 0.0;
}

double kz2_over_k2(const std::array<double, 3>& k) {
    const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (kk == 0.0) throw std::invalid_argument("spectral symbol undefined at k = 0");
    return k[2] * k[2] / kk;
}

} // namespace

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::K: return "K";
    case OperatorKind::QSM: return "QSM";
    case OperatorKind::QMM: return "QMM";
    }
    return "?";
}

DipoleModel::DipoleModel(const VoxelGrid& grid)
    : DipoleModel(std::make_shared<const KernelSpectrum>(tabulate_kernel(grid))) {}

DipoleModel::DipoleModel(const VoxelGrid& grid, const WeakGreenParams& params)
    : DipoleModel(std::make_shared<const KernelSpectrum>(tabulate_kernel(grid, params))) {}

DipoleModel::DipoleModel(std::shared_ptr<const KernelSpectrum> kernel)
    : grid_(kernel->base_grid), kernel_(std::move(kernel)), engine_(grid_) {}

void DipoleModel::apply(OperatorKind kind, std::span<const double> x, std::span<double> y) {
    const std::size_t count = grid_.voxel_count();
    if (x.size() != count || y.size() != count) {
        throw std::invalid_argument("DipoleModel::apply: vector size does not match grid");
    }
    const auto conv = engine_.convolve_in_workspace(*kernel_, x);

    // d^2/dz^2 on the doubled grid: the neighbours at z = -1 and z = n are
    // genuine convolution values there, not padding.
    const std::size_t n = grid_.n();
    const std::size_t m = grid_.extended_n();
    const double inv_h2 = 1.0 / (grid_.spacing() * grid_.spacing());
    const double diag = identity_weight(kind);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double* col = &conv[(i * m + j) * m];
            const std::size_t base = grid_.index(i, j, 0);
            for (std::size_t k = 0; k < n; ++k) {
                const double below = col[k == 0 ? m - 1 : k - 1];
                const double dzz = (col[k + 1] - 2.0 * col[k] + below) * inv_h2;
                y[base + k] = diag * x[base + k] + dzz;
            }
        }
    }
}

ScalarField DipoleModel::apply(OperatorKind kind, const ScalarField& x) {
    require_same_grid(x.grid(), grid_, "DipoleModel::apply");
    ScalarField y(grid_);
    apply(kind, x.values(), y.values());
    return y;
}

ScalarField DipoleModel::apply_k(const ScalarField& x) { return apply(OperatorKind::K, x); }
ScalarField DipoleModel::apply_qsm(const ScalarField& x) { return apply(OperatorKind::QSM, x); }
ScalarField DipoleModel::apply_qmm(const ScalarField& x) { return apply(OperatorKind::QMM, x); }

double qsm_symbol(const std::array<double, 3>& k) { return 1.0 / 3.0 - kz2_over_k2(k); }

double qmm_symbol(const std::array<double, 3>& k) { return 1.0 - kz2_over_k2(k); }

} // namespace magmap
