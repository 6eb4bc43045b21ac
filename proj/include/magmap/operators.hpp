#pragma once

#include <array>
#include <memory>
#include <span>
#include <string_view>

#include "magmap/convolution.hpp"
#include "magmap/grid.hpp"
#include "magmap/kernel.hpp"

namespace magmap {

/// y = Op(x) over flat real vectors. apply may use internal workspaces, so
/// it is non-const and a single instance must not be shared across threads.
class LinearMap {
public:
    virtual ~LinearMap() = default;
    virtual std::size_t size() const = 0;
    virtual void apply(std::span<const double> x, std::span<double> y) = 0;
};

enum class OperatorKind { K, QSM, QMM };

std::string_view to_string(OperatorKind kind);

/**
 * Discrete magnetostatic field model on a voxel grid.
 *
 *   K(x)   = d^2/dz^2 of (G_weak * x), FD applied on the doubled grid
 *   QSM(x) = x/3 + K(x)
 *   QMM(x) = x   + K(x)
 *
 * The kernel spectrum is shared read-only; the engine is owned.
 */
class DipoleModel {
public:
    explicit DipoleModel(const VoxelGrid& grid);
    DipoleModel(const VoxelGrid& grid, const WeakGreenParams& params);
    explicit DipoleModel(std::shared_ptr<const KernelSpectrum> kernel);

    const VoxelGrid& grid() const { return grid_; }
    const KernelSpectrum& kernel() const { return *kernel_; }
    std::shared_ptr<const KernelSpectrum> shared_kernel() const { return kernel_; }

    ScalarField apply_k(const ScalarField& x);
    ScalarField apply_qsm(const ScalarField& x);
    ScalarField apply_qmm(const ScalarField& x);
    ScalarField apply(OperatorKind kind, const ScalarField& x);

    void apply(OperatorKind kind, std::span<const double> x, std::span<double> y);

private:
    VoxelGrid grid_;
    std::shared_ptr<const KernelSpectrum> kernel_;
    ConvolutionEngine engine_;
};

/// LinearMap view of one of the model's operators.
class FieldOperator final : public LinearMap {
public:
    FieldOperator(DipoleModel& model, OperatorKind kind) : model_(&model), kind_(kind) {}

    OperatorKind kind() const { return kind_; }
    std::size_t size() const override { return model_->grid().voxel_count(); }
    void apply(std::span<const double> x, std::span<double> y) override { model_->apply(kind_, x, y); }

private:
    DipoleModel* model_;
    OperatorKind kind_;
};

/// Continuum QSM symbol 1/3 - kz^2 / |k|^2. Throws for k = 0.
double qsm_symbol(const std::array<double, 3>& k);
/// Continuum QMM symbol 1 - kz^2 / |k|^2. Throws for k = 0.
double qmm_symbol(const std::array<double, 3>& k);

} // namespace magmap
