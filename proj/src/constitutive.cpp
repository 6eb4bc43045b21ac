#include "magmap/constitutive.hpp"

#include <stdexcept>
#include <string>

namespace magmap {
namespace {

ScalarField pointwise_ratio(const ScalarField& M, const BackgroundField& bg, const ScalarField* dH) {
    bg.check_grid(M.grid());
    const auto& g = M.grid();
    const std::size_t n = g.n();
    ScalarField chi(g);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t idx = g.index(i, j, k);
                const double m = M[idx];
                if (m == 0.0) continue;
                const double h = bg.at(idx) + (dH ? (*dH)[idx] : 0.0);
                if (h == 0.0) {
                    throw std::domain_error("susceptibility_from_m: zero magnetic field at voxel (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ", " +
                                            std::to_string(k) + ") where M != 0");
                }
                chi[idx] = m / h;
            }
        }
    }
    return chi;
}

} // namespace

double BackgroundField::at(std::size_t idx) const {
    if (const auto* u = std::get_if<double>(&value_)) return *u;
    return std::get<ScalarField>(value_)[idx];
}

void BackgroundField::check_grid(const VoxelGrid& grid) const {
    if (const auto* f = std::get_if<ScalarField>(&value_)) require_same_grid(f->grid(), grid, "BackgroundField");
}

ScalarField h_from_m(DipoleModel& model, const ScalarField& M) { return model.apply_k(M); }

ScalarField susceptibility_from_m(const ScalarField& M, const BackgroundField& bg) {
    return pointwise_ratio(M, bg, nullptr);
}

ScalarField susceptibility_from_m(DipoleModel& model, const ScalarField& M, const BackgroundField& bg,
                                  FieldApproximation approx) {
    if (approx == FieldApproximation::background_only) return pointwise_ratio(M, bg, nullptr);
    const ScalarField dH = h_from_m(model, M);
    return pointwise_ratio(M, bg, &dH);
}

} // namespace magmap
