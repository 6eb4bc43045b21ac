#include "magmap/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace magmap {
namespace {

double radius_sq(const Vec3& r) { return r[0] * r[0] + r[1] * r[1] + r[2] * r[2]; }

bool inside(const Vec3& r, double a) {
    const double r2 = radius_sq(r);
    if (r2 == a * a) throw std::domain_error("sphere field undefined on the surface |r| = a");
    return r2 < a * a;
}

} // namespace

double k_closed(const Vec3& r, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("k_closed: radius must be positive");
    if (inside(r, a)) return -1.0 / 3.0;
    const double r2 = radius_sq(r);
    const double rn = std::sqrt(r2);
    return (a * a * a / 3.0) * (3.0 * r[2] * r[2] - r2) / (r2 * r2 * rn);
}

PoleLimits pole_values(double a, double eps) {
    return {k_closed({0.0, 0.0, a * (1.0 + eps)}, a), k_closed({0.0, 0.0, a * (1.0 - eps)}, a)};
}

double qsm_sphere_field(const Vec3& r, double a, double chi) {
    return inside(r, a) ? 0.0 : chi * k_closed(r, a);
}

double qmm_sphere_H(const Vec3& r, double a, double M) { return M * k_closed(r, a); }

double qmm_sphere_B(const Vec3& r, double a, double M) {
    const double k = k_closed(r, a);
    return inside(r, a) ? M + M * k : M * k;
}

double boundary_jump(FieldModel model, double a, double amplitude, double eps) {
    const Vec3 out{0.0, 0.0, a * (1.0 + eps)};
    const Vec3 in{0.0, 0.0, a * (1.0 - eps)};
    if (model == FieldModel::QSM) {
        return std::abs(qsm_sphere_field(out, a, amplitude) - qsm_sphere_field(in, a, amplitude));
    }
    return std::abs(qmm_sphere_B(out, a, amplitude) - qmm_sphere_B(in, a, amplitude));
}

ScalarField analytic_data_field(const VoxelGrid& grid, FieldModel model, double a, double amplitude) {
    ScalarField f(grid);
    const std::size_t n = grid.n();
    const double a2 = a * a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Vec3 r = grid.centre(i, j, k);
                const double r2 = radius_sq(r);
                if (r2 == a2) {
                    const double scale = 1.0 + 1e-9 * grid.spacing() / a;
                    for (double& c : r) c *= scale;
                }
                f.at(i, j, k) = model == FieldModel::QSM ? qsm_sphere_field(r, a, amplitude)
                                                         : qmm_sphere_B(r, a, amplitude);
            }
        }
    }
    return f;
}

} // namespace magmap
