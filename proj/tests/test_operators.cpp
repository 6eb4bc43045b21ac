#include <gtest/gtest.h>

#include <cmath>

#include "magmap/analytic.hpp"
#include "magmap/operators.hpp"
#include "magmap/phantoms.hpp"
#include "oracles.hpp"

using namespace magmap;

namespace {

struct DeskSphere : ::testing::Test {
    static void SetUpTestSuite() {
        grid = std::make_unique<VoxelGrid>(64, 0.004);
        model = std::make_unique<DipoleModel>(*grid);
    }
    static void TearDownTestSuite() {
        model.reset();
        grid.reset();
    }
    static std::size_t centre_index() { return grid->index(32, 32, 32); }

    static inline std::unique_ptr<VoxelGrid> grid;
    static inline std::unique_ptr<DipoleModel> model;
};

double rel_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0, r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] - b[i]) * (a[i] - b[i]);
        r += b[i] * b[i];
    }
    return std::sqrt(d / r);
}

} // namespace

TEST(Operators, KMatchesDirectSumPlusFiniteDifference) {
    const auto g = make_grid(8, 0.004);
    DipoleModel model(g);
    const auto f = oracle::random_field(g, 42);
    const auto fast = model.apply_k(f);
    const auto slow = oracle::direct_k_operator(f, model.kernel().params.radius_m);
    EXPECT_LT(rel_diff(fast.values(), slow.values()), 1e-10);
}

TEST(Operators, ZeroMapsToZero) {
    const auto g = make_grid(6, 0.01);
    DipoleModel model(g);
    const ScalarField z(g);
    for (auto kind : {OperatorKind::K, OperatorKind::QSM, OperatorKind::QMM}) {
        const auto out = model.apply(kind, z);
        for (double v : out.values()) EXPECT_EQ(v, 0.0);
    }
}

TEST(Operators, ShiftIdentityOnRandomFields) {
    const auto g = make_grid(16, 0.004);
    DipoleModel model(g);
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const auto x = oracle::random_field(g, seed);
        const auto qmm = model.apply_qmm(x);
        const auto qsm = model.apply_qsm(x);
        double r = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) r += std::pow(qmm[i] - qsm[i] - 2.0 / 3.0 * x[i], 2);
        EXPECT_LE(std::sqrt(r), 1e-12 * norm2(x.values()));
    }
}

TEST(Operators, Linear) {
    const auto g = make_grid(8, 0.004);
    DipoleModel model(g);
    const auto f = oracle::random_field(g, 1);
    const auto h = oracle::random_field(g, 2);
    ScalarField mix(g);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.0 * f[i] - 0.5 * h[i];
    for (auto kind : {OperatorKind::K, OperatorKind::QSM, OperatorKind::QMM}) {
        const auto a = model.apply(kind, f);
        const auto b = model.apply(kind, h);
        const auto m = model.apply(kind, mix);
        ScalarField combo(g);
        for (std::size_t i = 0; i < mix.size(); ++i) combo[i] = 2.0 * a[i] - 0.5 * b[i];
        EXPECT_LT(rel_diff(m.values(), combo.values()), 1e-12);
    }
}

TEST(Operators, RejectsGridMismatch) {
    DipoleModel model(make_grid(4, 0.01));
    EXPECT_THROW(model.apply_qmm(ScalarField(make_grid(5, 0.01))), std::invalid_argument);
    std::vector<double> x(10), y(10);
    EXPECT_THROW(model.apply(OperatorKind::QSM, x, y), std::invalid_argument);
}

TEST(Operators, FieldOperatorIsLinearMapView) {
    const auto g = make_grid(6, 0.01);
    DipoleModel model(g);
    FieldOperator op(model, OperatorKind::QMM);
    EXPECT_EQ(op.size(), 216u);
    const auto x = oracle::random_field(g, 3);
    ScalarField y(g);
    op.apply(x.values(), y.values());
    const auto direct = model.apply_qmm(x);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(y[i], direct[i]);
}

TEST_F(DeskSphere, KInsideBallIsMinusOneThird) {
    const auto ball = sphere_phantom(*grid, 0.1, 1.0);
    const auto k = model->apply_k(ball);
    EXPECT_NEAR(k[centre_index()], -1.0 / 3.0, 0.02);
}

TEST_F(DeskSphere, QsmVanishesAndQmmIsTwoThirdsAtCentre) {
    const auto ball = sphere_phantom(*grid, 0.1, 1.0);
    EXPECT_NEAR(model->apply_qsm(ball)[centre_index()], 0.0, 0.02);
    EXPECT_NEAR(model->apply_qmm(ball)[centre_index()], 2.0 / 3.0, 0.02);
}

TEST_F(DeskSphere, QsmExteriorPointOnAxis) {
    // a = 0.05 so that (0, 0, 2a) lies inside the 0.256 m window.
    const double a = 0.05;
    const auto ball = sphere_phantom(*grid, a, 1.0);
    const auto dB = model->apply_qsm(ball);
    // centre of voxel 57 is at z = 25.5 h = 0.102 m, next to (0, 0, 2a)
    const std::size_t k = 57;
    const auto r = grid->centre(32, 32, k);
    const double expect = qsm_sphere_field(r, a, 1.0);
    EXPECT_NEAR(expect, 1.0 / 12.0, 0.01);
    EXPECT_NEAR(dB.at(32, 32, k) / expect, 1.0, 0.05);
}

TEST_F(DeskSphere, QsmOfConstantBallNearlyNullInInterior) {
    const double a = 0.1;
    const auto ball = sphere_phantom(*grid, a, 1.0);
    const auto dB = model->apply_qsm(ball);
    double s = 0.0;
    std::size_t count = 0;
    const std::size_t n = grid->n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const auto c = grid->centre(i, j, k);
                const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
                if (r < a - 2 * grid->spacing()) {
                    s += dB.at(i, j, k) * dB.at(i, j, k);
                    ++count;
                }
            }
    EXPECT_LT(std::sqrt(s / count), 0.05);
}

TEST(Symbols, KnownDirections) {
    EXPECT_DOUBLE_EQ(qsm_symbol({1, 0, 0}), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(qsm_symbol({0, 0, 1}), -2.0 / 3.0);
    EXPECT_DOUBLE_EQ(qmm_symbol({1, 0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(qmm_symbol({0, 0, 1}), 0.0);
    // kz^2 = |k|^2 / 3
    EXPECT_NEAR(qsm_symbol({1, 0, 1 / std::sqrt(2.0)}), 0.0, 1e-15);
    EXPECT_THROW(qsm_symbol({0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(qmm_symbol({0, 0, 0}), std::invalid_argument);
}

TEST(Symbols, RangeAndShift) {
    std::mt19937 rng(9);
    std::normal_distribution<double> d;
    for (int s = 0; s < 1000; ++s) {
        const std::array<double, 3> k{d(rng), d(rng), d(rng)};
        const double qsm = qsm_symbol(k);
        const double qmm = qmm_symbol(k);
        EXPECT_GE(qmm, 0.0);
        EXPECT_LE(qmm, 1.0);
        EXPECT_GE(qsm, -2.0 / 3.0 - 1e-15);
        EXPECT_LE(qsm, 1.0 / 3.0 + 1e-15);
        EXPECT_NEAR(qmm - qsm, 2.0 / 3.0, 1e-15);
    }
}
