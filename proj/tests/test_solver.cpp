#include <gtest/gtest.h>

#include <cmath>

#include "magmap/phantoms.hpp"
#include "magmap/solver.hpp"
#include "oracles.hpp"

using namespace magmap;

namespace {

class DenseMap final : public LinearMap {
public:
    DenseMap(std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {}
    std::size_t size() const override { return n_; }
    void apply(std::span<const double> x, std::span<double> y) override {
        for (std::size_t r = 0; r < n_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < n_; ++c) s += a_[r * n_ + c] * x[c];
            y[r] = s;
        }
        ++calls;
    }
    int calls = 0;

private:
    std::size_t n_;
    std::vector<double> a_;
};

class IdentityMap final : public LinearMap {
public:
    explicit IdentityMap(std::size_t n) : n_(n) {}
    std::size_t size() const override { return n_; }
    void apply(std::span<const double> x, std::span<double> y) override { std::copy(x.begin(), x.end(), y.begin()); }

private:
    std::size_t n_;
};

DenseMap diagonally_dominant(std::size_t n, std::uint32_t seed, std::vector<double>* copy) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> a(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            a[r * n + c] = d(rng);
            row += std::abs(a[r * n + c]);
        }
        a[r * n + r] = row + 1.0;
    }
    if (copy) *copy = a;
    return DenseMap(n, std::move(a));
}

std::vector<double> random_vector(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

} // namespace

TEST(SolveConfig, Validation) {
    EXPECT_THROW(SolveConfig::fixed(0).validate(), std::invalid_argument);
    EXPECT_THROW(SolveConfig::tolerance(0.0).validate(), std::invalid_argument);
    EXPECT_NO_THROW(SolveConfig::tolerance(1e-4).validate());
}

TEST(Bicgstab, IdentityConvergesInOneIteration) {
    IdentityMap id(7);
    const auto b = random_vector(7, 1);
    std::vector<double> x(7);
    for (const auto& cfg : {SolveConfig::tolerance(1e-10), SolveConfig::fixed(50)}) {
        const auto rep = bicgstab(id, b, x, cfg);
        EXPECT_EQ(rep.iterations_used, 1);
        EXPECT_EQ(rep.termination, Termination::converged);
        for (std::size_t i = 0; i < 7; ++i) EXPECT_DOUBLE_EQ(x[i], b[i]);
    }
}

TEST(Bicgstab, ZeroRightHandSide) {
    IdentityMap id(4);
    std::vector<double> b(4, 0.0), x(4, 5.0);
    const auto rep = bicgstab(id, b, x, SolveConfig::tolerance(1e-6));
    EXPECT_EQ(rep.termination, Termination::converged);
    EXPECT_EQ(rep.iterations_used, 0);
    for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(Bicgstab, MatchesDenseDirectSolve) {
    for (std::size_t n : {5u, 20u}) {
        for (std::uint32_t seed = 0; seed < 5; ++seed) {
            std::vector<double> a;
            auto op = diagonally_dominant(n, seed, &a);
            const auto b = random_vector(n, 100 + seed);
            const auto expect = oracle::dense_solve(a, b);
            std::vector<double> x(n);
            const auto rep = bicgstab(op, b, x, SolveConfig::tolerance(1e-13, 200));
            EXPECT_EQ(rep.termination, Termination::converged);
            double err = 0, ref = 0;
            for (std::size_t i = 0; i < n; ++i) {
                err += std::pow(x[i] - expect[i], 2);
                ref += expect[i] * expect[i];
            }
            EXPECT_LT(std::sqrt(err / ref), 1e-8) << "n=" << n << " seed=" << seed;
        }
    }
}

TEST(Bicgstab, FixedModeRunsExactlyMaxIterations) {
    auto op = diagonally_dominant(30, 3, nullptr);
    const auto b = random_vector(30, 4);
    std::vector<double> x(30);
    int observed = 0;
    const auto rep = bicgstab(op, b, x, SolveConfig::fixed(6), [&](int it, std::span<const double>, double) {
        EXPECT_EQ(it, ++observed);
    });
    EXPECT_EQ(rep.iterations_used, 6);
    EXPECT_EQ(observed, 6);
    EXPECT_EQ(rep.termination, Termination::max_iter);
    // two operator applications per iteration plus the exit residual
    EXPECT_EQ(op.calls, 13);
}

TEST(Bicgstab, HistoryAndResidualConsistency) {
    auto op = diagonally_dominant(20, 8, nullptr);
    const auto b = random_vector(20, 9);
    std::vector<double> x(20);
    const auto rep = bicgstab(op, b, x, SolveConfig::tolerance(1e-9));
    ASSERT_FALSE(rep.residual_history.empty());
    EXPECT_EQ(rep.residual_history.front(), 1.0);
    EXPECT_EQ(rep.residual_history.back(), rep.final_relative_residual);
    EXPECT_EQ(rep.residual_history.size(), static_cast<std::size_t>(rep.iterations_used) + 1);
    EXPECT_LE(rep.final_relative_residual, 1e-9);
    EXPECT_LE(rep.true_relative_residual, 10.0 * rep.final_relative_residual + 1e-15);
}

TEST(Bicgstab, BreakdownIsReportedNotThrown) {
    // Skew map: (r_hat, A r_hat) = 0 on the first step.
    DenseMap op(2, {0.0, 1.0, -1.0, 0.0});
    const std::vector<double> b{1.0, 0.0};
    std::vector<double> x(2);
    const auto rep = bicgstab(op, b, x, SolveConfig::tolerance(1e-8));
    EXPECT_EQ(rep.termination, Termination::breakdown);
    for (double v : x) EXPECT_TRUE(std::isfinite(v));
}

TEST(Bicgstab, Deterministic) {
    auto op1 = diagonally_dominant(15, 2, nullptr);
    auto op2 = diagonally_dominant(15, 2, nullptr);
    const auto b = random_vector(15, 3);
    std::vector<double> x1(15), x2(15);
    const auto r1 = bicgstab(op1, b, x1, SolveConfig::fixed(4));
    const auto r2 = bicgstab(op2, b, x2, SolveConfig::fixed(4));
    EXPECT_EQ(x1, x2);
    EXPECT_EQ(r1.residual_history, r2.residual_history);
}

TEST(Bicgstab, ReportJsonFields) {
    SolveReport rep;
    rep.iterations_used = 3;
    rep.residual_history = {1.0, 0.1, 0.01, 0.001};
    rep.final_relative_residual = 0.001;
    rep.termination = Termination::converged;
    rep.seconds_per_iteration = 0.5;
    const auto j = to_json(rep);
    EXPECT_EQ(j["iterations_used"], 3);
    EXPECT_EQ(j["termination"], "converged");
    EXPECT_EQ(j["residual_history"].size(), 4u);
    EXPECT_EQ(j["seconds_per_iteration"], 0.5);
    EXPECT_FALSE(to_json(rep, false).contains("seconds_per_iteration"));
}

TEST(Bicgstab, QmmSphereInverseCrimeConvergesQuickly) {
    const VoxelGrid g(64, 0.004);
    DipoleModel model(g);
    const auto ball = sphere_phantom(g, 0.1, 1.0);
    const auto data = model.apply_qmm(ball);
    FieldOperator op(model, OperatorKind::QMM);
    const auto [x, rep] = bicgstab(op, data, SolveConfig::tolerance(1e-4, 200));
    EXPECT_EQ(rep.termination, Termination::converged);
    EXPECT_LE(rep.iterations_used, 20);
    EXPECT_LE(rep.true_relative_residual, 10.0 * rep.final_relative_residual);
}
