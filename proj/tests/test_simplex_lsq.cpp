#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "isa/simplex_lsq.hpp"

using namespace isa;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Euclidean projection onto the probability simplex (sort-based).
VectorXd project_simplex(const VectorXd& v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumsum += u[i];
        const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

// Accelerated projected gradient: slow but independent of the active-set code.
VectorXd reference_solve(const MatrixXd& a, const VectorXd& b) {
    const MatrixXd h = a.transpose() * a;
    const VectorXd g = a.transpose() * b;
    const double lipschitz = h.operatorNorm();
    VectorXd x = VectorXd::Constant(a.cols(), 1.0 / static_cast<double>(a.cols()));
    VectorXd y = x;
    double t = 1.0;
    for (int it = 0; it < 200000; ++it) {
        const VectorXd next = project_simplex(y - (h * y - g) / lipschitz);
        const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        y = next + ((t - 1.0) / t_next) * (next - x);
        if ((next - x).norm() < 1e-15) {
            x = next;
            break;
        }
        x = next;
        t = t_next;
    }
    return x;
}

double objective(const MatrixXd& a, const VectorXd& b, const VectorXd& x) { return (a * x - b).squaredNorm(); }

}  // namespace

TEST(SimplexLsq, IdentityRecoversTarget) {
    const MatrixXd a = MatrixXd::Identity(3, 3);
    VectorXd b(3);
    b << 0.2, 0.3, 0.5;
    const auto s = lsq::simplex_least_squares(a, b);
    EXPECT_TRUE(s.unconstrained_feasible);
    EXPECT_NEAR((s.x - b).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(SimplexLsq, TwoByTwoHandSolution) {
    MatrixXd a(2, 2);
    a << 0.8, 0.1, 0.2, 0.9;
    VectorXd b(2);
    b << 0.45, 0.55;
    const auto s = lsq::simplex_least_squares(a, b);
    EXPECT_NEAR(s.x(0), 0.5, 1e-12);
    EXPECT_NEAR(s.x(1), 0.5, 1e-12);
}

TEST(SimplexLsq, InfeasibleUnconstrainedIsClipped) {
    // b lies outside the cone: the unconstrained solution has a negative entry
    MatrixXd a(3, 2);
    a << 1, 0, 0, 1, 0, 0;
    VectorXd b(3);
    b << 1.2, -0.1, 0;
    const auto s = lsq::simplex_least_squares(a, b);
    EXPECT_FALSE(s.unconstrained_feasible);
    EXPECT_NEAR(s.x(0), 1.0, 1e-12);
    EXPECT_NEAR(s.x(1), 0.0, 1e-12);
}

TEST(SimplexLsq, MatchesUnconstrainedWhenFeasible) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int k = n + static_cast<int>(rng() % 6);
        MatrixXd a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        VectorXd p(n);
        for (int j = 0; j < n; ++j) p(j) = 0.1 + u(rng);
        p /= p.sum();
        VectorXd noise(k);
        for (int i = 0; i < k; ++i) noise(i) = 1e-3 * (u(rng) - 0.5);
        const VectorXd b = a * p + noise;
        const VectorXd free = lsq::unconstrained(a, b);
        if (free.minCoeff() < 0 || std::abs(free.sum() - 1.0) > 1e-12) continue;
        ++checked;
        const auto s = lsq::simplex_least_squares(a, b);
        EXPECT_LT((s.x - free).cwiseAbs().maxCoeff(), 1e-9);
    }
    // exact sums are rare with noise; the noiseless case covers the rest
    for (int trial = 0; trial < 100; ++trial) {
        MatrixXd a(6, 3);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
        VectorXd p(3);
        for (int j = 0; j < 3; ++j) p(j) = 0.1 + u(rng);
        p /= p.sum();
        const auto s = lsq::simplex_least_squares(a, a * p);
        EXPECT_LT((s.x - p).cwiseAbs().maxCoeff(), 1e-9);
        ++checked;
    }
    EXPECT_GE(checked, 100);
}

TEST(SimplexLsq, AgreesWithProjectedGradientReference) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int k = n + static_cast<int>(rng() % 8);
        MatrixXd a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        VectorXd b(k);
        for (int i = 0; i < k; ++i) b(i) = u(rng);
        const auto s = lsq::simplex_least_squares(a, b);
        const auto ref = reference_solve(a, b);
        EXPECT_GE(s.x.minCoeff(), 0.0);
        EXPECT_NEAR(s.x.sum(), 1.0, 1e-12);
        // the active-set optimum is never worse than the iterative reference
        EXPECT_LE(objective(a, b, s.x), objective(a, b, ref) + 1e-12) << "trial " << trial;
    }
}

TEST(SimplexLsq, KktConditionsHold) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const int k = n + static_cast<int>(rng() % 10);
        MatrixXd a(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        VectorXd b(k);
        for (int i = 0; i < k; ++i) b(i) = u(rng);
        const auto s = lsq::simplex_least_squares(a, b);
        const VectorXd grad = a.transpose() * (a * s.x - b);
        double lambda = 0.0;
        int support = 0;
        for (int j = 0; j < n; ++j)
            if (s.x(j) > 1e-12) {
                lambda += grad(j);
                ++support;
            }
        ASSERT_GT(support, 0);
        lambda /= support;
        const double scale = 1e-8 * (1.0 + a.norm() * (a.norm() + b.norm()));
        for (int j = 0; j < n; ++j) {
            if (s.x(j) > 1e-12) EXPECT_NEAR(grad(j), lambda, scale);
            else EXPECT_GE(grad(j), lambda - scale);
        }
    }
}

TEST(ColumnRank, DetectsDependentSet) {
    MatrixXd a(4, 3);
    a << 0.5, 0.1, 0.3, 0.2, 0.4, 0.3, 0.2, 0.4, 0.1, 0.1, 0.1, 0.1;
    EXPECT_EQ(lsq::column_rank(a).rank, 3);
    // column 2 = (column 0 + column 1) / 2
    a.col(2) = 0.5 * (a.col(0) + a.col(1));
    const auto info = lsq::column_rank(a);
    EXPECT_EQ(info.rank, 2);
    EXPECT_EQ(info.dependent_columns, (std::vector<Eigen::Index>{0, 1, 2}));
}

TEST(ColumnRank, DuplicateColumns) {
    MatrixXd a(3, 3);
    a << 0.2, 0.5, 0.2, 0.3, 0.25, 0.3, 0.5, 0.25, 0.5;
    const auto info = lsq::column_rank(a);
    EXPECT_EQ(info.rank, 2);
    EXPECT_EQ(info.dependent_columns, (std::vector<Eigen::Index>{0, 2}));
}
