#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "isa/error.hpp"

namespace isa::lsq {

struct RankInfo {
    Eigen::Index rank = 0;
    /// Columns of one linear dependency (empty when full column rank).
    std::vector<Eigen::Index> dependent_columns;
};

/// Column rank from a column-pivoted Householder QR; a pivot counts when it
/// exceeds relative_tolerance times the largest column norm.
inline RankInfo column_rank(const Eigen::MatrixXd& a, double relative_tolerance = 1e-10) {
    RankInfo info;
    const Eigen::Index n = a.cols();
    if (n == 0) return info;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(relative_tolerance);
    info.rank = qr.rank();
    if (info.rank >= n) return info;

    const auto& perm = qr.colsPermutation().indices();
    const Eigen::Index r = info.rank;
    // the first rejected pivot column is a combination of the r accepted ones
    std::vector<Eigen::Index> cols{perm(r)};
    if (r > 0) {
        const Eigen::MatrixXd rmat = qr.matrixR().topLeftCorner(r, r).triangularView<Eigen::Upper>();
        const Eigen::VectorXd rhs = qr.matrixR().block(0, r, r, 1);
        const Eigen::VectorXd y = rmat.triangularView<Eigen::Upper>().solve(rhs);
        const double scale = std::max(1e-300, y.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < r; ++i)
            if (std::abs(y(i)) > 1e-8 * scale) cols.push_back(perm(i));
    }
    std::sort(cols.begin(), cols.end());
    info.dependent_columns = std::move(cols);
    return info;
}

/// argmin ||a x - b||, i.e. [a'a]^-1 a'b for full column rank, computed
/// through QR rather than by forming a'a.
inline Eigen::VectorXd unconstrained(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    return a.colPivHouseholderQr().solve(b);
}

namespace detail {

/// Least squares restricted to columns `face` with the weights summing to
/// one. The last face column is eliminated: x_last = 1 - sum(others).
inline Eigen::VectorXd solve_on_face(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const std::vector<Eigen::Index>& face) {
    const auto m = static_cast<Eigen::Index>(face.size());
    Eigen::VectorXd z(m);
    if (m == 1) {
        z(0) = 1.0;
        return z;
    }
    const Eigen::Index last = face.back();
    Eigen::MatrixXd reduced(a.rows(), m - 1);
    for (Eigen::Index i = 0; i + 1 < m; ++i) reduced.col(i) = a.col(face[static_cast<std::size_t>(i)]) - a.col(last);
    const Eigen::VectorXd rhs = b - a.col(last);
    const Eigen::VectorXd q = reduced.colPivHouseholderQr().solve(rhs);
    z.head(m - 1) = q;
    z(m - 1) = 1.0 - q.sum();
    return z;
}

}  // namespace detail

struct SimplexSolution {
    Eigen::VectorXd x;
    int iterations = 0;
    /// The unconstrained solution was already feasible and is returned as is.
    bool unconstrained_feasible = false;
};

/// Minimises ||b - a x||^2 over the probability simplex {x >= 0, sum x = 1}.
///
/// Primal active-set method in the style of Lawson-Hanson: the free set
/// starts at the best vertex, grows by the coordinate with the most negative
/// reduced gradient, and each face subproblem is solved with the equality
/// constraint eliminated. Infeasible face solutions are handled by stepping
/// to the boundary and dropping the blocking coordinates. Requires `a` to
/// have full column rank.
inline SimplexSolution simplex_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index n = a.cols();
    if (n == 0) throw numerical_error("simplex least squares: no columns");
    if (a.rows() != b.size()) throw data_error("simplex least squares: dimension mismatch");
    SimplexSolution sol;
    if (n == 1) {
        sol.x = Eigen::VectorXd::Ones(1);
        return sol;
    }

    const Eigen::VectorXd free_solution = unconstrained(a, b);
    if (free_solution.minCoeff() >= 0.0 && std::abs(free_solution.sum() - 1.0) <= 1e-12 * static_cast<double>(n)) {
        sol.x = free_solution;
        sol.unconstrained_feasible = true;
        return sol;
    }

    Eigen::Index start = 0;
    double best = (a.col(0) - b).squaredNorm();
    for (Eigen::Index j = 1; j < n; ++j) {
        const double r = (a.col(j) - b).squaredNorm();
        if (r < best) {
            best = r;
            start = j;
        }
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x(start) = 1.0;
    std::vector<Eigen::Index> face{start};
    std::vector<bool> in_face(static_cast<std::size_t>(n), false);
    in_face[static_cast<std::size_t>(start)] = true;

    const double norm_a = a.norm();
    const double tol = 1e-12 * std::max(1.0, norm_a * (norm_a + b.norm()));
    const int max_iterations = 50 * static_cast<int>(n) + 100;

    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        const Eigen::VectorXd grad = a.transpose() * (a * x - b);
        double face_grad = 0.0;
        for (auto i : face) face_grad += grad(i);
        face_grad /= static_cast<double>(face.size());

        Eigen::Index entering = -1;
        double most_negative = -tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (in_face[static_cast<std::size_t>(j)]) continue;
            const double reduced = grad(j) - face_grad;
            if (reduced < most_negative) {
                most_negative = reduced;
                entering = j;
            }
        }
        if (entering < 0) break;

        face.insert(std::upper_bound(face.begin(), face.end(), entering), entering);
        in_face[static_cast<std::size_t>(entering)] = true;

        bool first = true;
        bool stalled = false;
        while (true) {
            const Eigen::VectorXd z = detail::solve_on_face(a, b, face);
            bool feasible = true;
            for (Eigen::Index i = 0; i < z.size(); ++i)
                if (z(i) <= 0.0) feasible = false;
            if (feasible) {
                x.setZero();
                for (std::size_t i = 0; i < face.size(); ++i) x(face[i]) = z(static_cast<Eigen::Index>(i));
                break;
            }
            if (first) {
                const auto pos = std::find(face.begin(), face.end(), entering) - face.begin();
                if (z(pos) <= 0.0) {
                    // entering coordinate cannot grow: KKT holds to working precision
                    face.erase(face.begin() + pos);
                    in_face[static_cast<std::size_t>(entering)] = false;
                    stalled = true;
                    break;
                }
            }
            first = false;

            double step = 1.0;
            std::size_t blocking = face.size();
            for (std::size_t i = 0; i < face.size(); ++i) {
                const double zi = z(static_cast<Eigen::Index>(i));
                if (zi <= 0.0) {
                    const double xi = x(face[i]);
                    const double t = xi / (xi - zi);
                    if (t < step) {
                        step = t;
                        blocking = i;
                    }
                }
            }
            for (std::size_t i = 0; i < face.size(); ++i) {
                auto& xi = x(face[i]);
                xi += step * (z(static_cast<Eigen::Index>(i)) - xi);
            }
            if (blocking < face.size()) x(face[blocking]) = 0.0;
            std::vector<Eigen::Index> kept;
            for (auto i : face) {
                if (x(i) > 0.0) {
                    kept.push_back(i);
                } else {
                    x(i) = 0.0;
                    in_face[static_cast<std::size_t>(i)] = false;
                }
            }
            face = std::move(kept);
            if (face.empty()) throw numerical_error("simplex least squares: active set collapsed");
        }
        if (stalled) break;
    }
    if (iterations >= max_iterations) throw numerical_error("simplex least squares: iteration limit reached");

    x = x.cwiseMax(0.0);
    x /= x.sum();
    sol.x = x;
    sol.iterations = iterations;
    return sol;
}

}  // namespace isa::lsq
