#pragma once
#include <hiersparse/model/prior.hpp>
#include <hiersparse/solvers/dataset.hpp>
#include <hiersparse/solvers/logistic.hpp>

#include <algorithm>
#include <cmath>

// First-order optimality checks for the inner problems. Gradients are
// recomputed from the raw data, never from solver state.
namespace hiersparse::kkt {

/// Gradient of (v/2)||y - X beta||^2.
inline Vector linear_gradient(const Dataset& data, double v, const Vector& beta)
{
    return -v * (data.X.transpose() * (data.y - data.X * beta));
}

/// Gradient of the logistic loss (plus Jeffreys term when requested).
inline Vector logistic_gradient(const Dataset& data, const Vector& beta, bool jeffreys)
{
    Vector grad;
    LogisticLoss{data.X, data.y, jeffreys}.value_and_gradient(beta, grad);
    return grad;
}

/// Distance from 0 to grad + w .* d|beta|, per coordinate.
inline Vector l1_residual(const Vector& grad, const Vector& beta, const Vector& w)
{
    Vector r(beta.size());
    for (Index j = 0; j < beta.size(); ++j) {
        if (beta(j) != 0.0)
            r(j) = std::abs(grad(j) + w(j) * (beta(j) > 0.0 ? 1.0 : -1.0));
        else
            r(j) = std::max(0.0, std::abs(grad(j)) - w(j));
    }
    return r;
}

/// Stationarity of grad + 2 w .* beta.
inline Vector l2_residual(const Vector& grad, const Vector& beta, const Vector& w)
{
    return (grad + 2.0 * w.cwiseProduct(beta)).cwiseAbs();
}

/// Per-group distance from 0 to grad_G + w_G * d||beta_G||.
inline Vector group_residual(const Vector& grad, const Vector& beta, const GroupStructure& groups, const Vector& w)
{
    Vector r(groups.num_groups());
    for (Index g = 0; g < groups.num_groups(); ++g) {
        const auto& members = groups.members(g);
        double norm_sq = 0.0;
        for (Index j : members) norm_sq += beta(j) * beta(j);
        const double norm = std::sqrt(norm_sq);
        double acc = 0.0;
        if (norm > 0.0) {
            for (Index j : members) {
                const double d = grad(j) + w(g) * beta(j) / norm;
                acc += d * d;
            }
            r(g) = std::sqrt(acc);
        } else {
            for (Index j : members) acc += grad(j) * grad(j);
            r(g) = std::max(0.0, std::sqrt(acc) - w(g));
        }
    }
    return r;
}

/**
 * Gradient of c log det Omega - (n/2) tr(S Omega), c = (n-p-1)/2, with
 * respect to the free entries Omega_ij, i <= j (an off-diagonal entry moves
 * as a symmetric pair). Returned as a symmetric matrix.
 */
inline Matrix glasso_gradient(const Matrix& S, Index n, const Matrix& omega)
{
    const Index p = S.rows();
    const double c = 0.5 * static_cast<double>(n - p - 1);
    Matrix grad = 2.0 * (c * omega.inverse() - 0.5 * static_cast<double>(n) * S);
    grad.diagonal() *= 0.5;
    return 0.5 * (grad + grad.transpose());
}

/**
 * Stationarity of  c log det Omega - (n/2) tr(S Omega) - sum_{i<=j} W_ij |Omega_ij|,
 * c = (n-p-1)/2, reported per upper-triangle entry as a matrix. An
 * off-diagonal entry moves as a symmetric pair, so its smooth gradient is
 * 2 (c Omega^{-1} - (n/2) S)_ij.
 */
inline Matrix glasso_residual(const Matrix& S, Index n, const Matrix& W, const Matrix& omega)
{
    const Index p = S.rows();
    const Matrix grad = glasso_gradient(S, n, omega);
    Matrix r = Matrix::Zero(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) {
            const double g = grad(i, j);
            const double x = 0.5 * (omega(i, j) + omega(j, i));
            const double val = x != 0.0 ? std::abs(g - W(i, j) * (x > 0.0 ? 1.0 : -1.0))
                                        : std::max(0.0, std::abs(g) - W(i, j));
            r(i, j) = val;
            r(j, i) = val;
        }
    return r;
}

/**
 * Curvature scale used to express residuals in coefficient units: the
 * largest eigenvalue of the smooth part's Hessian bound, floored at the
 * reciprocal of the initial proximal step.
 */
inline double linear_curvature(const Dataset& data, double v)
{
    const Matrix gram = data.X.transpose() * data.X;
    return std::max(1.0, v * Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
}

inline double logistic_curvature(const Dataset& data)
{
    const Matrix gram = data.X.transpose() * data.X;
    return std::max(1.0, 0.25 * Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
}

/// c * lambda_max(Omega^{-1})^2: Hessian bound of c log det at Omega.
inline double glasso_curvature(Index n, const Matrix& omega)
{
    const Index p = omega.rows();
    const double c = 0.5 * static_cast<double>(n - p - 1);
    const double lmin = Eigen::SelfAdjointEigenSolver<Matrix>(omega, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    return std::max(1.0, c / (lmin * lmin));
}

/// Residuals certify optimality when they are below 10 * tol in coefficient units.
inline bool certified(double max_residual, double tol, double curvature)
{
    return max_residual <= 10.0 * tol * curvature;
}

} // namespace hiersparse::kkt
