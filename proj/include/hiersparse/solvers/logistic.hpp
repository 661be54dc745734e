#pragma once
#include <hiersparse/solvers/dataset.hpp>
#include <hiersparse/solvers/linear.hpp>
#include <hiersparse/solvers/proximal_gradient.hpp>

#include <cmath>
#include <limits>
#include <optional>

namespace hiersparse {

namespace detail {

/// log(1 + exp(t)) without overflow.
inline double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

inline double sigmoid(double t)
{
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

/// exp(-t) / (1 + exp(-t))^2, symmetric in t.
inline double logistic_variance(double t)
{
    const double e = std::exp(-std::abs(t));
    return e / ((1.0 + e) * (1.0 + e));
}

inline Matrix logistic_information(const Matrix& X, const Vector& eta)
{
    Vector v(eta.size());
    for (Index i = 0; i < eta.size(); ++i) v(i) = logistic_variance(eta(i));
    return X.transpose() * v.asDiagonal() * X;
}

} // namespace detail

/// (1/2) log det(X' V X), V = diag of logistic variances at X beta.
inline double logistic_jeffreys_logdet(const Matrix& X, const Vector& beta)
{
    detail::require_dim(X.cols() == beta.size(), "beta length does not match X");
    const Matrix info = detail::logistic_information(X, X * beta);
    Eigen::LLT<Matrix> llt(info);
    if (llt.info() != Eigen::Success) throw RankDeficiencyError("X'VX is singular");
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    if (!std::isfinite(logdet)) throw RankDeficiencyError("X'VX is singular");
    return 0.5 * logdet;
}

/**
 * Negative logistic log-likelihood sum_i log(1 + exp(-y_i x_i'beta)),
 * optionally plus (1/2) log det(X'VX) (the Jeffreys correction).
 */
struct LogisticLoss {
    const Matrix& X;
    const Vector& y;
    bool jeffreys = false;

    double value(const Vector& beta) const
    {
        const Vector eta = X * beta;
        double total = 0.0;
        for (Index i = 0; i < eta.size(); ++i) total += detail::softplus(-y(i) * eta(i));
        if (jeffreys) {
            Eigen::LLT<Matrix> llt(detail::logistic_information(X, eta));
            if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
            total += llt.matrixLLT().diagonal().array().log().sum();
        }
        return total;
    }

    double value_and_gradient(const Vector& beta, Vector& grad) const
    {
        const Vector eta = X * beta;
        double total = 0.0;
        Vector r(eta.size());
        for (Index i = 0; i < eta.size(); ++i) {
            const double m = y(i) * eta(i);
            total += detail::softplus(-m);
            r(i) = -y(i) * detail::sigmoid(-m);
        }
        grad = X.transpose() * r;
        if (jeffreys) {
            Eigen::LLT<Matrix> llt(detail::logistic_information(X, eta));
            if (llt.info() != Eigen::Success) {
                grad.setConstant(std::numeric_limits<double>::quiet_NaN());
                return std::numeric_limits<double>::infinity();
            }
            total += llt.matrixLLT().diagonal().array().log().sum();
            // d/d beta of (1/2) log det: (1/2) X' (h .* v .* (1 - 2 sigma(eta))), h_i = x_i' M^{-1} x_i
            const Matrix solved = llt.solve(X.transpose());
            Vector coeff(eta.size());
            for (Index i = 0; i < eta.size(); ++i) {
                const double h = X.row(i).dot(solved.col(i));
                coeff(i) = 0.5 * h * detail::logistic_variance(eta(i)) * (1.0 - 2.0 * detail::sigmoid(eta(i)));
            }
            grad += X.transpose() * coeff;
        }
        return total;
    }
};

/**
 * Weighted-l1 logistic regression,
 *   min_beta sum_i log(1 + exp(-y_i x_i'beta)) [+ (1/2) log det X'VX] + sum_j w_j |beta_j|,
 * by proximal gradient with backtracking. With `jeffreys` the problem is not
 * convex and the result is a stationary point reached by descent from `init`.
 * There is no intercept; append a constant column with zero weight for one.
 */
inline SolveReport weighted_l1_logistic(const Dataset& data, const Vector& w, bool jeffreys, const SolverOptions& opts,
                                        const std::optional<Vector>& init = std::nullopt)
{
    detail::require_config(data.kind == ResponseKind::Labels, "logistic solver needs a labelled dataset");
    detail::require_penalty(w, data.p());
    Vector x0 = init ? *init : Vector::Zero(data.p());
    detail::require_dim(x0.size() == data.p(), "initial coefficient length does not match p");
    return minimize_composite(LogisticLoss{data.X, data.y, jeffreys}, WeightedL1Penalty{w}, std::move(x0), opts);
}

/// Same as weighted_l1_logistic with the penalty sum_j w_j beta_j^2.
inline SolveReport weighted_l2_logistic(const Dataset& data, const Vector& w, bool jeffreys, const SolverOptions& opts,
                                        const std::optional<Vector>& init = std::nullopt)
{
    detail::require_config(data.kind == ResponseKind::Labels, "logistic solver needs a labelled dataset");
    detail::require_penalty(w, data.p());
    Vector x0 = init ? *init : Vector::Zero(data.p());
    detail::require_dim(x0.size() == data.p(), "initial coefficient length does not match p");
    return minimize_composite(LogisticLoss{data.X, data.y, jeffreys}, WeightedL2Penalty{w}, std::move(x0), opts);
}

} // namespace hiersparse
