#pragma once
#include <hiersparse/model/prior.hpp>
#include <hiersparse/solvers/options.hpp>
#include <hiersparse/solvers/prox.hpp>

#include <cmath>
#include <vector>

namespace hiersparse {

struct PrecisionEstimate {
    Matrix omega;
    int iterations = 0;
    bool converged = false;
    /// Largest change of the covariance iterate in the final sweep.
    double last_change = 0.0;
};

namespace detail {

inline void require_symmetric(const Matrix& m, const char* what, double tol = 1e-10)
{
    require_dim(m.rows() == m.cols(), std::string(what) + " must be square");
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = i + 1; j < m.cols(); ++j)
            require_domain(std::abs(m(i, j) - m(j, i)) <= tol, std::string(what) + " is not symmetric");
}

/**
 * Standard weighted graphical lasso,
 *   max_Omega log det Omega - tr(S Omega) - sum_{i,j} rho_ij |Omega_ij|,
 * by Friedman-Hastie-Tibshirani block coordinate descent on the covariance.
 */
inline PrecisionEstimate graphical_lasso(const Matrix& S, const Matrix& rho, const SolverOptions& opts)
{
    const Index p = S.rows();
    Matrix cov = S;
    cov.diagonal() += rho.diagonal();
    Matrix coef = Matrix::Zero(p - 1, p);

    std::vector<Index> others(static_cast<std::size_t>(p - 1));
    Matrix w11(p - 1, p - 1);
    Vector s12(p - 1);
    Vector r12(p - 1);

    PrecisionEstimate est;
    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        double max_change = 0.0;
        for (Index j = 0; j < p; ++j) {
            for (Index k = 0, m = 0; k < p; ++k)
                if (k != j) others[static_cast<std::size_t>(m++)] = k;
            for (Index a = 0; a < p - 1; ++a) {
                const Index ia = others[static_cast<std::size_t>(a)];
                s12(a) = S(ia, j);
                r12(a) = rho(ia, j);
                for (Index b = 0; b < p - 1; ++b) w11(a, b) = cov(ia, others[static_cast<std::size_t>(b)]);
            }
            // lasso: min (1/2) b'W11 b - b's12 + sum r12_k |b_k|
            auto beta = coef.col(j);
            Vector wb = w11 * beta;
            for (int inner = 0; inner < opts.max_iter; ++inner) {
                double inner_change = 0.0;
                for (Index a = 0; a < p - 1; ++a) {
                    const double partial = s12(a) - wb(a) + w11(a, a) * beta(a);
                    const double updated = soft_threshold(partial, r12(a)) / w11(a, a);
                    const double delta = updated - beta(a);
                    if (delta != 0.0) {
                        wb += delta * w11.col(a);
                        beta(a) = updated;
                        inner_change = std::max(inner_change, std::abs(delta));
                    }
                }
                if (inner_change < 0.1 * opts.tol) break;
            }
            for (Index a = 0; a < p - 1; ++a) {
                const Index ia = others[static_cast<std::size_t>(a)];
                max_change = std::max(max_change, std::abs(cov(ia, j) - wb(a)));
                cov(ia, j) = wb(a);
                cov(j, ia) = wb(a);
            }
        }
        est.iterations = sweep;
        est.last_change = max_change;
        if (max_change < opts.tol) {
            est.converged = true;
            break;
        }
    }

    Matrix omega(p, p);
    for (Index j = 0; j < p; ++j) {
        double wb_dot = 0.0;
        for (Index k = 0, m = 0; k < p; ++k)
            if (k != j) wb_dot += cov(k, j) * coef(m++, j);
        const double diag = 1.0 / (cov(j, j) - wb_dot);
        omega(j, j) = diag;
        for (Index k = 0, m = 0; k < p; ++k)
            if (k != j) omega(k, j) = -coef(m++, j) * diag;
    }
    est.omega = 0.5 * (omega + omega.transpose());
    return est;
}

} // namespace detail

/**
 * Maximizes  c log det Omega - (n/2) tr(S Omega) - sum_{i<=j} W_ij |Omega_ij|
 * with c = (n - p - 1)/2, the log-likelihood plus Jeffreys correction.
 *
 * Dividing by c gives a standard weighted graphical lasso with covariance
 * (n/(n-p-1)) S, diagonal penalties W_ii/c and off-diagonal penalties
 * W_ij/(2c) (each unordered pair appears twice in the standard form).
 * Penalty weights may be zero. Throws NumericalError if the result is not
 * positive definite.
 */
inline PrecisionEstimate weighted_glasso(const Matrix& S, Index n, const Matrix& W, const SolverOptions& opts)
{
    detail::require_symmetric(S, "S");
    detail::require_symmetric(W, "W");
    const Index p = S.rows();
    detail::require_dim(W.rows() == p, "W size does not match S");
    detail::require_domain(n > p + 1, "weighted_glasso requires n > p + 1 (n = " + std::to_string(n) +
                                          ", p = " + std::to_string(p) + ")");
    for (Index i = 0; i < p; ++i) {
        detail::require_domain(S(i, i) > 0.0, "S must have a positive diagonal");
        for (Index j = 0; j < p; ++j)
            detail::require_domain(std::isfinite(W(i, j)) && W(i, j) >= 0.0,
                                   "penalty weights must be finite and nonnegative");
    }
    const double c = 0.5 * static_cast<double>(n - p - 1);
    const Matrix scaled_cov = (static_cast<double>(n) / (2.0 * c)) * S;
    Matrix rho = W / (2.0 * c);
    rho.diagonal() = W.diagonal() / c;

    if (p == 1) {
        PrecisionEstimate est;
        est.omega = Matrix::Constant(1, 1, 1.0 / (scaled_cov(0, 0) + rho(0, 0)));
        est.converged = true;
        return est;
    }
    PrecisionEstimate est = detail::graphical_lasso(scaled_cov, rho, opts);
    Eigen::LLT<Matrix> llt(est.omega);
    if (llt.info() != Eigen::Success || !est.omega.allFinite())
        throw NumericalError("graphical lasso lost positive definiteness");
    return est;
}

inline PrecisionEstimate weighted_glasso(const Matrix& S, Index n, const WeightSet& W, const SolverOptions& opts)
{
    detail::require_config(W.variant() == PriorVariant::Matrix, "weighted_glasso needs matrix weights");
    return weighted_glasso(S, n, W.matrix(), opts);
}

} // namespace hiersparse
