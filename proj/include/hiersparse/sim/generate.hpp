#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>
#include <hiersparse/sim/rng.hpp>

#include <cmath>

namespace hiersparse::sim {

/// Sigma_ij = rho^|i-j|
inline Matrix ar1_covariance(Index p, double rho)
{
    Matrix sigma(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j) sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    return sigma;
}

/// n rows drawn i.i.d. from N(0, Sigma), Sigma_ij = rho^|i-j|, via the Cholesky factor of Sigma.
inline Matrix gen_correlated_design(Index n, Index p, double rho, CounterRng& rng)
{
    hiersparse::detail::require_domain(rho > -1.0 && rho < 1.0, "correlation rho must lie in (-1, 1)");
    hiersparse::detail::require_dim(n >= 1 && p >= 1, "design needs n >= 1 and p >= 1");
    Eigen::LLT<Matrix> llt(ar1_covariance(p, rho));
    if (llt.info() != Eigen::Success) throw NumericalError("Cholesky of the design covariance failed");
    const Matrix lower = llt.matrixL();
    Matrix z(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) z(i, j) = rng.normal();
    return z * lower.transpose();
}

/// y = X beta + delta * eps
inline Vector gen_linear_responses(const Matrix& X, const Vector& beta, double delta, CounterRng& rng)
{
    hiersparse::detail::require_dim(X.cols() == beta.size(), "beta length does not match X");
    Vector y = X * beta;
    if (delta != 0.0)
        for (Index i = 0; i < y.size(); ++i) y(i) += delta * rng.normal();
    return y;
}

/// y_i = +1 with probability 1/(1 + exp(-x_i'beta)), else -1.
inline Vector gen_logistic_responses(const Matrix& X, const Vector& beta, CounterRng& rng)
{
    hiersparse::detail::require_dim(X.cols() == beta.size(), "beta length does not match X");
    const Vector eta = X * beta;
    Vector y(eta.size());
    for (Index i = 0; i < eta.size(); ++i) {
        const double prob = eta(i) >= 0.0 ? 1.0 / (1.0 + std::exp(-eta(i))) : std::exp(eta(i)) / (1.0 + std::exp(eta(i)));
        y(i) = rng.uniform() < prob ? 1.0 : -1.0;
    }
    return y;
}

struct GaussianSample {
    Matrix X;
    /// (1/n) sum_i x_i x_i'
    Matrix S;
};

/// n i.i.d. draws from N(0, Omega^{-1}).
inline GaussianSample gen_gaussian_samples(const Matrix& omega, Index n, CounterRng& rng)
{
    hiersparse::detail::require_dim(omega.rows() == omega.cols(), "omega must be square");
    hiersparse::detail::require_dim(n >= 1, "need at least one sample");
    Eigen::LLT<Matrix> llt(omega);
    hiersparse::detail::require_domain(llt.info() == Eigen::Success && omega.isApprox(omega.transpose(), 1e-12),
                           "omega must be symmetric positive definite");
    const Index p = omega.rows();
    Matrix z(p, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) z(j, i) = rng.normal();
    // Omega = L L'  =>  x = L'^{-1} z has covariance Omega^{-1}
    GaussianSample out;
    out.X = llt.matrixU().solve(z).transpose();
    out.S = (out.X.transpose() * out.X) / static_cast<double>(n);
    return out;
}

} // namespace hiersparse::sim
