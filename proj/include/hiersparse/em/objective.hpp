#pragma once
#include <hiersparse/em/problem.hpp>
#include <hiersparse/model/density.hpp>
#include <hiersparse/solvers/logistic.hpp>

#include <cmath>
#include <numbers>

namespace hiersparse {

namespace detail {

/// Effective number of observations: centering integrates out one degree of freedom.
inline double gaussian_dof(const Dataset& data)
{
    return static_cast<double>(data.n()) - (data.centered ? 1.0 : 0.0);
}

/// Exact Gaussian log-likelihood; random noise has the variance integrated out.
inline double gaussian_log_likelihood(const Dataset& data, const NoiseModel& noise, double rss)
{
    const double dof = gaussian_dof(data);
    const double two_pi = 2.0 * std::numbers::pi;
    const double centering = data.centered ? -0.5 * std::log(static_cast<double>(data.n())) : 0.0;
    if (noise.is_fixed()) {
        const double var = noise.as_fixed().variance;
        return -0.5 * dof * std::log(two_pi * var) + centering - 0.5 * rss / var;
    }
    const auto& ig = noise.as_inverse_gamma();
    const double shape = ig.a + 0.5 * dof;
    return -0.5 * dof * std::log(two_pi) + centering + ig.a * std::log(ig.b) + log_gamma(shape) - log_gamma(ig.a) -
           shape * std::log(ig.b + 0.5 * rss);
}

inline double logistic_log_likelihood(const Dataset& data, const Vector& beta, bool jeffreys)
{
    const Vector eta = data.X * beta;
    double total = 0.0;
    for (Index i = 0; i < eta.size(); ++i) total -= softplus(-data.y(i) * eta(i));
    if (jeffreys) total -= logistic_jeffreys_logdet(data.X, beta);
    return total;
}

} // namespace detail

/**
 * Log posterior of a regression problem at `beta`: exact log-likelihood
 * (Jeffreys-corrected for logistic when enabled) plus the exact log marginal
 * prior. Comparable across points of one problem.
 */
inline double penalized_objective(const FitProblem& problem, const Vector& beta)
{
    detail::require_config(problem.model != ModelKind::Precision, "precision problems take a matrix point");
    detail::require_dim(beta.size() == problem.data.p(), "point length does not match problem");
    double ll = 0.0;
    if (problem.model == ModelKind::Logistic) {
        ll = detail::logistic_log_likelihood(problem.data, beta, problem.jeffreys);
    } else {
        const double rss = (problem.data.y - problem.data.X * beta).squaredNorm();
        ll = detail::gaussian_log_likelihood(problem.data, problem.noise, rss);
    }
    return ll + log_marginal_prior(beta, problem.prior);
}

/**
 * Log posterior of a precision problem:
 *   -(np/2) log 2pi + ((n-p-1)/2) log det Omega - (n/2) tr(S Omega) + log prior,
 * i.e. the Gaussian log-likelihood with the Jeffreys correction. Throws
 * DomainError if `omega` is not positive definite.
 */
inline double penalized_objective(const FitProblem& problem, const Matrix& omega)
{
    detail::require_config(problem.model == ModelKind::Precision, "matrix point needs a precision problem");
    const Index p = problem.sample_cov.rows();
    detail::require_dim(omega.rows() == p && omega.cols() == p, "omega size does not match problem");
    Eigen::LLT<Matrix> llt(omega);
    detail::require_domain(llt.info() == Eigen::Success, "omega is not positive definite");
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double n = static_cast<double>(problem.sample_size);
    const double pd = static_cast<double>(p);
    const double ll = -0.5 * n * pd * std::log(2.0 * std::numbers::pi) + 0.5 * (n - pd - 1.0) * logdet -
                      0.5 * n * (problem.sample_cov.cwiseProduct(omega)).sum();
    return ll + log_marginal_prior(omega, problem.prior);
}

} // namespace hiersparse
