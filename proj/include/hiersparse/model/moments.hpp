#pragma once
#include <hiersparse/model/density.hpp>

#include <cmath>
#include <utility>

namespace hiersparse {

/**
 * t-th moment of |beta_j| under the marginal prior with hyperparameters (a, b).
 *
 * The magnitude has density ((nu-1)/b)(z/b + 1)^(-nu) with nu = a + 1, so
 * E[Z^t] = b^t Gamma(nu-1-t) Gamma(t+1) / Gamma(nu-1). Only q = 1 is supported.
 */
inline double prior_moment(double a, double b, double q, double t)
{
    detail::require_domain(a > 0.0 && b > 0.0 && t > 0.0, "prior_moment needs positive a, b and t");
    detail::require_config(q == 1.0, "prior moments are only available for q = 1");
    const double nu = a + 1.0;
    if (nu - 1.0 - t <= 0.0)
        throw MomentUndefinedError("moment of order " + std::to_string(t) +
                                   " is infinite unless a > t (a = " + std::to_string(a) + ")");
    return std::exp(t * std::log(b) + detail::log_gamma(nu - 1.0 - t) + detail::log_gamma(t + 1.0) -
                    detail::log_gamma(nu - 1.0));
}

struct ShapeScale {
    double a;
    double b;
};

/// (a, b) whose |beta| marginal has the requested mean and variance (q = 1).
inline ShapeScale hyperparams_from_mean_var(double mean, double var)
{
    detail::require_domain(mean > 0.0 && var > 0.0, "mean and variance must be positive");
    if (var <= mean * mean)
        throw InfeasibleMomentsError("variance must exceed mean^2 (needs a > 2)");
    const double a = 2.0 * var / (var - mean * mean);
    return {a, mean * (a - 1.0)};
}

} // namespace hiersparse
