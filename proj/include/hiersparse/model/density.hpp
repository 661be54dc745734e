#pragma once
#include <hiersparse/model/weights.hpp>

#include <cmath>
#include <numbers>

namespace hiersparse {

namespace detail {

// glibc's lgamma is accurate to a few ulp on the positive axis, which is all we need.
inline double log_gamma(double x) { return std::lgamma(x); }

/// log p(beta_j | a, b, q) for the exponential-power / inverse-gamma marginal.
inline double log_ep_marginal(double beta, double a, double b, double q)
{
    const double inv_q = 1.0 / q;
    return log_gamma(a + inv_q) - std::log(2.0) - log_gamma(a) - log_gamma(1.0 + inv_q) -
           inv_q * std::log(b) - (a + inv_q) * std::log1p(abs_pow(beta, q) / b);
}

} // namespace detail

/**
 * Exact log marginal prior density (all normalizing constants included).
 *
 * `point` is the coefficient vector for the regression variants; for the
 * Matrix variant use the overload taking a matrix.
 */
inline double log_marginal_prior(const Vector& point, const PriorSpec& prior)
{
    detail::require_finite(point, "point");
    switch (prior.variant()) {
    case PriorVariant::PerCoordinate: {
        detail::require_dim(point.size() == prior.a().size(), "point length does not match prior");
        double total = 0.0;
        for (Index j = 0; j < point.size(); ++j)
            total += detail::log_ep_marginal(point(j), prior.a()(j), prior.b()(j), prior.q());
        return total;
    }
    case PriorVariant::Grouped: {
        const auto& groups = prior.groups();
        detail::require_dim(point.size() == groups.num_coordinates(), "point length does not match groups");
        double total = 0.0;
        for (Index g = 0; g < groups.num_groups(); ++g) {
            const double a = prior.a()(g);
            const double b = prior.b()(g);
            const double n = static_cast<double>(groups.size(g));
            double sq = 0.0;
            for (Index j : groups.members(g)) sq += point(j) * point(j);
            total += -n * std::log(2.0 * b) - 0.5 * (n - 1.0) * std::log(std::numbers::pi) +
                     detail::log_gamma(n + a) - detail::log_gamma(0.5 * (n + 1.0)) - detail::log_gamma(a) -
                     (a + n) * std::log1p(std::sqrt(sq) / b);
        }
        return total;
    }
    case PriorVariant::SharedGroups: {
        const auto& groups = prior.groups();
        detail::require_dim(point.size() == groups.num_coordinates(), "point length does not match groups");
        const double q = prior.q();
        double total = 0.0;
        for (Index g = 0; g < groups.num_groups(); ++g) {
            const double a = prior.a()(g);
            const double b = prior.b()(g);
            const double n = static_cast<double>(groups.size(g));
            double s = 0.0;
            for (Index j : groups.members(g)) s += detail::abs_pow(point(j), q);
            total += detail::log_gamma(a + n / q) - n * std::log(2.0) - detail::log_gamma(a) -
                     n * detail::log_gamma(1.0 + 1.0 / q) - (n / q) * std::log(b) -
                     (a + n / q) * std::log1p(s / b);
        }
        return total;
    }
    case PriorVariant::Matrix:
        throw ConfigError("matrix prior density needs a matrix point");
    }
    throw ConfigError("unsupported prior variant");
}

/// Matrix variant: product over i <= j of the per-entry marginal.
inline double log_marginal_prior(const Matrix& omega, const PriorSpec& prior)
{
    detail::require_config(prior.variant() == PriorVariant::Matrix, "matrix point needs a matrix prior");
    const Index p = prior.dimension();
    detail::require_dim(omega.rows() == p && omega.cols() == p, "omega size does not match prior");
    double total = 0.0;
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) {
            detail::require_domain(std::isfinite(omega(i, j)), "omega has a non-finite entry");
            total += detail::log_ep_marginal(omega(i, j), prior.matrix_a(i, j), prior.matrix_b(i, j), 1.0);
        }
    return total;
}

} // namespace hiersparse
