#pragma once
#include <hiersparse/model/prior.hpp>

#include <cmath>

namespace hiersparse {

namespace detail {

inline void require_finite(const Vector& x, const char* what)
{
    for (Index k = 0; k < x.size(); ++k)
        require_domain(std::isfinite(x(k)), std::string(what) + " has a non-finite entry");
}

inline double abs_pow(double x, double q)
{
    const double ax = std::abs(x);
    if (q == 1.0) return ax;
    if (q == 2.0) return ax * ax;
    return std::pow(ax, q);
}

} // namespace detail

/// w_j = (a_j + 1/q) / (b_j + |beta_j|^q)
inline WeightSet coordinate_weights(const Vector& beta, const PriorSpec& prior)
{
    detail::require_config(prior.variant() == PriorVariant::PerCoordinate,
                           "coordinate_weights needs a per-coordinate prior");
    detail::require_dim(beta.size() == prior.a().size(), "beta length does not match prior");
    detail::require_finite(beta, "beta");
    const double q = prior.q();
    Vector w(beta.size());
    for (Index j = 0; j < beta.size(); ++j)
        w(j) = (prior.a()(j) + 1.0 / q) / (prior.b()(j) + detail::abs_pow(beta(j), q));
    return WeightSet::from_vector(PriorVariant::PerCoordinate, std::move(w));
}

/// w_i = (a_i + n_i) / (||beta_{G_i}||_2 + b_i)
inline WeightSet group_weights(const Vector& beta, const PriorSpec& prior)
{
    detail::require_config(prior.variant() == PriorVariant::Grouped && prior.has_groups(),
                           "group_weights needs a grouped prior with a group structure");
    const auto& groups = prior.groups();
    detail::require_dim(beta.size() == groups.num_coordinates(), "beta length does not match groups");
    detail::require_finite(beta, "beta");
    Vector w(groups.num_groups());
    for (Index g = 0; g < groups.num_groups(); ++g) {
        double sq = 0.0;
        for (Index j : groups.members(g)) sq += beta(j) * beta(j);
        w(g) = (prior.a()(g) + static_cast<double>(groups.size(g))) / (std::sqrt(sq) + prior.b()(g));
    }
    return WeightSet::from_vector(PriorVariant::Grouped, std::move(w));
}

/// w_i = (a_i + n_i/q) / (b_i + sum_{j in G_i} |beta_j|^q)
inline WeightSet shared_group_weights(const Vector& beta, const PriorSpec& prior)
{
    detail::require_config(prior.variant() == PriorVariant::SharedGroups && prior.has_groups(),
                           "shared_group_weights needs a shared-scale prior with a group structure");
    const double q = prior.q();
    detail::require_domain(q > 0.0, "exponent q must be positive");
    const auto& groups = prior.groups();
    detail::require_dim(beta.size() == groups.num_coordinates(), "beta length does not match groups");
    detail::require_finite(beta, "beta");
    Vector w(groups.num_groups());
    for (Index g = 0; g < groups.num_groups(); ++g) {
        double s = 0.0;
        for (Index j : groups.members(g)) s += detail::abs_pow(beta(j), q);
        w(g) = (prior.a()(g) + static_cast<double>(groups.size(g)) / q) / (prior.b()(g) + s);
    }
    return WeightSet::from_vector(PriorVariant::SharedGroups, std::move(w));
}

/// W_ij = (a_ij + 1) / (b_ij + |Omega_ij|), diagonal included.
inline WeightSet precision_weights(const Matrix& omega, const PriorSpec& prior)
{
    detail::require_config(prior.variant() == PriorVariant::Matrix, "precision_weights needs a matrix prior");
    const Index p = prior.dimension();
    detail::require_dim(omega.rows() == p && omega.cols() == p, "omega size does not match prior");
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) {
            detail::require_domain(std::isfinite(omega(i, j)) && std::isfinite(omega(j, i)),
                                   "omega has a non-finite entry");
            detail::require_domain(std::abs(omega(i, j) - omega(j, i)) <= 1e-10, "omega is not symmetric");
        }
    Matrix w(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) {
            const double mag = 0.5 * (std::abs(omega(i, j)) + std::abs(omega(j, i)));
            w(i, j) = (prior.matrix_a(i, j) + 1.0) / (prior.matrix_b(i, j) + mag);
            w(j, i) = w(i, j);
        }
    return WeightSet::from_matrix(std::move(w));
}

/// Expected noise precision v = (a_delta + (n-1)/2) / (b_delta + rss/2).
inline double noise_weight(double rss, Index n, const InverseGammaVariance& noise)
{
    detail::require_domain(n >= 2, "noise_weight needs n >= 2");
    detail::require_domain(std::isfinite(rss) && rss >= 0.0, "residual sum of squares must be nonnegative");
    return (noise.a + 0.5 * static_cast<double>(n - 1)) / (noise.b + 0.5 * rss);
}

} // namespace hiersparse
