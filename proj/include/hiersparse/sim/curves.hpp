#pragma once
#include <hiersparse/model/density.hpp>
#include <hiersparse/solvers/prox.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace hiersparse::sim {

enum class PenaltyFamily {
    /// w |beta|
    Lasso,
    /// (a + 1) log(1 + |beta| / b), the negative log of the q = 1 marginal up to a constant
    Hal,
    /// (a + 1/2) log(1 + beta^2 / b), the q = 2 marginal
    Har,
};

inline const char* to_string(PenaltyFamily f)
{
    switch (f) {
    case PenaltyFamily::Lasso: return "lasso";
    case PenaltyFamily::Hal: return "hal";
    case PenaltyFamily::Har: return "har";
    }
    return "unknown";
}

struct PenaltySettings {
    PenaltyFamily family = PenaltyFamily::Hal;
    /// Lasso weight (1/tau).
    double w = 1.0;
    double a = 1.0;
    double b = 1.0;

    void validate() const
    {
        if (family == PenaltyFamily::Lasso) {
            hiersparse::detail::require_domain(w >= 0.0 && std::isfinite(w), "lasso weight must be nonnegative and finite");
        } else {
            hiersparse::detail::require_domain(a > 0.0 && std::isfinite(a), "a must be positive and finite");
            hiersparse::detail::require_domain(b > 0.0 && std::isfinite(b), "b must be positive and finite");
        }
    }

    double q() const { return family == PenaltyFamily::Har ? 2.0 : 1.0; }

    /// Penalty up to an additive constant, zero at the origin.
    double value(double beta) const
    {
        const double x = std::abs(beta);
        switch (family) {
        case PenaltyFamily::Lasso: return w * x;
        case PenaltyFamily::Hal: return (a + 1.0) * std::log1p(x / b);
        case PenaltyFamily::Har: return (a + 0.5) * std::log1p(x * x / b);
        }
        return 0.0;
    }

    /// Derivative for beta > 0.
    double slope(double beta) const
    {
        switch (family) {
        case PenaltyFamily::Lasso: return w;
        case PenaltyFamily::Hal: return (a + 1.0) / (b + beta);
        case PenaltyFamily::Har: return (2.0 * a + 1.0) * beta / (b + beta * beta);
        }
        return 0.0;
    }
};

struct ThresholdPoint {
    double z = 0.0;
    double beta_hat = 0.0;
};

namespace detail {

/// Global minimizer over beta >= 0 of (1/2)(z - beta)^2 + pen(beta), for z >= 0.
inline double threshold_nonnegative(const PenaltySettings& pen, double z, double grid_step)
{
    auto objective = [&](double beta) { return 0.5 * (z - beta) * (z - beta) + pen.value(beta); };
    auto stationarity = [&](double beta) { return beta - z + pen.slope(beta); };

    double best = 0.0;
    double best_value = objective(0.0);
    if (z <= 0.0) return 0.0;

    // Any positive minimizer lies in (0, z] because the penalty is nondecreasing in |beta|.
    const auto cells = static_cast<long>(std::ceil(z / grid_step));
    const double h = z / static_cast<double>(cells);
    double lo = 0.0;
    double g_lo = stationarity(lo);
    for (long k = 1; k <= cells; ++k) {
        const double hi = k == cells ? z : h * static_cast<double>(k);
        const double g_hi = stationarity(hi);
        // A local minimum of the objective is where the derivative crosses from - to +.
        if (g_lo < 0.0 && g_hi >= 0.0) {
            double l = lo;
            double r = hi;
            for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, r); ++it) {
                const double m = 0.5 * (l + r);
                (stationarity(m) < 0.0 ? l : r) = m;
            }
            const double root = 0.5 * (l + r);
            const double v = objective(root);
            if (v < best_value) {
                best_value = v;
                best = root;
            }
        }
        lo = hi;
        g_lo = g_hi;
    }
    return best;
}

} // namespace detail

/**
 * beta_hat(z) = argmin_beta (1/2)(z - beta)^2 + pen(beta) for each z.
 *
 * The lasso case is the exact soft threshold. Otherwise stationary points on
 * (0, |z|] are bracketed on a grid no coarser than `grid_step`, refined by
 * bisection, and compared against beta = 0.
 */
inline std::vector<ThresholdPoint> threshold_curve(const PenaltySettings& pen, const std::vector<double>& z_grid,
                                                   double grid_step = 1e-4)
{
    pen.validate();
    hiersparse::detail::require_domain(grid_step > 0.0 && grid_step <= 1e-4, "grid step must lie in (0, 1e-4]");
    std::vector<ThresholdPoint> out;
    out.reserve(z_grid.size());
    for (double z : z_grid) {
        hiersparse::detail::require_domain(std::isfinite(z), "threshold grid values must be finite");
        double beta;
        if (pen.family == PenaltyFamily::Lasso) {
            beta = soft_threshold(z, pen.w);
        } else {
            beta = detail::threshold_nonnegative(pen, std::abs(z), grid_step);
            if (z < 0.0) beta = -beta;
        }
        out.push_back({z, beta});
    }
    return out;
}

struct ContourPoint {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double neg_log_density = 0.0;
};

/// -log p(beta1) - log p(beta2) on the product grid (beta1 outer, beta2 inner).
inline std::vector<ContourPoint> penalty_contour(const PenaltySettings& pen, const std::vector<double>& grid1,
                                                 const std::vector<double>& grid2)
{
    pen.validate();
    std::vector<ContourPoint> out;
    out.reserve(grid1.size() * grid2.size());
    const PriorSpec prior = pen.family == PenaltyFamily::Lasso
                                ? PriorSpec::per_coordinate(2, HyperParams{1.0, 1.0, {}})
                                : PriorSpec::per_coordinate(2, HyperParams{pen.a, pen.b, {}}, pen.q());
    for (double x : grid1)
        for (double y : grid2) {
            double v;
            if (pen.family == PenaltyFamily::Lasso) {
                // Laplace with scale tau = 1/w: log(2 tau) + |beta| / tau
                hiersparse::detail::require_domain(pen.w > 0.0, "lasso contour needs a positive weight");
                v = 2.0 * std::log(2.0 / pen.w) + pen.w * (std::abs(x) + std::abs(y));
            } else {
                Vector point(2);
                point << x, y;
                v = -log_marginal_prior(point, prior);
            }
            out.push_back({x, y, v});
        }
    return out;
}

} // namespace hiersparse::sim
