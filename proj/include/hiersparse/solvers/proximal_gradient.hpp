#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/solvers/options.hpp>
#include <hiersparse/solvers/prox.hpp>

#include <cmath>
#include <concepts>
#include <limits>

namespace hiersparse {

/// Differentiable part of a composite objective.
template <class F>
concept SmoothFunction = requires(const F& f, const Vector& x, Vector& g) {
    { f.value(x) } -> std::convertible_to<double>;
    { f.value_and_gradient(x, g) } -> std::convertible_to<double>;
};

/// Nonsmooth part with a cheap proximal map.
template <class P>
concept ProximablePenalty = requires(const P& h, const Vector& x, double s) {
    { h.value(x) } -> std::convertible_to<double>;
    { h.prox(x, s) } -> std::convertible_to<Vector>;
};

/**
 * Minimizes f(x) + h(x) by accelerated proximal gradient with a monotone
 * safeguard: a candidate is accepted only if it does not increase f + h,
 * otherwise momentum restarts from the current iterate. The step starts at
 * `opts.initial_step` and is multiplied by `opts.backtrack_factor` until
 *   f(z) <= f(y) + <grad f(y), z - y> + ||z - y||^2 / (2 s).
 * Converged when an accepted prox step moves the iterate by less than `opts.tol`
 * in sup norm. If backtracking exhausts `opts.max_backtracks` the solve stops
 * unconverged at the last accepted iterate.
 */
template <SmoothFunction F, ProximablePenalty P>
SolveReport minimize_composite(const F& f, const P& h, Vector x, const SolverOptions& opts)
{
    SolveReport rep;
    Vector grad(x.size());
    double fx = f.value(x);
    if (!std::isfinite(fx)) throw DomainError("starting point has a non-finite objective");
    double obj_x = fx + h.value(x);
    if (opts.record_objective) rep.objective.push_back(obj_x);

    Vector y = x;
    double momentum = 1.0;
    double step = opts.initial_step;
    bool plain = true;

    for (int it = 1; it <= opts.max_iter; ++it) {
        const double fy = f.value_and_gradient(y, grad);
        Vector z;
        double fz = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int tries = 0; tries <= opts.max_backtracks; ++tries) {
            z = h.prox(y - step * grad, step);
            const Vector d = z - y;
            fz = f.value(z);
            const double bound = fy + grad.dot(d) + d.squaredNorm() / (2.0 * step);
            if (std::isfinite(fz) && fz <= bound + 1e-12 * std::abs(fy)) {
                found = true;
                break;
            }
            step *= opts.backtrack_factor;
        }
        // No acceptable step: the smooth part is too ill-conditioned here (for
        // example an objective unbounded below); report non-convergence.
        if (!found) {
            rep.iterations = it;
            rep.line_search_failed = true;
            break;
        }
        const double change = (z - y).cwiseAbs().maxCoeff();
        const double obj_z = fz + h.value(z);
        rep.iterations = it;
        rep.last_change = change;

        // A step taken from x itself is a plain proximal gradient step, which the
        // line search makes monotone up to rounding, so it is always accepted.
        if (obj_z <= obj_x + 1e-13 * std::max(1.0, std::abs(obj_x)) || plain) {
            // Momentum is dropped when it points against the latest prox step.
            if ((y - z).dot(z - x) > 0.0) momentum = 1.0;
            const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
            y = z + ((momentum - 1.0) / next) * (z - x);
            x = std::move(z);
            obj_x = obj_z;
            momentum = next;
            plain = false;
            if (opts.record_objective) rep.objective.push_back(obj_x);
            if (change < opts.tol) {
                rep.converged = true;
                break;
            }
        } else {
            y = x;
            momentum = 1.0;
            plain = true;
        }
    }
    rep.coef = std::move(x);
    return rep;
}

/// sum_j w_j |x_j|
struct WeightedL1Penalty {
    const Vector& w;
    double value(const Vector& x) const { return w.dot(x.cwiseAbs()); }
    Vector prox(const Vector& z, double s) const
    {
        Vector out(z.size());
        for (Index j = 0; j < z.size(); ++j) out(j) = soft_threshold(z(j), s * w(j));
        return out;
    }
};

/// sum_j w_j x_j^2
struct WeightedL2Penalty {
    const Vector& w;
    double value(const Vector& x) const { return w.dot(x.cwiseAbs2()); }
    Vector prox(const Vector& z, double s) const
    {
        return z.cwiseQuotient((Vector::Ones(z.size()) + 2.0 * s * w));
    }
};

} // namespace hiersparse
