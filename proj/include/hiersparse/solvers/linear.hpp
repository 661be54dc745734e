#pragma once
#include <hiersparse/solvers/dataset.hpp>
#include <hiersparse/solvers/options.hpp>
#include <hiersparse/solvers/prox.hpp>

#include <cmath>
#include <optional>

namespace hiersparse {

/// Sufficient statistics of a Gaussian linear model: X'X, X'y, y'y.
struct LinearGram {
    Matrix gram;
    Vector xty;
    double yty = 0.0;
    Index n = 0;

    explicit LinearGram(const Dataset& data)
        : gram(data.X.transpose() * data.X), xty(data.X.transpose() * data.y), yty(data.y.squaredNorm()),
          n(data.n())
    {
    }

    Index p() const { return gram.rows(); }

    double rss(const Vector& beta) const
    {
        return std::max(0.0, yty - 2.0 * xty.dot(beta) + beta.dot(gram * beta));
    }
};

namespace detail {

inline void require_penalty(const Vector& w, Index p)
{
    require_dim(w.size() == p, "penalty weight length does not match p");
    for (Index j = 0; j < p; ++j)
        require_domain(std::isfinite(w(j)) && w(j) >= 0.0, "penalty weights must be finite and nonnegative");
}

inline double weighted_l1_objective(const LinearGram& g, const Vector& w, double v, const Vector& beta)
{
    return 0.5 * v * g.rss(beta) + w.dot(beta.cwiseAbs());
}

} // namespace detail

/**
 * Cyclic coordinate descent for
 *   min_beta (v/2)||y - X beta||^2 + sum_j w_j |beta_j|
 * on precomputed sufficient statistics. Sweeps run j = 0..p-1 and stop once
 * a full sweep moves no coordinate by more than `opts.tol`.
 */
inline SolveReport weighted_l1_linear(const LinearGram& g, const Vector& w, double v, const SolverOptions& opts,
                                      const std::optional<Vector>& init = std::nullopt)
{
    const Index p = g.p();
    detail::require_penalty(w, p);
    detail::require_domain(std::isfinite(v) && v > 0.0, "noise precision v must be positive");
    SolveReport rep;
    rep.coef = init ? *init : Vector::Zero(p);
    detail::require_dim(rep.coef.size() == p, "initial coefficient length does not match p");

    Vector& beta = rep.coef;
    Vector gb = g.gram * beta;
    if (opts.record_objective) rep.objective.push_back(detail::weighted_l1_objective(g, w, v, beta));

    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        double max_change = 0.0;
        for (Index j = 0; j < p; ++j) {
            const double gjj = g.gram(j, j);
            double updated = 0.0;
            if (gjj > 0.0) {
                const double partial = g.xty(j) - gb(j) + gjj * beta(j);
                updated = soft_threshold(v * partial, w(j)) / (v * gjj);
            }
            const double delta = updated - beta(j);
            if (delta != 0.0) {
                gb += delta * g.gram.col(j);
                beta(j) = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        rep.iterations = sweep;
        rep.last_change = max_change;
        if (opts.record_objective) rep.objective.push_back(detail::weighted_l1_objective(g, w, v, beta));
        if (max_change < opts.tol) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

inline SolveReport weighted_l1_linear(const Dataset& data, const Vector& w, double v, const SolverOptions& opts,
                                      const std::optional<Vector>& init = std::nullopt)
{
    return weighted_l1_linear(LinearGram(data), w, v, opts, init);
}

/// Closed-form minimizer of (v/2)||y - X beta||^2 + sum_j w_j beta_j^2.
inline Vector weighted_l2_linear(const LinearGram& g, const Vector& w, double v)
{
    detail::require_penalty(w, g.p());
    detail::require_domain(std::isfinite(v) && v > 0.0, "noise precision v must be positive");
    Matrix system = v * g.gram;
    system.diagonal() += 2.0 * w;
    Eigen::LLT<Matrix> llt(system);
    if (llt.info() != Eigen::Success) throw NumericalError("ridge system is singular");
    Vector beta = llt.solve(v * g.xty);
    if (!beta.allFinite()) throw NumericalError("ridge system is singular");
    return beta;
}

inline Vector weighted_l2_linear(const Dataset& data, const Vector& w, double v)
{
    return weighted_l2_linear(LinearGram(data), w, v);
}

} // namespace hiersparse
