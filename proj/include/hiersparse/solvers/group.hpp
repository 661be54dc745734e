#pragma once
#include <hiersparse/model/prior.hpp>
#include <hiersparse/solvers/linear.hpp>
#include <hiersparse/solvers/proximal_gradient.hpp>

#include <optional>

namespace hiersparse {

/// (v/2)||y - X beta||^2 evaluated through the Gram matrix.
struct GaussianLoss {
    const LinearGram& g;
    double v;

    double value(const Vector& beta) const { return 0.5 * v * g.rss(beta); }

    double value_and_gradient(const Vector& beta, Vector& grad) const
    {
        const Vector gb = g.gram * beta;
        grad = v * (gb - g.xty);
        return 0.5 * v * std::max(0.0, g.yty - 2.0 * g.xty.dot(beta) + beta.dot(gb));
    }
};

/// sum_i w_i ||beta_{G_i}||_2
struct GroupL2Penalty {
    const GroupStructure& groups;
    const Vector& w;

    double value(const Vector& x) const
    {
        double total = 0.0;
        for (Index g = 0; g < groups.num_groups(); ++g) {
            double sq = 0.0;
            for (Index j : groups.members(g)) sq += x(j) * x(j);
            total += w(g) * std::sqrt(sq);
        }
        return total;
    }

    Vector prox(const Vector& z, double s) const
    {
        Vector out(z.size());
        for (Index g = 0; g < groups.num_groups(); ++g) {
            const auto& members = groups.members(g);
            Vector block(static_cast<Index>(members.size()));
            for (std::size_t k = 0; k < members.size(); ++k) block(static_cast<Index>(k)) = z(members[k]);
            const Vector shrunk = group_soft_threshold(block, s * w(g));
            for (std::size_t k = 0; k < members.size(); ++k) out(members[k]) = shrunk(static_cast<Index>(k));
        }
        return out;
    }
};

/**
 * min_beta (v/2)||y - X beta||^2 + sum_i w_i ||beta_{G_i}||_2
 * by proximal gradient with the group soft-threshold prox.
 */
inline SolveReport weighted_group_linear(const LinearGram& g, const GroupStructure& groups, const Vector& w, double v,
                                         const SolverOptions& opts, const std::optional<Vector>& init = std::nullopt)
{
    detail::require_dim(groups.num_coordinates() == g.p(), "group structure does not match p");
    detail::require_penalty(w, groups.num_groups());
    detail::require_domain(std::isfinite(v) && v > 0.0, "noise precision v must be positive");
    Vector x0 = init ? *init : Vector::Zero(g.p());
    detail::require_dim(x0.size() == g.p(), "initial coefficient length does not match p");
    return minimize_composite(GaussianLoss{g, v}, GroupL2Penalty{groups, w}, std::move(x0), opts);
}

inline SolveReport weighted_group_linear(const Dataset& data, const GroupStructure& groups, const Vector& w, double v,
                                         const SolverOptions& opts, const std::optional<Vector>& init = std::nullopt)
{
    return weighted_group_linear(LinearGram(data), groups, w, v, opts, init);
}

} // namespace hiersparse
