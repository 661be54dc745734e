#pragma once
#include <hiersparse/em/objective.hpp>
#include <hiersparse/em/problem.hpp>
#include <hiersparse/model/weights.hpp>
#include <hiersparse/solvers/glasso.hpp>
#include <hiersparse/solvers/group.hpp>
#include <hiersparse/solvers/linear.hpp>
#include <hiersparse/solvers/logistic.hpp>

#include <optional>
#include <string>

namespace hiersparse {

namespace detail {

inline Vector least_squares_start(const Dataset& data)
{
    return data.X.completeOrthogonalDecomposition().solve(data.y);
}

inline Vector default_coefficient_start(const FitProblem& problem)
{
    StartPoint start = problem.start;
    if (start == StartPoint::Auto)
        start = problem.gaussian_likelihood() ? StartPoint::LeastSquares : StartPoint::Zero;
    if (start == StartPoint::LeastSquares) {
        require_config(problem.gaussian_likelihood(), "least-squares start needs a Gaussian likelihood");
        return least_squares_start(problem.data);
    }
    return Vector::Zero(problem.data.p());
}

inline Matrix default_precision_start(const Matrix& S)
{
    Matrix omega = Matrix::Zero(S.rows(), S.cols());
    for (Index k = 0; k < S.rows(); ++k) omega(k, k) = 1.0 / (S(k, k) > 0.0 ? S(k, k) : 1e-6);
    return omega;
}

/// E-step for the regression variants.
inline WeightSet regression_weights(const FitProblem& problem, const Vector& beta)
{
    switch (problem.prior.variant()) {
    case PriorVariant::PerCoordinate: return coordinate_weights(beta, problem.prior);
    case PriorVariant::Grouped: return group_weights(beta, problem.prior);
    case PriorVariant::SharedGroups: return shared_group_weights(beta, problem.prior);
    case PriorVariant::Matrix: break;
    }
    throw ConfigError("matrix prior in a regression problem");
}

/// Inner solves run ten times tighter than the outer test so that solver noise cannot keep the iterate moving.
inline SolverOptions inner_options(const SolverOptions& opts)
{
    SolverOptions inner = opts;
    inner.tol = 0.1 * opts.tol;
    return inner;
}

inline double fixed_noise_precision(const FitProblem& problem)
{
    return problem.noise.is_fixed() ? 1.0 / problem.noise.as_fixed().variance : 1.0;
}

/// M-step: weighted penalized solve warm-started at `beta`.
inline SolveReport regression_m_step(const FitProblem& problem, const std::optional<LinearGram>& gram,
                                     const WeightSet& weights, double v, const Vector& beta,
                                     const SolverOptions& opts)
{
    const bool ridge = problem.prior.q() == 2.0;
    switch (problem.model) {
    case ModelKind::Logistic: {
        const Vector w = weights.values();
        return ridge ? weighted_l2_logistic(problem.data, w, problem.jeffreys, opts, beta)
                     : weighted_l1_logistic(problem.data, w, problem.jeffreys, opts, beta);
    }
    case ModelKind::GroupLinear:
        return weighted_group_linear(*gram, problem.prior.groups(), weights.values(), v, opts, beta);
    case ModelKind::LinearFixedNoise:
    case ModelKind::LinearRandomNoise:
    case ModelKind::SharedLinear: {
        const Vector w = weights.per_coordinate(problem.prior.has_groups() ? &problem.prior.groups() : nullptr);
        if (ridge) {
            SolveReport rep;
            rep.coef = weighted_l2_linear(*gram, w, v);
            rep.converged = true;
            rep.iterations = 1;
            return rep;
        }
        return weighted_l1_linear(*gram, w, v, opts, beta);
    }
    case ModelKind::Precision: break;
    }
    throw ConfigError("precision problem in regression M-step");
}

inline FitResult fit_regression(const FitProblem& problem, const SolverOptions& opts, Vector beta)
{
    detail::require_dim(beta.size() == problem.data.p(), "initial coefficient length does not match p");
    detail::require_finite(beta, "initial coefficients");
    std::optional<LinearGram> gram;
    if (problem.gaussian_likelihood()) gram.emplace(problem.data);

    FitResult res;
    res.objective_trace.push_back(penalized_objective(problem, beta));
    res.noise_precision = fixed_noise_precision(problem);

    for (int it = 1; it <= opts.outer_max_iter; ++it) {
        const WeightSet weights = regression_weights(problem, beta);
        double v = fixed_noise_precision(problem);
        if (problem.gaussian_likelihood() && !problem.noise.is_fixed())
            v = noise_weight(gram->rss(beta), static_cast<Index>(gaussian_dof(problem.data)) + 1,
                             problem.noise.as_inverse_gamma());
        res.noise_precision = v;

        SolveReport rep = regression_m_step(problem, gram, weights, v, beta, inner_options(opts));
        const double change = (rep.coef - beta).cwiseAbs().maxCoeff();
        beta = std::move(rep.coef);
        res.outer_iterations = it;
        res.objective_trace.push_back(penalized_objective(problem, beta));
        if (!rep.converged) {
            res.status = FitStatus::InnerNonConvergence;
            res.message = "inner solver did not converge in outer iteration " + std::to_string(it) + " after " +
                          std::to_string(rep.iterations) + " iterations (" +
                          (rep.line_search_failed ? std::string("line search failed")
                                                  : "last change " + detail::format_sci(rep.last_change)) +
                          ")";
            break;
        }
        if (change < opts.tol) {
            res.status = FitStatus::Converged;
            break;
        }
    }
    if (res.status == FitStatus::OuterIterationLimit)
        res.message = "no convergence within " + std::to_string(opts.outer_max_iter) + " outer iterations";
    res.converged = res.status == FitStatus::Converged;
    res.weights_final = regression_weights(problem, beta);
    res.support = support_of(beta);
    res.coef = std::move(beta);
    return res;
}

inline FitResult fit_precision(const FitProblem& problem, const SolverOptions& opts, Matrix omega)
{
    const Index p = problem.sample_cov.rows();
    detail::require_dim(omega.rows() == p && omega.cols() == p, "initial precision size does not match problem");
    FitResult res;
    res.objective_trace.push_back(penalized_objective(problem, omega));
    PrecisionEstimate est;
    est.omega = omega;
    for (int it = 1; it <= opts.outer_max_iter; ++it) {
        const WeightSet weights = precision_weights(est.omega, problem.prior);
        PrecisionEstimate next = weighted_glasso(problem.sample_cov, problem.sample_size, weights, inner_options(opts));
        const double change = (next.omega - est.omega).cwiseAbs().maxCoeff();
        const bool inner_ok = next.converged;
        est = std::move(next);
        res.outer_iterations = it;
        res.objective_trace.push_back(penalized_objective(problem, est.omega));
        if (!inner_ok) {
            res.status = FitStatus::InnerNonConvergence;
            res.message = "graphical lasso did not converge in outer iteration " + std::to_string(it);
            break;
        }
        if (change < opts.tol) {
            res.status = FitStatus::Converged;
            break;
        }
    }
    if (res.status == FitStatus::OuterIterationLimit)
        res.message = "no convergence within " + std::to_string(opts.outer_max_iter) + " outer iterations";
    res.converged = res.status == FitStatus::Converged;
    res.weights_final = precision_weights(est.omega, problem.prior);
    res.edges = edges_of(est.omega);
    res.precision = std::move(est);
    return res;
}

} // namespace detail

/**
 * Local posterior mode by EM: alternate E-step weights computed at the
 * current iterate with the matching weighted penalized M-step, until the
 * iterate moves less than `opts.tol` in sup norm or `opts.outer_max_iter`
 * iterations pass. Random-noise models refresh the noise precision together
 * with the coefficient weights.
 */
inline FitResult fit_map(const FitProblem& problem, const SolverOptions& opts,
                         const std::optional<Vector>& init = std::nullopt)
{
    if (problem.model == ModelKind::Precision) {
        detail::require_config(!init.has_value(), "precision problems take a matrix start");
        return detail::fit_precision(problem, opts, detail::default_precision_start(problem.sample_cov));
    }
    return detail::fit_regression(problem, opts, init ? *init : detail::default_coefficient_start(problem));
}

/// Precision problem started from `init`.
inline FitResult fit_map(const FitProblem& problem, const SolverOptions& opts, const Matrix& init)
{
    detail::require_config(problem.model == ModelKind::Precision, "matrix start needs a precision problem");
    return detail::fit_precision(problem, opts, init);
}

/**
 * Runs fit_map once per stage with (a, b) scaled by the stage multipliers,
 * each stage warm-started at the previous estimate. Returns the last stage's
 * result with earlier traces in `stage_traces`.
 */
inline FitResult tempered_fit(const FitProblem& problem, const TemperSchedule& schedule, const SolverOptions& opts,
                              const std::optional<Vector>& init = std::nullopt)
{
    schedule.validate();
    std::vector<std::vector<double>> traces;
    std::optional<Vector> coef_start = init;
    std::optional<Matrix> omega_start;
    FitResult res;
    for (std::size_t s = 0; s < schedule.stages.size(); ++s) {
        FitProblem stage = problem;
        stage.prior = problem.prior.scaled(schedule.stages[s].a_scale, schedule.stages[s].b_scale);
        if (problem.model == ModelKind::Precision)
            res = omega_start ? fit_map(stage, opts, *omega_start) : fit_map(stage, opts);
        else
            res = fit_map(stage, opts, coef_start);
        if (s + 1 < schedule.stages.size()) {
            traces.push_back(res.objective_trace);
            if (res.precision) omega_start = res.precision->omega;
            else coef_start = res.coef;
        }
    }
    res.stage_traces = std::move(traces);
    return res;
}

/**
 * One weighted penalized solve with constant penalty weights (the
 * fixed-scale lasso / group lasso / graphical lasso). `penalty` has length p
 * (K for group models); precision problems use `penalty_matrix`.
 */
inline FitResult fit_fixed_penalty(const FitProblem& problem, const Vector& penalty, const SolverOptions& opts)
{
    detail::require_config(problem.model != ModelKind::Precision, "use the matrix overload for precision problems");
    detail::require_config(problem.model != ModelKind::LinearRandomNoise,
                           "fixed-penalty fits need a fixed noise variance");
    FitResult res;
    std::optional<LinearGram> gram;
    if (problem.gaussian_likelihood()) gram.emplace(problem.data);
    const double v = detail::fixed_noise_precision(problem);
    SolveReport rep;
    switch (problem.model) {
    case ModelKind::Logistic: rep = weighted_l1_logistic(problem.data, penalty, problem.jeffreys, opts); break;
    case ModelKind::GroupLinear:
        rep = weighted_group_linear(*gram, problem.prior.groups(), penalty, v, opts);
        break;
    default: rep = weighted_l1_linear(*gram, penalty, v, opts); break;
    }
    res.outer_iterations = 1;
    res.converged = rep.converged;
    res.status = rep.converged ? FitStatus::Converged : FitStatus::InnerNonConvergence;
    if (!rep.converged) res.message = "inner solver did not converge";
    res.noise_precision = v;
    res.support = support_of(rep.coef);
    res.coef = std::move(rep.coef);
    return res;
}

inline FitResult fit_fixed_penalty(const FitProblem& problem, const Matrix& penalty_matrix, const SolverOptions& opts)
{
    detail::require_config(problem.model == ModelKind::Precision, "matrix penalty needs a precision problem");
    FitResult res;
    PrecisionEstimate est = weighted_glasso(problem.sample_cov, problem.sample_size, penalty_matrix, opts);
    res.outer_iterations = 1;
    res.converged = est.converged;
    res.status = est.converged ? FitStatus::Converged : FitStatus::InnerNonConvergence;
    res.edges = edges_of(est.omega);
    res.precision = std::move(est);
    return res;
}

} // namespace hiersparse
