#pragma once
#include <hiersparse/em/fit.hpp>
#include <hiersparse/sim/generate.hpp>
#include <hiersparse/sim/metrics.hpp>
#include <hiersparse/sim/rng.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hiersparse::sim {

enum class ModelClass { Linear, Logistic, Group, Precision };

inline const char* to_string(ModelClass m)
{
    switch (m) {
    case ModelClass::Linear: return "linear";
    case ModelClass::Logistic: return "logistic";
    case ModelClass::Group: return "group";
    case ModelClass::Precision: return "precision";
    }
    return "unknown";
}

/// How each replication is fitted.
enum class Method {
    /// EM with the hierarchical prior.
    Hierarchical,
    /// Single solve with constant penalty weights 1/tau (lasso / group lasso / graphical lasso).
    FixedScale,
};

/// Generating noise: fixed standard deviation, or variance drawn per replication from IG(a, b).
struct NoiseSpec {
    bool random = false;
    double delta = 1.0;
    double a = 1.0;
    double b = 1.0;
};

struct ExperimentConfig {
    std::string setting;
    ModelClass model = ModelClass::Linear;
    Vector beta_true;
    Matrix omega_true;
    Index n = 40;
    double rho = 0.5;
    NoiseSpec noise;
    Method method = Method::Hierarchical;
    /// Hierarchical settings; override slots are 0-based coordinates / groups / packed entries.
    HyperParams hyper;
    /// Fixed-scale settings: weight 1/tau, with per-slot tau overrides.
    double tau = 1.0;
    std::map<Index, double> tau_overrides;
    std::optional<GroupStructure> groups;
    bool jeffreys = false;
    int replications = 100;
    std::uint64_t seed = 1;
    SolverOptions solver;

    Index p() const { return model == ModelClass::Precision ? omega_true.rows() : beta_true.size(); }

    void validate() const
    {
        hiersparse::detail::require_config(replications >= 1, "replications must be at least 1");
        hiersparse::detail::require_domain(rho > -1.0 && rho < 1.0, "rho must lie in (-1, 1)");
        if (model == ModelClass::Precision) {
            hiersparse::detail::require_dim(omega_true.rows() == omega_true.cols() && omega_true.rows() >= 1,
                                "true precision must be square");
            hiersparse::detail::require_domain(n > omega_true.rows() + 1, "precision experiments need n > p + 1");
        } else {
            hiersparse::detail::require_dim(beta_true.size() >= 1, "true coefficients are empty");
            hiersparse::detail::require_dim(n >= 2, "experiments need n >= 2");
        }
        if (model == ModelClass::Group)
            hiersparse::detail::require_config(groups && groups->num_coordinates() == beta_true.size(),
                                   "group experiment needs a group structure over all coefficients");
        if (method == Method::FixedScale) {
            hiersparse::detail::require_domain(tau > 0.0, "tau must be positive");
            for (const auto& [slot, t] : tau_overrides) hiersparse::detail::require_domain(t > 0.0, "tau must be positive");
        }
    }
};

struct MetricsSummary {
    std::string setting;
    Index n = 0;
    double avg_error = 0.0;
    double pct_correct = 0.0;
    double avg_fp = 0.0;
    double avg_fn = 0.0;
    int nonconverged = 0;
    int replications = 0;
    std::uint64_t seed = 0;
};

struct ReplicationOutcome {
    SupportScore score;
    bool converged = true;
};

namespace detail {

inline Vector fixed_scale_weights(const ExperimentConfig& cfg, Index length)
{
    Vector w = Vector::Constant(length, 1.0 / cfg.tau);
    for (const auto& [slot, t] : cfg.tau_overrides) {
        hiersparse::detail::require_dim(slot >= 0 && slot < length, "tau override index out of range");
        w(slot) = 1.0 / t;
    }
    return w;
}

inline Matrix fixed_scale_matrix(const ExperimentConfig& cfg, Index p)
{
    const Vector packed = fixed_scale_weights(cfg, p * (p + 1) / 2);
    Matrix w(p, p);
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) w(i, j) = w(j, i) = packed(packed_upper_index(i, j, p));
    return w;
}

} // namespace detail

/// Generate, fit and score replication `rep` (0-based).
inline ReplicationOutcome run_replication(const ExperimentConfig& cfg, int rep)
{
    CounterRng rng = CounterRng::substream(cfg.seed, static_cast<std::uint64_t>(rep));
    ReplicationOutcome out;

    if (cfg.model == ModelClass::Precision) {
        const Index p = cfg.omega_true.rows();
        const GaussianSample sample = gen_gaussian_samples(cfg.omega_true, cfg.n, rng);
        FitProblem problem = FitProblem::precision(sample.S, cfg.n, PriorSpec::matrix(p, cfg.hyper));
        const FitResult fit = cfg.method == Method::Hierarchical
                                  ? fit_map(problem, cfg.solver)
                                  : fit_fixed_penalty(problem, detail::fixed_scale_matrix(cfg, p), cfg.solver);
        out.converged = fit.converged;
        out.score = support_metrics(fit.precision->omega, cfg.omega_true);
        return out;
    }

    const Index p = cfg.beta_true.size();
    double variance = cfg.noise.delta * cfg.noise.delta;
    if (cfg.noise.random) variance = rng.inverse_gamma(cfg.noise.a, cfg.noise.b);
    Matrix X = gen_correlated_design(cfg.n, p, cfg.rho, rng);

    FitResult fit;
    if (cfg.model == ModelClass::Logistic) {
        Vector y = gen_logistic_responses(X, cfg.beta_true, rng);
        FitProblem problem = FitProblem::logistic(Dataset::logistic(std::move(X), std::move(y)),
                                                  PriorSpec::per_coordinate(p, cfg.hyper), cfg.jeffreys);
        fit = cfg.method == Method::Hierarchical ? fit_map(problem, cfg.solver)
                                                 : fit_fixed_penalty(problem, detail::fixed_scale_weights(cfg, p),
                                                                     cfg.solver);
    } else {
        Vector y = gen_linear_responses(X, cfg.beta_true, std::sqrt(variance), rng);
        Dataset data = Dataset::linear(std::move(X), std::move(y));
        const NoiseModel noise = cfg.noise.random && cfg.method == Method::Hierarchical
                                     ? NoiseModel::inverse_gamma(cfg.noise.a, cfg.noise.b)
                                     : NoiseModel::fixed(variance);
        if (cfg.model == ModelClass::Group) {
            FitProblem problem =
                FitProblem::group_linear(std::move(data), PriorSpec::grouped(*cfg.groups, cfg.hyper), noise);
            fit = cfg.method == Method::Hierarchical
                      ? fit_map(problem, cfg.solver)
                      : fit_fixed_penalty(problem, detail::fixed_scale_weights(cfg, cfg.groups->num_groups()),
                                          cfg.solver);
        } else {
            FitProblem problem = FitProblem::linear(std::move(data), PriorSpec::per_coordinate(p, cfg.hyper), noise);
            fit = cfg.method == Method::Hierarchical ? fit_map(problem, cfg.solver)
                                                     : fit_fixed_penalty(problem, detail::fixed_scale_weights(cfg, p),
                                                                         cfg.solver);
        }
    }
    out.converged = fit.converged;
    out.score = support_metrics(fit.coef, cfg.beta_true);
    return out;
}

/**
 * Runs every replication and aggregates. Replication r draws from
 * CounterRng::substream(seed, r), and outcomes are reduced in replication
 * order, so the summary does not depend on `threads`.
 */
inline MetricsSummary run_replications(const ExperimentConfig& cfg, unsigned threads = 1)
{
    cfg.validate();
    const int reps = cfg.replications;
    std::vector<ReplicationOutcome> outcomes(static_cast<std::size_t>(reps));
    std::vector<std::string> failures(static_cast<std::size_t>(reps));

    auto work = [&](int r) {
        try {
            outcomes[static_cast<std::size_t>(r)] = run_replication(cfg, r);
        } catch (const Error& e) {
            failures[static_cast<std::size_t>(r)] = e.what();
        }
    };

    threads = std::max(1u, std::min(threads, static_cast<unsigned>(reps)));
    if (threads == 1) {
        for (int r = 0; r < reps; ++r) work(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int r = next++; r < reps; r = next++) work(r);
            });
        for (auto& th : pool) th.join();
    }
    for (int r = 0; r < reps; ++r)
        if (!failures[static_cast<std::size_t>(r)].empty())
            throw Error("replication " + std::to_string(r + 1) + " failed: " + failures[static_cast<std::size_t>(r)]);

    MetricsSummary s;
    s.setting = cfg.setting;
    s.n = cfg.n;
    s.replications = reps;
    s.seed = cfg.seed;
    double err = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    int correct = 0;
    for (const auto& o : outcomes) {
        err += o.score.error;
        fp += static_cast<double>(o.score.false_positives);
        fn += static_cast<double>(o.score.false_negatives);
        correct += o.score.correct ? 1 : 0;
        s.nonconverged += o.converged ? 0 : 1;
    }
    const double R = static_cast<double>(reps);
    s.avg_error = err / R;
    s.avg_fp = fp / R;
    s.avg_fn = fn / R;
    s.pct_correct = 100.0 * static_cast<double>(correct) / R;
    return s;
}

} // namespace hiersparse::sim
