#pragma once
#include <hiersparse/model/prior.hpp>
#include <hiersparse/solvers/dataset.hpp>
#include <hiersparse/solvers/glasso.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hiersparse {

enum class ModelKind { LinearFixedNoise, LinearRandomNoise, Logistic, GroupLinear, SharedLinear, Precision };

inline const char* to_string(ModelKind m)
{
    switch (m) {
    case ModelKind::LinearFixedNoise: return "linear_fixed_noise";
    case ModelKind::LinearRandomNoise: return "linear_random_noise";
    case ModelKind::Logistic: return "logistic";
    case ModelKind::GroupLinear: return "group_linear";
    case ModelKind::SharedLinear: return "shared_linear";
    case ModelKind::Precision: return "precision";
    }
    return "unknown";
}

/// Where the EM iteration starts when no initial point is supplied.
enum class StartPoint {
    /// Least squares for Gaussian likelihoods, zero for logistic, diag(1/S_kk) for precision.
    Auto,
    Zero,
    /// Minimum-norm least-squares solution (Gaussian likelihoods only).
    LeastSquares,
};

/**
 * A MAP estimation problem: likelihood, prior and (for linear models) noise.
 * Build with the named constructors, which check model/prior compatibility.
 */
struct FitProblem {
    ModelKind model;
    Dataset data;
    Matrix sample_cov;
    Index sample_size = 0;
    PriorSpec prior;
    NoiseModel noise = NoiseModel::fixed(1.0);
    bool jeffreys = false;
    StartPoint start = StartPoint::Auto;

    /// LinearFixedNoise or LinearRandomNoise depending on `noise`.
    static FitProblem linear(Dataset data, PriorSpec prior, NoiseModel noise)
    {
        const ModelKind kind = noise.is_fixed() ? ModelKind::LinearFixedNoise : ModelKind::LinearRandomNoise;
        FitProblem fp(kind, std::move(data), std::move(prior));
        fp.noise = noise;
        fp.validate();
        return fp;
    }

    static FitProblem logistic(Dataset data, PriorSpec prior, bool jeffreys = false)
    {
        FitProblem fp(ModelKind::Logistic, std::move(data), std::move(prior));
        fp.jeffreys = jeffreys;
        fp.validate();
        return fp;
    }

    static FitProblem group_linear(Dataset data, PriorSpec prior, NoiseModel noise)
    {
        FitProblem fp(ModelKind::GroupLinear, std::move(data), std::move(prior));
        fp.noise = noise;
        fp.validate();
        return fp;
    }

    static FitProblem shared_linear(Dataset data, PriorSpec prior, NoiseModel noise)
    {
        FitProblem fp(ModelKind::SharedLinear, std::move(data), std::move(prior));
        fp.noise = noise;
        fp.validate();
        return fp;
    }

    static FitProblem precision(Matrix sample_cov, Index n, PriorSpec prior)
    {
        FitProblem fp(ModelKind::Precision, Dataset{}, std::move(prior));
        fp.sample_cov = std::move(sample_cov);
        fp.sample_size = n;
        fp.validate();
        return fp;
    }

    /// Number of coefficients, or the matrix order for Precision.
    Index dimension() const { return model == ModelKind::Precision ? sample_cov.rows() : data.p(); }

    bool gaussian_likelihood() const
    {
        return model == ModelKind::LinearFixedNoise || model == ModelKind::LinearRandomNoise ||
               model == ModelKind::GroupLinear || model == ModelKind::SharedLinear;
    }

    void validate() const
    {
        auto expect_variant = [&](PriorVariant v) {
            detail::require_config(prior.variant() == v, std::string(to_string(model)) + " model needs a " +
                                                             to_string(v) + " prior, got " +
                                                             to_string(prior.variant()));
        };
        switch (model) {
        case ModelKind::LinearFixedNoise:
            expect_variant(PriorVariant::PerCoordinate);
            detail::require_config(noise.is_fixed(), "fixed-noise model needs a fixed variance");
            break;
        case ModelKind::LinearRandomNoise:
            expect_variant(PriorVariant::PerCoordinate);
            detail::require_config(!noise.is_fixed(), "random-noise model needs an inverse-gamma variance prior");
            detail::require_domain(data.n() >= 2, "random-noise model needs n >= 2");
            break;
        case ModelKind::Logistic:
            expect_variant(PriorVariant::PerCoordinate);
            detail::require_config(data.kind == ResponseKind::Labels, "logistic model needs -1/+1 labels");
            break;
        case ModelKind::GroupLinear: expect_variant(PriorVariant::Grouped); break;
        case ModelKind::SharedLinear: expect_variant(PriorVariant::SharedGroups); break;
        case ModelKind::Precision: {
            expect_variant(PriorVariant::Matrix);
            const Index p = sample_cov.rows();
            detail::require_dim(sample_cov.cols() == p && prior.dimension() == p,
                                "sample covariance size does not match prior");
            detail::require_domain(sample_size > p + 1, "precision model requires n > p + 1");
            detail::require_symmetric(sample_cov, "sample covariance");
            return;
        }
        }
        if (model != ModelKind::Logistic)
            detail::require_config(data.kind == ResponseKind::Continuous, "linear model needs a continuous response");
        detail::require_dim(prior.dimension() == data.p(), "prior dimension does not match the number of columns");
        detail::require_config(prior.q() == 1.0 || prior.q() == 2.0, "only q = 1 and q = 2 have inner solvers");
    }

private:
    FitProblem(ModelKind m, Dataset d, PriorSpec p) : model(m), data(std::move(d)), prior(std::move(p)) {}
};

enum class FitStatus { Converged, OuterIterationLimit, InnerNonConvergence };

inline const char* to_string(FitStatus s)
{
    switch (s) {
    case FitStatus::Converged: return "converged";
    case FitStatus::OuterIterationLimit: return "outer iteration limit reached";
    case FitStatus::InnerNonConvergence: return "inner solver did not converge";
    }
    return "unknown";
}

struct FitResult {
    /// Coefficients (regression models).
    Vector coef;
    /// Precision estimate (Precision model).
    std::optional<PrecisionEstimate> precision;
    /// Indices of exactly nonzero coefficients.
    std::vector<Index> support;
    /// Nonzero off-diagonal entries (i < j) of the precision estimate.
    std::vector<std::pair<Index, Index>> edges;
    /// Log posterior at the start point and after every outer iteration.
    std::vector<double> objective_trace;
    /// Traces of earlier tempering stages, oldest first.
    std::vector<std::vector<double>> stage_traces;
    int outer_iterations = 0;
    bool converged = false;
    FitStatus status = FitStatus::OuterIterationLimit;
    std::string message;
    /// E-step weights recomputed at the final estimate.
    std::optional<WeightSet> weights_final;
    /// Noise precision used in the last M-step (linear models).
    double noise_precision = 1.0;
};

/// Multipliers applied to (a, b) stage by stage; the last stage must be (1, 1).
struct TemperSchedule {
    struct Stage {
        double a_scale = 1.0;
        double b_scale = 1.0;
    };
    std::vector<Stage> stages;

    static TemperSchedule identity() { return TemperSchedule{{Stage{}}}; }

    void validate() const
    {
        detail::require_config(!stages.empty(), "tempering schedule is empty");
        for (const auto& s : stages)
            detail::require_domain(s.a_scale > 0.0 && s.b_scale > 0.0, "tempering multipliers must be positive");
        detail::require_config(stages.back().a_scale == 1.0 && stages.back().b_scale == 1.0,
                               "final tempering stage must be the target hyperparameters");
    }
};

inline std::vector<Index> support_of(const Vector& coef)
{
    std::vector<Index> out;
    for (Index j = 0; j < coef.size(); ++j)
        if (coef(j) != 0.0) out.push_back(j);
    return out;
}

inline std::vector<std::pair<Index, Index>> edges_of(const Matrix& omega)
{
    std::vector<std::pair<Index, Index>> out;
    for (Index i = 0; i < omega.rows(); ++i)
        for (Index j = i + 1; j < omega.cols(); ++j)
            if (omega(i, j) != 0.0) out.emplace_back(i, j);
    return out;
}

} // namespace hiersparse
