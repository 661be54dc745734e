#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hiersparse;
using namespace hiersparse::sim;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Index>(xs.size()));
    Index k = 0;
    for (double x : xs) v(k++) = x;
    return v;
}

ExperimentConfig smoke_row()
{
    const auto p = find_preset("smoke");
    if (!p) throw std::runtime_error("smoke preset missing");
    return p->rows.front();
}

void expect_same(const MetricsSummary& a, const MetricsSummary& b)
{
    EXPECT_EQ(a.avg_error, b.avg_error);
    EXPECT_EQ(a.pct_correct, b.pct_correct);
    EXPECT_EQ(a.avg_fp, b.avg_fp);
    EXPECT_EQ(a.avg_fn, b.avg_fn);
    EXPECT_EQ(a.nonconverged, b.nonconverged);
}

} // namespace

TEST(CounterRng, ReproducibleAndIndependentStreams)
{
    CounterRng a(5);
    CounterRng b(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
    CounterRng s0 = CounterRng::substream(5, 0);
    CounterRng s1 = CounterRng::substream(5, 1);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += s0() == s1() ? 1 : 0;
    EXPECT_EQ(equal, 0);
}

TEST(CounterRng, DistributionMoments)
{
    CounterRng rng(6);
    const int n = 400000;
    double u = 0.0, z = 0.0, z2 = 0.0, g = 0.0, e = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform();
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
        u += x;
        const double y = rng.normal();
        z += y;
        z2 += y * y;
        g += rng.gamma(2.5);
        e += rng.exponential(1.5);
    }
    EXPECT_NEAR(u / n, 0.5, 0.003);
    EXPECT_NEAR(z / n, 0.0, 0.005);
    EXPECT_NEAR(z2 / n, 1.0, 0.01);
    EXPECT_NEAR(g / n, 2.5, 0.015);
    EXPECT_NEAR(e / n, 1.5, 0.01);
}

TEST(Generators, SinglePredictorHasUnitVariance)
{
    CounterRng rng(61);
    const Matrix X = gen_correlated_design(200000, 1, 0.5, rng);
    EXPECT_NEAR(X.col(0).squaredNorm() / 200000.0, 1.0, 0.01);
}

TEST(Generators, AdjacentColumnsHaveCorrelationRho)
{
    CounterRng rng(62);
    const Index n = 200000;
    const Matrix X = gen_correlated_design(n, 4, 0.5, rng);
    const Matrix cov = X.transpose() * X / static_cast<double>(n);
    const Matrix expected = ar1_covariance(4, 0.5);
    EXPECT_LT((cov - expected).cwiseAbs().maxCoeff(), 0.015);
    EXPECT_THROW(gen_correlated_design(10, 3, 1.0, rng), DomainError);
}

TEST(Generators, ZeroNoiseGivesExactResponses)
{
    CounterRng rng(63);
    const Matrix X = gen_correlated_design(30, 8, 0.5, rng);
    const Vector y = gen_linear_responses(X, reference_beta(), 0.0, rng);
    EXPECT_EQ(y, X * reference_beta());
}

TEST(Generators, ResidualsHaveVarianceDeltaSquared)
{
    CounterRng rng(64);
    const Matrix X = gen_correlated_design(100000, 8, 0.5, rng);
    const Vector y = gen_linear_responses(X, reference_beta(), 3.0, rng);
    EXPECT_NEAR((y - X * reference_beta()).squaredNorm() / 100000.0, 9.0, 0.15);
}

TEST(Generators, LogisticLabelsFollowTheLink)
{
    CounterRng rng(65);
    const Index n = 100000;
    const Matrix X = Matrix::Ones(n, 1);
    const Vector strong = gen_logistic_responses(X, vec({10.0}), rng);
    // P(y = 1) = 1/(1+e^-10) = 0.9999546
    EXPECT_GE((strong.array() > 0.0).cast<double>().mean(), 0.999);
    const Vector even = gen_logistic_responses(X, vec({0.0}), rng);
    EXPECT_NEAR((even.array() > 0.0).cast<double>().mean(), 0.5, 0.006);
    const Vector mid = gen_logistic_responses(X, vec({-1.0}), rng);
    EXPECT_NEAR((mid.array() > 0.0).cast<double>().mean(), 1.0 / (1.0 + std::exp(1.0)), 0.006);
    EXPECT_TRUE((mid.array().abs() == 1.0).all());
}

TEST(Generators, GaussianSamplesMatchThePrecision)
{
    CounterRng rng(66);
    const GaussianSample eye = gen_gaussian_samples(Matrix::Identity(4, 4), 200000, rng);
    EXPECT_LT((eye.S - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.015);

    const Matrix omega = reference_precision();
    const GaussianSample big = gen_gaussian_samples(omega, 1000000, rng);
    EXPECT_LT((big.S.inverse() - omega).cwiseAbs().maxCoeff(), 0.02);
    EXPECT_THROW(gen_gaussian_samples(reference_precision_as_published(), 10, rng), DomainError);
}

TEST(SupportMetrics, VectorExamples)
{
    const Vector truth = reference_beta();
    const SupportScore exact = support_metrics(truth, truth);
    EXPECT_EQ(exact.error, 0.0);
    EXPECT_TRUE(exact.correct);

    Vector est = truth;
    est(1) = 0.0;   // missed
    est(3) = 0.25;  // spurious
    est(6) = -0.1;  // spurious
    const SupportScore s = support_metrics(est, truth);
    EXPECT_EQ(s.false_positives, 2);
    EXPECT_EQ(s.false_negatives, 1);
    EXPECT_FALSE(s.correct);
    EXPECT_NEAR(s.error, std::sqrt(1.5 * 1.5 + 0.25 * 0.25 + 0.1 * 0.1), 1e-15);
    EXPECT_THROW(support_metrics(Vector::Zero(3), truth), DimensionError);
}

TEST(SupportMetrics, MatrixIgnoresTheDiagonalForSupport)
{
    const Matrix truth = reference_precision();
    Matrix est = truth;
    est.diagonal().setConstant(7.0);
    const SupportScore diag = support_metrics(est, truth);
    EXPECT_TRUE(diag.correct);
    EXPECT_GT(diag.error, 0.0);

    est = truth;
    est(0, 1) = est(1, 0) = 0.05;
    est(0, 4) = est(4, 0) = 0.0;
    const SupportScore s = support_metrics(est, truth);
    EXPECT_EQ(s.false_positives, 1);
    EXPECT_EQ(s.false_negatives, 1);
    // upper triangle only
    EXPECT_NEAR(s.error, std::sqrt(0.05 * 0.05 + 0.5 * 0.5), 1e-15);
}

TEST(ReferencePrecision, SymmetrizedAndPositiveDefinite)
{
    const Matrix published = reference_precision_as_published();
    const Matrix omega = reference_precision();
    EXPECT_EQ(omega, omega.transpose());
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(omega).eigenvalues().minCoeff(), 0.0);
    EXPECT_DOUBLE_EQ(omega(4, 6), 0.3);
    Matrix diff = (omega - published).cwiseAbs();
    diff(4, 6) = diff(6, 4) = 0.0;
    EXPECT_EQ(diff.maxCoeff(), 0.0);
}

TEST(Replications, SingleReplicationMatchesAHandFit)
{
    ExperimentConfig cfg = smoke_row();
    cfg.seed = 77;
    const MetricsSummary summary = run_replications(cfg);

    CounterRng rng = CounterRng::substream(77, 0);
    Matrix X = gen_correlated_design(cfg.n, cfg.p(), cfg.rho, rng);
    Vector y = gen_linear_responses(X, cfg.beta_true, cfg.noise.delta, rng);
    const FitProblem problem = FitProblem::linear(Dataset::linear(std::move(X), std::move(y)),
                                                  PriorSpec::per_coordinate(cfg.p(), cfg.hyper),
                                                  NoiseModel::fixed(cfg.noise.delta * cfg.noise.delta));
    const FitResult fit = fit_map(problem, cfg.solver);
    const SupportScore score = support_metrics(fit.coef, cfg.beta_true);

    EXPECT_EQ(summary.replications, 1);
    EXPECT_EQ(summary.avg_error, score.error);
    EXPECT_EQ(summary.pct_correct, score.correct ? 100.0 : 0.0);
    EXPECT_EQ(summary.avg_fp, static_cast<double>(score.false_positives));
    EXPECT_EQ(summary.avg_fn, static_cast<double>(score.false_negatives));
}

TEST(Replications, DeterministicAndThreadIndependent)
{
    ExperimentConfig cfg = smoke_row();
    cfg.replications = 12;
    cfg.seed = 3;
    const MetricsSummary a = run_replications(cfg, 1);
    expect_same(a, run_replications(cfg, 1));
    expect_same(a, run_replications(cfg, 3));
}

TEST(Replications, PrefixInvariance)
{
    ExperimentConfig cfg = smoke_row();
    cfg.seed = 4;
    cfg.replications = 10;
    double err = 0.0;
    for (int r = 0; r < 5; ++r) err += run_replication(cfg, r).score.error;
    cfg.replications = 5;
    EXPECT_NEAR(run_replications(cfg).avg_error, err / 5.0, 1e-15);
}

TEST(Replications, MetricsAreInRange)
{
    for (const std::string name : {"hal-linear-delta1", "lasso-logistic", "ghal-delta3", "hal-ggm"}) {
        const auto preset = find_preset(name);
        ASSERT_TRUE(preset.has_value()) << name;
        ExperimentConfig cfg = preset->rows.front();
        cfg.replications = 5;
        const MetricsSummary s = run_replications(cfg);
        const double p = static_cast<double>(cfg.p());
        const double slots = cfg.model == ModelClass::Precision ? p * (p - 1.0) / 2.0 : p;
        EXPECT_GE(s.pct_correct, 0.0);
        EXPECT_LE(s.pct_correct, 100.0);
        EXPECT_GE(s.avg_error, 0.0);
        EXPECT_GE(s.avg_fp, 0.0);
        EXPECT_GE(s.avg_fn, 0.0);
        EXPECT_LE(s.avg_fp + s.avg_fn, slots);
        EXPECT_EQ(s.replications, 5);
    }
}

TEST(Presets, Layout)
{
    const auto hal = find_preset("hal-linear-delta1");
    ASSERT_TRUE(hal.has_value());
    ASSERT_EQ(hal->rows.size(), 6u);
    EXPECT_EQ(hal->rows[0].n, 40);
    EXPECT_EQ(hal->rows[5].n, 80);
    EXPECT_EQ(hal->rows[2].setting, "(a,b)=(2,0.05)");
    EXPECT_EQ(hal->rows[0].beta_true, reference_beta());

    const auto smoke = find_preset("smoke");
    ASSERT_TRUE(smoke.has_value());
    ASSERT_EQ(smoke->rows.size(), 1u);
    EXPECT_EQ(smoke->rows[0].replications, 1);

    EXPECT_FALSE(find_preset("no-such-preset").has_value());
    for (const auto& p : presets()) {
        EXPECT_FALSE(p.rows.empty()) << p.name;
        for (const auto& row : p.rows) EXPECT_NO_THROW(row.validate()) << p.name << " " << row.setting;
    }
}

TEST(ThresholdCurve, LassoIsSoftThreshold)
{
    PenaltySettings pen{PenaltyFamily::Lasso, 2.0, 1.0, 1.0};
    const auto pts = threshold_curve(pen, {-3.0, -2.0, -0.5, 0.0, 1.0, 2.5});
    const std::vector<double> expected = {-1.0, 0.0, 0.0, 0.0, 0.0, 0.5};
    for (std::size_t k = 0; k < pts.size(); ++k) EXPECT_EQ(pts[k].beta_hat, expected[k]);
}

TEST(ThresholdCurve, HalMatchesGridSearchAndIsOdd)
{
    for (auto [a, b] : {std::pair{2.0, 0.5}, std::pair{1.0, 0.1}, std::pair{5.0, 2.0}}) {
        PenaltySettings pen{PenaltyFamily::Hal, 1.0, a, b};
        for (double z : {0.3, 1.0, 2.0, 3.5, 6.0}) {
            const double got = threshold_curve(pen, {z})[0].beta_hat;
            const auto best = hstest::grid_minimize<1>(
                [&](const std::array<double, 1>& x) { return 0.5 * (z - x[0]) * (z - x[0]) + pen.value(x[0]); },
                {-1.0}, {z + 1.0}, 0.01, 1e-8);
            EXPECT_NEAR(got, best[0], 1e-6) << "a=" << a << " b=" << b << " z=" << z;
            EXPECT_EQ(threshold_curve(pen, {-z})[0].beta_hat, -got);
        }
        EXPECT_EQ(threshold_curve(pen, {0.0})[0].beta_hat, 0.0);
    }
}

TEST(ThresholdCurve, HarShrinksTowardZero)
{
    PenaltySettings pen{PenaltyFamily::Har, 1.0, 2.0, 1.0};
    double prev = 0.0;
    for (double z = 0.0; z <= 8.0; z += 0.5) {
        const double got = threshold_curve(pen, {z})[0].beta_hat;
        EXPECT_GE(got, prev - 1e-12);
        EXPECT_LE(got, z);
        prev = got;
    }
}

TEST(ThresholdCurve, RejectsBadSettings)
{
    EXPECT_THROW(threshold_curve(PenaltySettings{PenaltyFamily::Hal, 1.0, 2.0, 0.0}, {1.0}), DomainError);
    EXPECT_THROW(threshold_curve(PenaltySettings{PenaltyFamily::Lasso, -1.0, 1.0, 1.0}, {1.0}), DomainError);
}

TEST(PenaltyContour, OriginValueAndSymmetry)
{
    const double a = 2.0;
    const double b = 0.5;
    PenaltySettings pen{PenaltyFamily::Hal, 1.0, a, b};
    const auto origin = penalty_contour(pen, {0.0}, {0.0});
    EXPECT_NEAR(origin[0].neg_log_density, -2.0 * std::log(a / (2.0 * b)), 1e-12);

    const auto pts = penalty_contour(pen, {-1.5, 1.5}, {-0.7, 0.7});
    ASSERT_EQ(pts.size(), 4u);
    for (const auto& p : pts) EXPECT_NEAR(p.neg_log_density, pts[0].neg_log_density, 1e-12);
    const auto swapped = penalty_contour(pen, {0.7}, {1.5});
    EXPECT_NEAR(swapped[0].neg_log_density, pts[0].neg_log_density, 1e-12);
}

TEST(PenaltyContour, LassoSlopeIsInverseScale)
{
    const double tau = 0.25;
    PenaltySettings pen{PenaltyFamily::Lasso, 1.0 / tau, 1.0, 1.0};
    const double h = 1e-4;
    const auto pts = penalty_contour(pen, {1.0 - h, 1.0 + h}, {0.3});
    EXPECT_NEAR((pts[1].neg_log_density - pts[0].neg_log_density) / (2.0 * h), 1.0 / tau, 1e-6);
}
