#include "properties.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace hiersparse;
using hstest::CounterRng;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Index>(xs.size()));
    Index k = 0;
    for (double x : xs) v(k++) = x;
    return v;
}

void expect_all_pass(const std::vector<hstest::Check>& checks)
{
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

/// n x p design with orthonormal columns.
Matrix orthonormal_design(CounterRng& rng, Index n, Index p)
{
    const Matrix a = hstest::random_normal_matrix(rng, n, p);
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, p);
}

Dataset permuted(const Dataset& d, const std::vector<Index>& perm)
{
    Matrix X(d.n(), d.p());
    for (Index j = 0; j < d.p(); ++j) X.col(j) = d.X.col(perm[static_cast<std::size_t>(j)]);
    if (d.kind == ResponseKind::Labels) return Dataset::logistic(X, d.y);
    return Dataset::linear(X, d.y, false);
}

Vector permute(const Vector& v, const std::vector<Index>& perm)
{
    Vector out(v.size());
    for (Index j = 0; j < v.size(); ++j) out(j) = v(perm[static_cast<std::size_t>(j)]);
    return out;
}

SolverOptions tight()
{
    SolverOptions o;
    o.tol = 1e-12;
    o.max_iter = 200000;
    return o;
}

} // namespace

TEST(SoftThreshold, Examples)
{
    EXPECT_EQ(soft_threshold(3.0, 1.0), 2.0);
    EXPECT_EQ(soft_threshold(-3.0, 1.0), -2.0);
    EXPECT_EQ(soft_threshold(0.5, 1.0), 0.0);
    EXPECT_EQ(soft_threshold(-1.0, 1.0), 0.0);
    EXPECT_EQ(soft_threshold(2.0, 0.0), 2.0);
}

TEST(GroupSoftThreshold, Examples)
{
    const Vector shrunk = group_soft_threshold(vec({3.0, 4.0}), 2.5);
    EXPECT_NEAR(shrunk(0), 1.5, 1e-15);
    EXPECT_NEAR(shrunk(1), 2.0, 1e-15);
    EXPECT_TRUE(group_soft_threshold(vec({3.0, 4.0}), 5.0).isZero());
    EXPECT_TRUE(group_soft_threshold(vec({0.0, 0.0}), 1.0).isZero());
}

TEST(WeightedL1Linear, IdentityDesign)
{
    const Dataset d = Dataset::linear(Matrix::Identity(2, 2), vec({1.0, 2.0}), false);
    const SolveReport ols = weighted_l1_linear(d, Vector::Zero(2), 1.0, SolverOptions{});
    EXPECT_TRUE(ols.converged);
    EXPECT_NEAR(ols.coef(0), 1.0, 1e-12);
    EXPECT_NEAR(ols.coef(1), 2.0, 1e-12);

    const SolveReport shrunk = weighted_l1_linear(d, vec({0.5, 0.5}), 1.0, SolverOptions{});
    EXPECT_NEAR(shrunk.coef(0), 0.5, 1e-12);
    EXPECT_NEAR(shrunk.coef(1), 1.5, 1e-12);

    // v scales the loss: threshold is w / v
    const SolveReport scaled = weighted_l1_linear(d, vec({1.0, 1.0}), 2.0, SolverOptions{});
    EXPECT_NEAR(scaled.coef(0), 0.5, 1e-12);
    EXPECT_NEAR(scaled.coef(1), 1.5, 1e-12);

    const SolveReport zero = weighted_l1_linear(d, vec({1.0, 5.0}), 1.0, SolverOptions{});
    EXPECT_EQ(zero.coef(0), 0.0);
    EXPECT_EQ(zero.coef(1), 0.0);
}

TEST(WeightedL1Linear, MatchesGridSearch)
{
    Matrix X(5, 2);
    X << 1.0, 0.5, -0.3, 1.2, 0.8, -0.7, 1.5, 0.2, -1.1, 0.9;
    const Vector y = vec({1.2, 0.4, -0.5, 2.1, -0.2});
    const Dataset d = Dataset::linear(X, y, false);
    const Vector w = vec({0.4, 1.1});
    const double v = 1.3;
    const SolveReport rep = weighted_l1_linear(d, w, v, tight());
    ASSERT_TRUE(rep.converged);

    const auto f = [&](const std::array<double, 2>& b) {
        const Vector beta = vec({b[0], b[1]});
        return 0.5 * v * (y - X * beta).squaredNorm() + w.dot(beta.cwiseAbs());
    };
    const auto best = hstest::grid_minimize<2>(f, {-5.0, -5.0}, {5.0, 5.0}, 0.05, 1e-6);
    EXPECT_NEAR(rep.coef(0), best[0], 1e-5);
    EXPECT_NEAR(rep.coef(1), best[1], 1e-5);
}

TEST(WeightedL1Linear, KktHoldsOnRandomProblems)
{
    for (std::uint64_t k = 0; k < 20; ++k) {
        CounterRng rng = CounterRng::substream(101, k);
        const Dataset d = hstest::random_linear_data(rng, 30, 8);
        Vector w(8);
        for (Index j = 0; j < 8; ++j) w(j) = hstest::uniform(rng, 0.0, 20.0);
        const SolveReport rep = weighted_l1_linear(d, w, 1.0, SolverOptions{});
        ASSERT_TRUE(rep.converged);
        const Vector r = kkt::l1_residual(kkt::linear_gradient(d, 1.0, rep.coef), rep.coef, w);
        EXPECT_TRUE(kkt::certified(r.maxCoeff(), 1e-8, kkt::linear_curvature(d, 1.0))) << "case " << k;
    }
}

TEST(WeightedL1Linear, RejectsBadInput)
{
    const Dataset d = Dataset::linear(Matrix::Identity(2, 2), vec({1.0, 2.0}), false);
    EXPECT_THROW(weighted_l1_linear(d, vec({1.0}), 1.0, SolverOptions{}), DimensionError);
    EXPECT_THROW(weighted_l1_linear(d, vec({-1.0, 1.0}), 1.0, SolverOptions{}), DomainError);
    EXPECT_THROW(weighted_l1_linear(d, vec({1.0, 1.0}), 0.0, SolverOptions{}), DomainError);
}

TEST(WeightedL2Linear, MatchesGradientDescent)
{
    CounterRng rng(7);
    const Dataset d = hstest::random_linear_data(rng, 12, 4);
    const Vector w = vec({0.3, 1.0, 2.5, 0.0});
    const Vector closed = weighted_l2_linear(d, w, 0.8);
    const Vector descent = hstest::ridge_by_gradient_descent(d, w, 0.8);
    EXPECT_LT(hstest::relative_error(closed, descent), 1e-8);
}

TEST(WeightedL2Linear, ZeroWeightGivesLeastSquares)
{
    CounterRng rng(8);
    const Dataset d = hstest::random_linear_data(rng, 20, 5);
    const Vector ols = d.X.colPivHouseholderQr().solve(d.y);
    EXPECT_LT(hstest::relative_error(weighted_l2_linear(d, Vector::Zero(5), 1.0), ols), 1e-10);
    EXPECT_LT(hstest::relative_error(weighted_l2_linear(d, Vector::Constant(5, 1e-12), 1.0), ols), 1e-8);
}

TEST(WeightedL2Linear, ScalarExample)
{
    // (1/2)(2 - b)^2 + 0.5 b^2 -> b = 1
    const Dataset d = Dataset::linear(Matrix::Identity(1, 1), vec({2.0}), false);
    EXPECT_NEAR(weighted_l2_linear(d, vec({0.5}), 1.0)(0), 1.0, 1e-14);
}

TEST(Logistic, LargeWeightsGiveZero)
{
    CounterRng rng(9);
    const Dataset d = hstest::random_logistic_data(rng, 40, 4);
    // At beta = 0 the loss gradient is -(1/2) X'y.
    const Vector bound = 0.5 * (d.X.transpose() * d.y).cwiseAbs();
    const SolveReport rep = weighted_l1_logistic(d, bound * 1.0001, false, SolverOptions{});
    EXPECT_TRUE(rep.converged);
    EXPECT_TRUE(rep.coef.isZero());

    const SolveReport below = weighted_l1_logistic(d, bound * 0.9, false, SolverOptions{});
    EXPECT_FALSE(below.coef.isZero());
}

TEST(Logistic, SeparableDataIsReportedAsNonConverged)
{
    Matrix X(4, 1);
    X << 1.0, 2.0, -1.0, -2.0;
    const Dataset d = Dataset::logistic(X, vec({1.0, 1.0, -1.0, -1.0}));
    SolverOptions opts;
    opts.max_iter = 2000;
    const SolveReport rep = weighted_l1_logistic(d, Vector::Zero(1), false, opts);
    EXPECT_FALSE(rep.converged);
    EXPECT_EQ(rep.iterations, 2000);
    EXPECT_GT(rep.coef(0), 5.0);
}

TEST(Logistic, MatchesGridSearch)
{
    CounterRng rng(10);
    const Dataset d = hstest::random_logistic_data(rng, 30, 2);
    const Vector w = vec({0.5, 0.5});
    const SolveReport rep = weighted_l1_logistic(d, w, false, tight());
    ASSERT_TRUE(rep.converged);
    const LogisticLoss loss{d.X, d.y, false};
    const auto f = [&](const std::array<double, 2>& b) {
        const Vector beta = vec({b[0], b[1]});
        return loss.value(beta) + w.dot(beta.cwiseAbs());
    };
    const auto best = hstest::grid_minimize<2>(f, {-10.0, -10.0}, {10.0, 10.0}, 0.05, 1e-6);
    EXPECT_NEAR(rep.coef(0), best[0], 1e-4);
    EXPECT_NEAR(rep.coef(1), best[1], 1e-4);
}

TEST(Logistic, RejectsContinuousData)
{
    const Dataset d = Dataset::linear(Matrix::Identity(2, 2), vec({1.0, 2.0}), false);
    EXPECT_THROW(weighted_l1_logistic(d, Vector::Zero(2), false, SolverOptions{}), ConfigError);
    EXPECT_THROW(Dataset::logistic(Matrix::Identity(2, 2), vec({1.0, 0.0})), DomainError);
}

TEST(JeffreysLogdet, ZeroCoefficients)
{
    // V = I/4 at beta = 0
    CounterRng rng(12);
    const Matrix X = hstest::random_normal_matrix(rng, 10, 3);
    const double expected = 0.5 * std::log((X.transpose() * X).determinant()) - 1.5 * std::log(4.0);
    EXPECT_NEAR(logistic_jeffreys_logdet(X, Vector::Zero(3)), expected, 1e-12);

    const Matrix Q = orthonormal_design(rng, 10, 3);
    EXPECT_NEAR(logistic_jeffreys_logdet(Q, Vector::Zero(3)), -3.0 * std::log(2.0), 1e-12);
}

TEST(JeffreysLogdet, MatchesCofactorDeterminant)
{
    for (std::uint64_t k = 0; k < 10; ++k) {
        CounterRng rng = CounterRng::substream(13, k);
        const Matrix X = hstest::random_normal_matrix(rng, 15, 4);
        const Vector beta = hstest::random_normal_vector(rng, 4);
        Matrix info = Matrix::Zero(4, 4);
        for (Index i = 0; i < 15; ++i) {
            const double pr = 1.0 / (1.0 + std::exp(-X.row(i).dot(beta)));
            info += pr * (1.0 - pr) * X.row(i).transpose() * X.row(i);
        }
        EXPECT_NEAR(logistic_jeffreys_logdet(X, beta), 0.5 * std::log(hstest::cofactor_determinant(info)), 1e-9);
    }
}

TEST(JeffreysLogdet, RankDeficientDesignThrows)
{
    Matrix X(3, 2);
    X << 1.0, 2.0, 2.0, 4.0, -1.0, -2.0;
    EXPECT_THROW(logistic_jeffreys_logdet(X, Vector::Zero(2)), RankDeficiencyError);
}

TEST(WeightedGroupLinear, ZeroWeightsGiveLeastSquares)
{
    CounterRng rng(14);
    const Dataset d = hstest::random_linear_data(rng, 25, 6);
    const auto groups = GroupStructure::contiguous(6, 2);
    const SolveReport rep = weighted_group_linear(d, groups, Vector::Zero(3), 1.0, tight());
    ASSERT_TRUE(rep.converged);
    const Vector ols = d.X.colPivHouseholderQr().solve(d.y);
    EXPECT_LT(hstest::relative_error(rep.coef, ols), 1e-8);
}

TEST(WeightedGroupLinear, OrthonormalDesignIsBlockSoftThreshold)
{
    CounterRng rng(15);
    const Matrix Q = orthonormal_design(rng, 12, 5);
    const Vector y = hstest::random_normal_vector(rng, 12) * 2.0;
    const Dataset d = Dataset::linear(Q, y, false);
    const auto groups = GroupStructure::from_partition({{0, 3}, {1}, {2, 4}}, 5);
    const Vector w = vec({0.7, 0.2, 1.5});
    const double v = 1.5;
    const SolveReport rep = weighted_group_linear(d, groups, w, v, tight());
    ASSERT_TRUE(rep.converged);
    const Vector z = Q.transpose() * y;
    for (Index g = 0; g < groups.num_groups(); ++g) {
        const auto& m = groups.members(g);
        Vector block(static_cast<Index>(m.size()));
        for (std::size_t k = 0; k < m.size(); ++k) block(static_cast<Index>(k)) = z(m[k]);
        const Vector expected = group_soft_threshold(block, w(g) / v);
        for (std::size_t k = 0; k < m.size(); ++k)
            EXPECT_NEAR(rep.coef(m[k]), expected(static_cast<Index>(k)), 1e-9) << "group " << g;
    }
}

TEST(WeightedGroupLinear, HugeWeightsGiveZero)
{
    CounterRng rng(16);
    const Dataset d = hstest::random_linear_data(rng, 25, 6);
    const auto groups = GroupStructure::contiguous(6, 3);
    const SolveReport rep = weighted_group_linear(d, groups, Vector::Constant(2, 1e8), 1.0, SolverOptions{});
    EXPECT_TRUE(rep.converged);
    EXPECT_TRUE(rep.coef.isZero());
}

TEST(WeightedGlasso, UnpenalizedIdentity)
{
    // c = (10 - 2 - 1)/2 = 3.5, maximizer 2c/n S^{-1} = 0.7 I
    const PrecisionEstimate est = weighted_glasso(Matrix::Identity(2, 2), 10, Matrix::Zero(2, 2), SolverOptions{});
    EXPECT_TRUE(est.converged);
    EXPECT_LT((est.omega - 0.7 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(WeightedGlasso, HugeOffDiagonalWeightsGiveDiagonal)
{
    CounterRng rng(17);
    const Index p = 5;
    const Index n = 30;
    const Matrix S = hstest::sample_covariance(rng, hstest::random_precision(rng, p), n);
    Matrix W = Matrix::Constant(p, p, 1e8);
    W.diagonal().setZero();
    const PrecisionEstimate est = weighted_glasso(S, n, W, SolverOptions{});
    const double c = 0.5 * static_cast<double>(n - p - 1);
    for (Index i = 0; i < p; ++i) {
        EXPECT_NEAR(est.omega(i, i), 2.0 * c / (static_cast<double>(n) * S(i, i)), 1e-8);
        for (Index j = 0; j < p; ++j)
            if (i != j) {
                EXPECT_EQ(est.omega(i, j), 0.0);
            }
    }
}

TEST(WeightedGlasso, KktOnRandomProblems)
{
    for (std::uint64_t k = 0; k < 20; ++k) {
        CounterRng rng = CounterRng::substream(18, k);
        const Index p = hstest::uniform_index(rng, 2, 7);
        const Index n = hstest::uniform_index(rng, p + 2, 50);
        const Matrix S = hstest::sample_covariance(rng, hstest::random_precision(rng, p), n);
        Matrix W(p, p);
        for (Index i = 0; i < p; ++i)
            for (Index j = i; j < p; ++j) W(i, j) = W(j, i) = hstest::uniform(rng, 0.0, 10.0);
        const PrecisionEstimate est = weighted_glasso(S, n, W, SolverOptions{});
        ASSERT_TRUE(est.converged);
        const double r = kkt::glasso_residual(S, n, W, est.omega).maxCoeff();
        EXPECT_TRUE(kkt::certified(r, 1e-8, kkt::glasso_curvature(n, est.omega))) << "case " << k << ": " << r;
    }
}

TEST(WeightedGlasso, RejectsBadInput)
{
    const Matrix S = Matrix::Identity(3, 3);
    EXPECT_THROW(weighted_glasso(S, 4, Matrix::Zero(3, 3), SolverOptions{}), DomainError);
    Matrix asym = S;
    asym(0, 1) = 0.3;
    EXPECT_THROW(weighted_glasso(asym, 20, Matrix::Zero(3, 3), SolverOptions{}), DomainError);
    EXPECT_THROW(weighted_glasso(S, 20, Matrix::Constant(3, 3, -1.0), SolverOptions{}), DomainError);
}

TEST(Solvers, PermutationEquivariance)
{
    CounterRng rng(19);
    std::vector<Index> perm(6);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::reverse(perm.begin(), perm.end());
    std::swap(perm[1], perm[4]);
    const Vector w = vec({0.5, 2.0, 1.0, 0.1, 3.0, 0.7});

    const Dataset lin = hstest::random_linear_data(rng, 30, 6);
    const Vector a = weighted_l1_linear(lin, w, 1.0, tight()).coef;
    const Vector b = weighted_l1_linear(permuted(lin, perm), permute(w, perm), 1.0, tight()).coef;
    EXPECT_LT((permute(a, perm) - b).cwiseAbs().maxCoeff(), 1e-8);

    const Dataset logi = hstest::random_logistic_data(rng, 40, 6);
    const Vector c = weighted_l1_logistic(logi, w, false, tight()).coef;
    const Vector e = weighted_l1_logistic(permuted(logi, perm), permute(w, perm), false, tight()).coef;
    EXPECT_LT((permute(c, perm) - e).cwiseAbs().maxCoeff(), 1e-7);

    const auto groups = GroupStructure::from_partition({{0, 1}, {2, 3}, {4, 5}}, 6);
    std::vector<Index> gperm = {2, 3, 4, 5, 0, 1};
    const Vector gw = vec({1.0, 4.0, 0.5});
    const Vector gw_perm = vec({4.0, 0.5, 1.0});
    const Vector f = weighted_group_linear(lin, groups, gw, 1.0, tight()).coef;
    const Vector g = weighted_group_linear(permuted(lin, gperm), groups, gw_perm, 1.0, tight()).coef;
    EXPECT_LT((permute(f, gperm) - g).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Solvers, ObjectiveNeverIncreases)
{
    SolverOptions opts;
    opts.record_objective = true;
    for (std::uint64_t k = 0; k < 10; ++k) {
        CounterRng rng = CounterRng::substream(20, k);
        const Dataset lin = hstest::random_linear_data(rng, 25, 7);
        const Dataset logi = hstest::random_logistic_data(rng, 40, 5);
        const Vector w = Vector::Constant(7, 2.0);
        const auto groups = GroupStructure::from_partition({{0, 1, 2}, {3, 4}, {5, 6}}, 7);
        const std::vector<SolveReport> reps = {
            weighted_l1_linear(lin, w, 1.0, opts),
            weighted_group_linear(lin, groups, Vector::Constant(groups.num_groups(), 3.0), 1.0, opts),
            weighted_l1_logistic(logi, Vector::Constant(5, 1.0), false, opts),
            weighted_l1_logistic(logi, Vector::Constant(5, 1.0), true, opts),
        };
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const auto& obj = reps[r].objective;
            ASSERT_GE(obj.size(), 2u);
            for (std::size_t t = 1; t < obj.size(); ++t)
                ASSERT_LE(obj[t], obj[t - 1] + 1e-10) << "case " << k << " solver " << r << " step " << t;
        }
    }
}

TEST(Properties, KktConditions) { expect_all_pass(hstest::check_kkt()); }
TEST(Properties, GridOracles) { expect_all_pass(hstest::check_grid_oracles()); }
TEST(Properties, Gradients) { expect_all_pass(hstest::check_gradients()); }
TEST(Properties, GlassoContract) { expect_all_pass(hstest::check_glasso_contract()); }
