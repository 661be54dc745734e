#pragma once
#include <hiersparse/sim/experiment.hpp>

#include <string>
#include <vector>

namespace hiersparse::sim {

/// (3, 1.5, 0, 0, 2, 0, 0, 0)
inline Vector reference_beta()
{
    Vector b(8);
    b << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0;
    return b;
}

/// p = 32 with nonzero blocks {1..4}, {9..12}, {17..20}.
inline Vector reference_group_beta()
{
    Vector b = Vector::Zero(32);
    b.segment(0, 4) << 3.0, 1.5, 2.0, 0.5;
    b.segment(8, 4) << 6.0, 3.0, 4.0, 1.0;
    b.segment(16, 4) << 1.5, 0.75, 1.0, 0.25;
    return b;
}

/// The published 8x8 precision matrix as displayed (entries (5,7) and (7,5) disagree).
inline Matrix reference_precision_as_published()
{
    Matrix m(8, 8);
    m << 1, 0, 0, 0, 0.5, 0, 0, 0,      //
        0, 1.5, 0, 0.2, 0.8, 0, 0, 0,   //
        0, 0, 0.5, 0.3, 0, 0.2, 0, 0,   //
        0, 0.2, 0.3, 2, 0, 0, 0, 1.5,   //
        0.5, 0.8, 0, 0, 1, 0, 0.5, 0,   //
        0, 0, 0.2, 0, 0, 0.5, 0.3, 0,   //
        0, 0, 0, 0, 0.1, 0.3, 1.5, 0,   //
        0, 0, 0, 1.5, 0, 0, 0, 2;
    return m;
}

/// Symmetrized (M + M')/2; throws if the result is not positive definite.
inline Matrix reference_precision()
{
    const Matrix m = reference_precision_as_published();
    Matrix sym = 0.5 * (m + m.transpose());
    Eigen::LLT<Matrix> llt(sym);
    hiersparse::detail::require_domain(llt.info() == Eigen::Success, "symmetrized reference precision is not positive definite");
    return sym;
}

struct Preset {
    std::string name;
    std::string description;
    std::vector<ExperimentConfig> rows;
};

namespace detail {

inline ExperimentConfig linear_base(Index n, double delta)
{
    ExperimentConfig c;
    c.model = ModelClass::Linear;
    c.beta_true = reference_beta();
    c.n = n;
    c.noise.delta = delta;
    c.replications = 1000;
    return c;
}

inline ExperimentConfig hal(ExperimentConfig c, double a, double b, std::map<Index, std::pair<double, double>> ov = {})
{
    c.method = Method::Hierarchical;
    c.hyper = HyperParams{a, b, std::move(ov)};
    return c;
}

inline ExperimentConfig lasso(ExperimentConfig c, double tau, std::map<Index, double> ov = {})
{
    c.method = Method::FixedScale;
    c.tau = tau;
    c.tau_overrides = std::move(ov);
    return c;
}

inline std::string fmt(double x)
{
    std::string s = std::to_string(x);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline ExperimentConfig named(ExperimentConfig c, std::string setting)
{
    c.setting = std::move(setting);
    return c;
}

} // namespace detail

/// Built-in experiment grids, one per published results table.
inline std::vector<Preset> presets()
{
    using detail::fmt;
    using detail::hal;
    using detail::lasso;
    using detail::named;
    std::vector<Preset> out;

    {
        Preset p{"lasso-linear-delta1", "lasso, linear regression, delta = 1", {}};
        for (Index n : {40, 80})
            for (double tau : {0.2, 0.1, 0.02})
                p.rows.push_back(named(lasso(detail::linear_base(n, 1.0), tau), "tau=" + fmt(tau)));
        out.push_back(p);
    }
    {
        Preset p{"hal-linear-delta1", "HAL, linear regression, delta = 1", {}};
        for (Index n : {40, 80})
            for (auto [a, b] : {std::pair{1.0, 0.1}, std::pair{2.0, 0.1}, std::pair{2.0, 0.05}})
                p.rows.push_back(named(hal(detail::linear_base(n, 1.0), a, b), "(a,b)=(" + fmt(a) + "," + fmt(b) + ")"));
        out.push_back(p);
    }
    {
        Preset p{"lasso-linear-delta3", "lasso, linear regression, delta = 3", {}};
        const auto base = detail::linear_base(40, 3.0);
        p.rows.push_back(named(lasso(base, 1.0 / 6.0), "tau=1/6"));
        p.rows.push_back(named(lasso(base, 0.125), "tau=0.125"));
        p.rows.push_back(named(lasso(base, 0.125, {{1, 0.25}, {4, 0.25}}), "tau=0.125*(tau2,tau5)=(0.25,0.25)"));
        out.push_back(p);
    }
    {
        Preset p{"hal-linear-delta3", "HAL, linear regression, delta = 3", {}};
        const auto base = detail::linear_base(40, 3.0);
        p.rows.push_back(named(hal(base, 2.0, 0.75), "(a,b)=(2,0.75)"));
        p.rows.push_back(named(hal(base, 2.0, 0.1), "(a,b)=(2,0.1)"));
        p.rows.push_back(named(hal(base, 2.0, 0.1, {{1, {2.0, 2.0}}, {4, {2.0, 2.0}}}),
                               "(a,b)=(2,0.1)*(a2,b2,a5,b5)=(2,2,2,2)"));
        out.push_back(p);
    }
    {
        Preset p{"hal-linear-random-noise", "HAL, linear regression, random noise variance", {}};
        auto base = detail::linear_base(40, 1.0);
        auto with_noise = [&](double ad, double bd) {
            auto c = base;
            c.noise = NoiseSpec{true, 1.0, ad, bd};
            return c;
        };
        p.rows.push_back(named(hal(with_noise(3, 5), 2.0, 0.1), "(ad,bd)=(3,5);(a,b)=(2,0.1)"));
        p.rows.push_back(named(hal(with_noise(1, 1), 2.0, 0.1), "(ad,bd)=(1,1);(a,b)=(2,0.1)"));
        p.rows.push_back(named(hal(with_noise(1, 4), 2.0, 0.2), "(ad,bd)=(1,4);(a,b)=(2,0.2)"));
        p.rows.push_back(named(hal(with_noise(1, 4), 2.0, 0.2, {{1, {2.0, 2.0}}, {4, {2.0, 2.0}}}),
                               "(ad,bd)=(1,4);(a,b)=(2,0.2)*(a2,b2,a5,b5)=(2,2,2,2)"));
        out.push_back(p);
    }
    auto group_base = [] {
        ExperimentConfig c;
        c.model = ModelClass::Group;
        c.beta_true = reference_group_beta();
        c.groups = GroupStructure::contiguous(32, 4);
        c.n = 40;
        c.noise.delta = 3.0;
        c.replications = 1000;
        return c;
    };
    {
        Preset p{"group-lasso-delta3", "group lasso, linear regression, delta = 3", {}};
        p.rows.push_back(named(lasso(group_base(), 1.0 / 12.0), "tau=1/12"));
        p.rows.push_back(named(lasso(group_base(), 0.1), "tau=0.1"));
        out.push_back(p);
    }
    {
        Preset p{"ghal-delta3", "hierarchical adaptive group lasso, linear regression, delta = 3", {}};
        p.rows.push_back(named(hal(group_base(), 2.0, 0.75), "(a,b)=(2,0.75)"));
        p.rows.push_back(named(hal(group_base(), 2.0, 0.7), "(a,b)=(2,0.7)"));
        out.push_back(p);
    }
    auto logistic_base = [] {
        ExperimentConfig c;
        c.model = ModelClass::Logistic;
        c.beta_true = reference_beta();
        c.n = 80;
        c.replications = 1000;
        return c;
    };
    {
        Preset p{"lasso-logistic", "lasso, logistic regression", {}};
        p.rows.push_back(named(lasso(logistic_base(), 1.0 / 7.5), "tau=1/7.5"));
        p.rows.push_back(named(lasso(logistic_base(), 0.1, {{1, 1.0}, {4, 1.0}}), "tau=0.1*(tau2,tau5)=(1,1)"));
        out.push_back(p);
    }
    {
        Preset p{"hal-logistic", "HAL, logistic regression", {}};
        p.rows.push_back(named(hal(logistic_base(), 2.0, 0.65), "(a,b)=(2,0.65)"));
        p.rows.push_back(named(hal(logistic_base(), 2.0, 0.1, {{1, {2.0, 2.0}}, {4, {2.0, 2.0}}}),
                               "(a,b)=(2,0.1)*(a2,b2,a5,b5)=(2,2,2,2)"));
        p.rows.push_back(named(hal(logistic_base(), 2.0, 0.1, {{0, {2.0, 0.5}}, {1, {2.0, 2.0}}, {4, {2.0, 2.0}}}),
                               "(a,b)=(2,0.1)*(a1,b1,a2,b2,a5,b5)=(2,0.5,2,2,2,2)"));
        out.push_back(p);
    }
    auto ggm_base = [] {
        ExperimentConfig c;
        c.model = ModelClass::Precision;
        c.omega_true = reference_precision();
        c.n = 40;
        c.replications = 1000;
        return c;
    };
    {
        Preset p{"lasso-ggm", "graphical lasso", {}};
        p.rows.push_back(named(lasso(ggm_base(), 1.0 / 45.0), "tau=1/45"));
        p.rows.push_back(named(lasso(ggm_base(), 1.0 / 50.0), "tau=1/50"));
        out.push_back(p);
    }
    {
        Preset p{"hal-ggm", "HAL, Gaussian graphical model", {}};
        p.rows.push_back(named(hal(ggm_base(), 1.0, 0.075), "(a,b)=(1,0.075)"));
        p.rows.push_back(named(hal(ggm_base(), 2.0, 0.1), "(a,b)=(2,0.1)"));
        out.push_back(p);
    }
    {
        Preset p{"smoke", "one replication of the HAL linear design", {}};
        auto c = hal(detail::linear_base(40, 1.0), 2.0, 0.05);
        c.replications = 1;
        p.rows.push_back(named(c, "(a,b)=(2,0.05)"));
        out.push_back(p);
    }
    return out;
}

inline std::optional<Preset> find_preset(const std::string& name)
{
    for (auto& p : presets())
        if (p.name == name) return p;
    return std::nullopt;
}

} // namespace hiersparse::sim
