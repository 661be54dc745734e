#pragma once
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace hiersparse::sim {

/**
 * Counter-based 64-bit generator ("splitmix64-ctr").
 *
 * Draw k of a stream with key K is splitmix64_mix(K + (k + 1) * 0x9E3779B97F4A7C15),
 * so any draw is a pure function of (key, counter). Replication r of a run
 * with master seed S uses key splitmix64_mix(S ^ splitmix64_mix(r + 1)); changing
 * the number of replications never alters earlier streams.
 *
 * Normal variates use Box-Muller on 53-bit uniforms; gamma variates use
 * Marsaglia-Tsang. Everything is implemented here so draws do not depend on
 * the standard library's distribution implementations.
 */
class CounterRng {
public:
    using result_type = std::uint64_t;
    static constexpr const char* name = "splitmix64-ctr";
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent stream for replication `rep` (0-based) of a run seeded with `master`.
    static CounterRng substream(std::uint64_t master, std::uint64_t rep)
    {
        return CounterRng(mix(master ^ mix(rep + 1)));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        ++counter_;
        return mix(key_ + counter_ * golden);
    }

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Gamma(shape, 1).
    double gamma(double shape)
    {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Inverse-gamma with shape a and scale b.
    double inverse_gamma(double a, double b) { return b / gamma(a); }

    /// Exponential with the given mean.
    double exponential(double mean) { return -mean * std::log(uniform()); }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hiersparse::sim
