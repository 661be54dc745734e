#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hiersparse {

/// Which level of the scale hierarchy the hyperparameters attach to.
enum class PriorVariant { PerCoordinate, Grouped, SharedGroups, Matrix };

inline const char* to_string(PriorVariant v)
{
    switch (v) {
    case PriorVariant::PerCoordinate: return "per_coordinate";
    case PriorVariant::Grouped: return "grouped";
    case PriorVariant::SharedGroups: return "shared_groups";
    case PriorVariant::Matrix: return "matrix";
    }
    return "unknown";
}

/**
 * Partition of coordinates {0..p-1} into K nonempty groups {0..K-1}.
 */
class GroupStructure {
public:
    GroupStructure() = default;

    /// `assignment[j]` is the group of coordinate j; group ids must cover 0..K-1.
    static GroupStructure from_assignment(std::vector<Index> assignment)
    {
        detail::require_config(!assignment.empty(), "group structure needs at least one coordinate");
        Index k = 0;
        for (Index g : assignment) {
            detail::require_config(g >= 0, "group index must be nonnegative");
            k = std::max(k, g + 1);
        }
        GroupStructure out;
        out.assignment_ = std::move(assignment);
        out.members_.assign(static_cast<std::size_t>(k), {});
        for (std::size_t j = 0; j < out.assignment_.size(); ++j)
            out.members_[static_cast<std::size_t>(out.assignment_[j])].push_back(static_cast<Index>(j));
        for (std::size_t g = 0; g < out.members_.size(); ++g)
            detail::require_config(!out.members_[g].empty(),
                                   "group " + std::to_string(g) + " is empty");
        return out;
    }

    /// Groups listed explicitly; must partition {0..p-1}.
    static GroupStructure from_partition(const std::vector<std::vector<Index>>& groups, Index p)
    {
        detail::require_config(p >= 1, "group structure needs p >= 1");
        std::vector<Index> assignment(static_cast<std::size_t>(p), -1);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            detail::require_config(!groups[g].empty(), "group " + std::to_string(g) + " is empty");
            for (Index j : groups[g]) {
                detail::require_config(j >= 0 && j < p,
                                       "group member " + std::to_string(j) + " out of range");
                auto& slot = assignment[static_cast<std::size_t>(j)];
                detail::require_config(slot < 0, "coordinate " + std::to_string(j) +
                                                      " assigned to more than one group");
                slot = static_cast<Index>(g);
            }
        }
        for (std::size_t j = 0; j < assignment.size(); ++j)
            detail::require_config(assignment[j] >= 0,
                                   "coordinate " + std::to_string(j) + " not assigned to a group");
        return from_assignment(std::move(assignment));
    }

    /// Consecutive blocks of `size` coordinates.
    static GroupStructure contiguous(Index p, Index size)
    {
        detail::require_config(size >= 1 && p >= 1 && p % size == 0,
                               "contiguous groups need p divisible by the group size");
        std::vector<Index> assignment(static_cast<std::size_t>(p));
        for (Index j = 0; j < p; ++j) assignment[static_cast<std::size_t>(j)] = j / size;
        return from_assignment(std::move(assignment));
    }

    /// All coordinates in one group.
    static GroupStructure single(Index p) { return contiguous(p, p); }

    /// One group per coordinate.
    static GroupStructure singletons(Index p) { return contiguous(p, 1); }

    Index num_coordinates() const { return static_cast<Index>(assignment_.size()); }
    Index num_groups() const { return static_cast<Index>(members_.size()); }
    Index group_of(Index j) const { return assignment_[static_cast<std::size_t>(j)]; }
    Index size(Index g) const { return static_cast<Index>(members_[static_cast<std::size_t>(g)].size()); }
    const std::vector<Index>& members(Index g) const { return members_[static_cast<std::size_t>(g)]; }
    const std::vector<Index>& assignment() const { return assignment_; }

    /// Broadcast per-group values to coordinates.
    Vector expand(const Vector& per_group) const
    {
        detail::require_dim(per_group.size() == num_groups(), "per-group vector length != K");
        Vector out(num_coordinates());
        for (Index j = 0; j < num_coordinates(); ++j) out(j) = per_group(group_of(j));
        return out;
    }

    bool operator==(const GroupStructure&) const = default;

private:
    std::vector<Index> assignment_;
    std::vector<std::vector<Index>> members_;
};

/**
 * Scalar (a, b) broadcast to every slot, with optional per-slot overrides.
 * Slots are 0-based coordinates, groups, or packed upper-triangle entries
 * depending on the prior variant.
 */
struct HyperParams {
    double a = 1.0;
    double b = 1.0;
    std::map<Index, std::pair<double, double>> overrides;

    std::pair<Vector, Vector> expand(Index length) const
    {
        Vector av = Vector::Constant(length, a);
        Vector bv = Vector::Constant(length, b);
        for (const auto& [slot, ab] : overrides) {
            detail::require_dim(slot >= 0 && slot < length,
                                "hyperparameter override index " + std::to_string(slot + 1) +
                                    " outside 1.." + std::to_string(length));
            av(slot) = ab.first;
            bv(slot) = ab.second;
        }
        return {std::move(av), std::move(bv)};
    }
};

/// Position of (i, j), i <= j, in the row-major packed upper triangle of a p x p matrix.
inline Index packed_upper_index(Index i, Index j, Index p)
{
    if (i > j) std::swap(i, j);
    return i * p - i * (i - 1) / 2 + (j - i);
}

/**
 * Hyperparameters of one of the hierarchical priors.
 *
 * Lengths of `a` and `b`: p for PerCoordinate, K for Grouped and SharedGroups,
 * p(p+1)/2 for Matrix (packed upper triangle including the diagonal).
 */
class PriorSpec {
public:
    static PriorSpec per_coordinate(Vector a, Vector b, double q = 1.0)
    {
        const Index p = a.size();
        return PriorSpec(PriorVariant::PerCoordinate, p, std::move(a), std::move(b), q, std::nullopt);
    }

    static PriorSpec per_coordinate(Index p, const HyperParams& h, double q = 1.0)
    {
        auto [a, b] = h.expand(p);
        return per_coordinate(std::move(a), std::move(b), q);
    }

    static PriorSpec grouped(GroupStructure groups, Vector a, Vector b)
    {
        const Index p = groups.num_coordinates();
        return PriorSpec(PriorVariant::Grouped, p, std::move(a), std::move(b), 1.0, std::move(groups));
    }

    static PriorSpec grouped(GroupStructure groups, const HyperParams& h)
    {
        auto [a, b] = h.expand(groups.num_groups());
        return grouped(std::move(groups), std::move(a), std::move(b));
    }

    static PriorSpec shared(GroupStructure groups, Vector a, Vector b, double q = 1.0)
    {
        const Index p = groups.num_coordinates();
        return PriorSpec(PriorVariant::SharedGroups, p, std::move(a), std::move(b), q, std::move(groups));
    }

    static PriorSpec shared(GroupStructure groups, const HyperParams& h, double q = 1.0)
    {
        auto [a, b] = h.expand(groups.num_groups());
        return shared(std::move(groups), std::move(a), std::move(b), q);
    }

    static PriorSpec matrix(Index p, Vector a_upper, Vector b_upper)
    {
        return PriorSpec(PriorVariant::Matrix, p, std::move(a_upper), std::move(b_upper), 1.0, std::nullopt);
    }

    static PriorSpec matrix(Index p, const HyperParams& h)
    {
        auto [a, b] = h.expand(p * (p + 1) / 2);
        return matrix(p, std::move(a), std::move(b));
    }

    PriorVariant variant() const { return variant_; }
    const Vector& a() const { return a_; }
    const Vector& b() const { return b_; }
    double q() const { return q_; }
    /// p for regression variants, matrix order for Matrix.
    Index dimension() const { return dim_; }
    bool has_groups() const { return groups_.has_value(); }

    const GroupStructure& groups() const
    {
        detail::require_config(groups_.has_value(), "prior has no group structure");
        return *groups_;
    }

    double matrix_a(Index i, Index j) const { return a_(packed_upper_index(i, j, dim_)); }
    double matrix_b(Index i, Index j) const { return b_(packed_upper_index(i, j, dim_)); }

    /// Same prior with every a multiplied by `a_scale` and every b by `b_scale`.
    PriorSpec scaled(double a_scale, double b_scale) const
    {
        return PriorSpec(variant_, dim_, a_ * a_scale, b_ * b_scale, q_, groups_);
    }

private:
    PriorSpec(PriorVariant variant, Index dim, Vector a, Vector b, double q,
              std::optional<GroupStructure> groups)
        : variant_(variant), dim_(dim), a_(std::move(a)), b_(std::move(b)), q_(q),
          groups_(std::move(groups))
    {
        validate();
    }

    void validate() const
    {
        detail::require_dim(a_.size() == b_.size(), "hyperparameter vectors a and b differ in length");
        Index expected = 0;
        switch (variant_) {
        case PriorVariant::PerCoordinate: expected = dim_; break;
        case PriorVariant::Grouped:
        case PriorVariant::SharedGroups:
            detail::require_config(groups_.has_value(), "grouped prior needs a group structure");
            expected = groups_->num_groups();
            break;
        case PriorVariant::Matrix: expected = dim_ * (dim_ + 1) / 2; break;
        }
        detail::require_dim(dim_ >= 1, "prior dimension must be at least 1");
        detail::require_dim(a_.size() == expected,
                            std::string("hyperparameter length ") + std::to_string(a_.size()) +
                                " does not match " + to_string(variant_) + " length " +
                                std::to_string(expected));
        for (Index k = 0; k < a_.size(); ++k) {
            detail::require_domain(std::isfinite(a_(k)) && a_(k) > 0.0,
                                   "hyperparameter a must be positive (slot " + std::to_string(k + 1) + ")");
            detail::require_domain(std::isfinite(b_(k)) && b_(k) > 0.0,
                                   "hyperparameter b must be positive (slot " + std::to_string(k + 1) + ")");
        }
        detail::require_domain(std::isfinite(q_) && q_ > 0.0, "exponent q must be positive");
        if (variant_ == PriorVariant::Grouped || variant_ == PriorVariant::Matrix)
            detail::require_config(q_ == 1.0, "grouped and matrix priors require q = 1");
    }

    PriorVariant variant_;
    Index dim_;
    Vector a_;
    Vector b_;
    double q_;
    std::optional<GroupStructure> groups_;
};

struct FixedVariance {
    double variance;
};

struct InverseGammaVariance {
    double a;
    double b;
};

/// Observation noise: known variance, or inverse-gamma prior on the variance.
class NoiseModel {
public:
    static NoiseModel fixed(double variance)
    {
        detail::require_domain(std::isfinite(variance) && variance > 0.0, "noise variance must be positive");
        return NoiseModel(FixedVariance{variance});
    }

    static NoiseModel inverse_gamma(double a, double b)
    {
        detail::require_domain(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0,
                               "inverse-gamma noise parameters must be positive");
        return NoiseModel(InverseGammaVariance{a, b});
    }

    bool is_fixed() const { return std::holds_alternative<FixedVariance>(v_); }
    const FixedVariance& as_fixed() const { return std::get<FixedVariance>(v_); }
    const InverseGammaVariance& as_inverse_gamma() const { return std::get<InverseGammaVariance>(v_); }

private:
    explicit NoiseModel(std::variant<FixedVariance, InverseGammaVariance> v) : v_(v) {}
    std::variant<FixedVariance, InverseGammaVariance> v_;
};

/**
 * E-step weights. Vector-valued for the regression variants (length p for
 * PerCoordinate, K otherwise), a symmetric matrix for the Matrix variant.
 * Every entry is finite and strictly positive.
 */
class WeightSet {
public:
    static WeightSet from_vector(PriorVariant variant, Vector values)
    {
        detail::require_config(variant != PriorVariant::Matrix, "matrix weights need a matrix");
        for (Index k = 0; k < values.size(); ++k)
            detail::require_domain(std::isfinite(values(k)) && values(k) > 0.0,
                                   "weights must be finite and positive");
        WeightSet w;
        w.variant_ = variant;
        w.values_ = std::move(values);
        return w;
    }

    static WeightSet from_matrix(Matrix m)
    {
        detail::require_dim(m.rows() == m.cols(), "matrix weights must be square");
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) {
                detail::require_domain(std::isfinite(m(i, j)) && m(i, j) > 0.0,
                                       "weights must be finite and positive");
                detail::require_domain(m(i, j) == m(j, i), "matrix weights must be symmetric");
            }
        WeightSet w;
        w.variant_ = PriorVariant::Matrix;
        w.matrix_ = std::move(m);
        return w;
    }

    PriorVariant variant() const { return variant_; }
    const Vector& values() const { return values_; }
    const Matrix& matrix() const { return matrix_; }

    /// Penalty weight per coordinate (group weights broadcast through `groups`).
    Vector per_coordinate(const GroupStructure* groups) const
    {
        if (variant_ == PriorVariant::PerCoordinate) return values_;
        detail::require_config(groups != nullptr && variant_ != PriorVariant::Matrix,
                               "cannot broadcast these weights to coordinates");
        return groups->expand(values_);
    }

private:
    WeightSet() = default;
    PriorVariant variant_ = PriorVariant::PerCoordinate;
    Vector values_;
    Matrix matrix_;
};

} // namespace hiersparse
