#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>

#include <cmath>

namespace hiersparse::sim {

struct SupportScore {
    double error = 0.0;
    bool correct = false;
    Index false_positives = 0;
    Index false_negatives = 0;
};

/// l2 error plus support agreement of a coefficient estimate.
inline SupportScore support_metrics(const Vector& estimate, const Vector& truth)
{
    hiersparse::detail::require_dim(estimate.size() == truth.size(), "estimate and truth differ in length");
    SupportScore s;
    s.error = (estimate - truth).norm();
    for (Index j = 0; j < truth.size(); ++j) {
        if (truth(j) == 0.0 && estimate(j) != 0.0) ++s.false_positives;
        if (truth(j) != 0.0 && estimate(j) == 0.0) ++s.false_negatives;
    }
    s.correct = s.false_positives == 0 && s.false_negatives == 0;
    return s;
}

/// Frobenius error over the upper triangle (diagonal included); support over off-diagonal entries.
inline SupportScore support_metrics(const Matrix& estimate, const Matrix& truth)
{
    hiersparse::detail::require_dim(estimate.rows() == truth.rows() && estimate.cols() == truth.cols() &&
                            truth.rows() == truth.cols(),
                        "estimate and truth differ in shape");
    SupportScore s;
    double sq = 0.0;
    for (Index i = 0; i < truth.rows(); ++i)
        for (Index j = i; j < truth.cols(); ++j) {
            const double d = estimate(i, j) - truth(i, j);
            sq += d * d;
            if (i == j) continue;
            if (truth(i, j) == 0.0 && estimate(i, j) != 0.0) ++s.false_positives;
            if (truth(i, j) != 0.0 && estimate(i, j) == 0.0) ++s.false_negatives;
        }
    s.error = std::sqrt(sq);
    s.correct = s.false_positives == 0 && s.false_negatives == 0;
    return s;
}

} // namespace hiersparse::sim
