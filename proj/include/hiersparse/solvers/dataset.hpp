#pragma once
#include <hiersparse/core/errors.hpp>
#include <hiersparse/core/types.hpp>

#include <cmath>
#include <string>

namespace hiersparse {

enum class ResponseKind { Continuous, Labels };

/**
 * Design matrix and response.
 *
 * Linear data is normally centered: the response mean and column means are
 * subtracted, which integrates out a flat-prior intercept. The original means
 * are kept in `y_mean` / `x_means`.
 */
struct Dataset {
    Matrix X;
    Vector y;
    ResponseKind kind = ResponseKind::Continuous;
    bool centered = false;
    double y_mean = 0.0;
    Vector x_means;

    Index n() const { return X.rows(); }
    Index p() const { return X.cols(); }

    static Dataset linear(Matrix X, Vector y, bool center = true)
    {
        check_shape(X, y);
        Dataset d;
        d.kind = ResponseKind::Continuous;
        d.x_means = Vector::Zero(X.cols());
        if (center) {
            d.x_means = X.colwise().mean().transpose();
            d.y_mean = y.mean();
            X.rowwise() -= d.x_means.transpose();
            y.array() -= d.y_mean;
            d.centered = true;
        }
        d.X = std::move(X);
        d.y = std::move(y);
        return d;
    }

    static Dataset logistic(Matrix X, Vector y)
    {
        check_shape(X, y);
        for (Index i = 0; i < y.size(); ++i)
            detail::require_domain(y(i) == 1.0 || y(i) == -1.0,
                                   "logistic labels must be -1 or +1 (row " + std::to_string(i + 1) + ")");
        Dataset d;
        d.kind = ResponseKind::Labels;
        d.x_means = Vector::Zero(X.cols());
        d.X = std::move(X);
        d.y = std::move(y);
        return d;
    }

private:
    static void check_shape(const Matrix& X, const Vector& y)
    {
        detail::require_dim(X.rows() >= 1 && X.cols() >= 1, "dataset needs n >= 1 and p >= 1");
        detail::require_dim(X.rows() == y.size(), "X rows and y length differ");
        detail::require_domain(X.allFinite() && y.allFinite(), "dataset has non-finite entries");
    }
};

} // namespace hiersparse
