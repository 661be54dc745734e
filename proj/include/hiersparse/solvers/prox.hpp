#pragma once
#include <hiersparse/core/types.hpp>

#include <algorithm>
#include <cmath>

namespace hiersparse {

/// sign(z) * max(|z| - gamma, 0)
inline double soft_threshold(double z, double gamma)
{
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

/// z * max(0, 1 - gamma / ||z||_2); the zero vector when ||z||_2 <= gamma.
inline Vector group_soft_threshold(const Vector& z, double gamma)
{
    const double norm = z.norm();
    if (norm <= gamma) return Vector::Zero(z.size());
    return z * (1.0 - gamma / norm);
}

} // namespace hiersparse
