#pragma once
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hiersparse {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched vector or matrix sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or unsupported combination of settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Hyperparameter moment requested where it does not exist.
class MomentUndefinedError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Requested (mean, variance) pair cannot be matched by any hyperparameters.
class InfeasibleMomentsError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A matrix that must be nonsingular is not.
class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

/// Internal numerical failure (loss of positive definiteness, singular solve).
class NumericalError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require_dim(bool ok, const std::string& what)
{
    if (!ok) throw DimensionError(what);
}

inline void require_domain(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

inline void require_config(bool ok, const std::string& what)
{
    if (!ok) throw ConfigError(what);
}

inline std::string format_sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace detail
} // namespace hiersparse
