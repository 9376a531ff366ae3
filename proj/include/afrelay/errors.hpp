#pragma once

#include <stdexcept>
#include <string>

namespace afrelay {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// An iterative or adaptive procedure stopped before reaching its tolerance.
/// Carries the best value found and the error it achieved.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

  private:
    double best_estimate_;
    double achieved_error_;
};

/// Moment triple that no nondegenerate distribution can match (e.g. zero variance).
class DegenerateMomentsError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Two fixed interferers share a Gamma rate m/Omega; partial fractions need distinct poles.
class CoincidentRatesError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed scenario or configuration file.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace afrelay
