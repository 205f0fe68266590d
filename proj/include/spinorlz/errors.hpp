#pragma once

#include <stdexcept>
#include <string>

namespace spinorlz {

/// Violated precondition or malformed parameter.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its accuracy contract.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration gave up; `tau()` is where the step size underflowed.
class IntegrationError : public NumericalError
{
public:
  IntegrationError(const std::string& what, double tau)
    : NumericalError(what + " (at tau=" + std::to_string(tau) + ")"), mTau(tau)
  {}

  double tau() const noexcept { return mTau; }

private:
  double mTau;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace spinorlz
