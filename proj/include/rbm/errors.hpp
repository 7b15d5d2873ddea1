#pragma once

#include <stdexcept>
#include <string>

namespace rbm {

/// Invalid numeric argument (nonpositive time, sigma, bad ordering of times).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input is valid in general but not handled by this evaluator
/// (e.g. a stationary initial law passed to a fixed-x0 formula).
class UnsupportedInput : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The asymptotic result requested is not proven for these parameters.
class UnsupportedRegime : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Level or argument outside the domain where a decomposition holds.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Case deliberately left open (only bracketed, never evaluated).
class UncoveredCase : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Integrand or objective returned a non-finite value.
class EvaluationError : public std::runtime_error {
public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what + " at x=" + std::to_string(abscissa)),
        abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

/// Target value not bracketed by the search interval.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A callback broke its documented contract (e.g. returned a value outside [0,1]).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A Monte Carlo sampler threw; carries the global sample index.
class SamplerError : public std::runtime_error {
public:
  SamplerError(const std::string& what, std::size_t index)
      : std::runtime_error("sample " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

}  // namespace rbm
