#pragma once

#include <stdexcept>
#include <string>

namespace scatrec {

// Argument outside the mathematical domain of a routine (non-finite input,
// unsupported order, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative procedure (root bracketing, quadrature refinement) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A star domain whose boundary radius is not strictly positive.
class InvalidGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs that are individually valid but inconsistent with each other
// (incomplete DFT grid, noise model applied to the wrong kind of data, ...).
class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fit or solve that cannot produce a meaningful answer (all-zero data, ...).
class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace scatrec
