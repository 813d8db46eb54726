#ifndef QUQUART_ERRORS_HPP
#define QUQUART_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ququart {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Wavelength outside the published validity range of a Sellmeier fit.
// Extrapolation is never silent.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// 1/lambda_p != 1/lambda_1 + 1/lambda_2 beyond tolerance.
class EnergyMismatchError : public Error {
 public:
  using Error::Error;
};

// No sign change of the collinear mismatch on [0, pi/2].
class NoPhaseMatchingError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for lambda_1 == lambda_2.
class DegenerateConfigError : public Error {
 public:
  using Error::Error;
};

// Detuning grid too coarse or too narrow for the requested quantity.
class GridError : public Error {
 public:
  using Error::Error;
};

class ZeroSpectrumError : public Error {
 public:
  using Error::Error;
};

class NonUnitaryError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to reach its target; CLI exit code 3.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Config-file parse or validation failure; CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// tau_2 > tau_1: the first-order closed form is invalid.
class RegimeViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ququart

#endif
