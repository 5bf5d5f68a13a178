#pragma once

#include <stdexcept>
#include <string>

namespace pentagon {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear algebra
struct SingularMatrix : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};

// Construction inputs
struct DegenerateParameters : Error {
  using Error::Error;
};
struct DegenerateGram : Error {
  using Error::Error;
};
struct DegenerateDelta : Error {
  using Error::Error;
};
struct NotGaussianGeneric : Error {
  using Error::Error;
};

// Grassmann algebra
struct NotNilpotentSafe : Error {
  using Error::Error;
};
struct GeneratorMismatch : Error {
  using Error::Error;
};

// Pentagon proportionality check
struct InconsistentRatio : Error {
  InconsistentRatio(const std::string& msg, double dev) : Error(msg), deviation(dev) {}
  double deviation;
};
struct ZeroSide : Error {
  using Error::Error;
};

// CLI / IO
struct ConfigError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace pentagon
