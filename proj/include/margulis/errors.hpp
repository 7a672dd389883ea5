#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHyperbolicError : Error {
  using Error::Error;
};

struct DegenerateEndpointsError : Error {
  using Error::Error;
};

struct DegeneratePairError : Error {
  using Error::Error;
};

struct SingularSolveError : Error {
  using Error::Error;
};

struct NotOnLeafError : Error {
  double residual;
  NotOnLeafError(const std::string& msg, double r) : Error(msg), residual(r) {}
};

struct ZeroDisplacementError : Error {
  using Error::Error;
};

struct NoOrbitFoundError : Error {
  using Error::Error;
};

struct NotCoveredError : Error {
  using Error::Error;
};

struct WordError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace margulis
