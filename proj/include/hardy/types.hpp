#pragma once

#include <Eigen/Core>

#include <numbers>
#include <stdexcept>
#include <string>

namespace hardy {

using Scalar = double;
using Array = Eigen::ArrayXXd;                      // cell values, (nx, ny)
using BoolColumn = Eigen::Array<bool, Eigen::Dynamic, 1>;
using Vec2 = Eigen::Vector2d;
using Vector = Eigen::VectorXd;

inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad user-supplied configuration (CLI maps this to exit code 2)
struct ConfigError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct QuadratureError : Error {
  using Error::Error;
};

// ball smaller than the grid can resolve
struct ResolutionError : Error {
  using Error::Error;
};

struct DegenerateInputError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct AssemblyError : Error {
  using Error::Error;
};

struct SizeError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, Scalar best, Scalar res)
      : Error(msg), best_value(best), residual(res) {}
  Scalar best_value;
  Scalar residual;
};

}  // namespace hardy
