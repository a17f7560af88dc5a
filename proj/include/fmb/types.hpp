#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fmb {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VectorX<double>;
using Mat = MatrixX<double>;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Argument outside the domain of a formula.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Gamma/digamma evaluated at a pole.
struct PoleError : DomainError {
  using DomainError::DomainError;
};

// Malformed or degenerate body description.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation has no exact representation (e.g. rotated box in n >= 3).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sample too coarse for the requested operation.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two star samples that must share a direction grid do not.
struct GridMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Quadrature and Monte Carlo policy shared by all evaluators.
struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  double mellin_tol = 1e-8;     // absolute target for Mellin tails
  double mellin_r0_scale = 50;  // R0 = scale / width
  int max_doublings = 16;       // tail blocks [R, 2R)
  int mc_samples = 200000;
  std::uint64_t seed = 42;
  int max_depth = 60;
};

}  // namespace fmb
