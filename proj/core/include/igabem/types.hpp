#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace igabem {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

/// Invalid user-facing parameter or configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Structurally inconsistent inputs (dimension mismatch, unmatched knots, ...).
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Geometry violating a required property (non-positive weight, degenerate map, ...).
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace igabem
