#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace multiloop {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// Default tolerances (relative to the max coefficient magnitude).
inline constexpr double kTolExact = 1e-10;        // exact algebraic identities
inline constexpr double kTolExtrapolated = 1e-6;  // extrapolated limits

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input: wrong model kind, malformed data, precondition violation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A loop falls outside the factorable class (e.g. simultaneous vanishing
/// of the holomorphic entries).
class NotFactorableError : public Error {
 public:
  explicit NotFactorableError(const std::string& what) : Error(what) {}
};

/// A verified contract failed (used by the harness to signal exit code 4).
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(what) {}
};

/// Numerical breakdown: singular sections, non-convergent solves,
/// ill-conditioned bases.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

inline double rel_err(Complex a, Complex b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace multiloop
