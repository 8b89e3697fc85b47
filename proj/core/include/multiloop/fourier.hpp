#pragma once

#include <functional>
#include <vector>

#include "multiloop/common.hpp"

namespace multiloop {

/// Truncated Laurent/Fourier representation of a function on the boundary
/// curves of a surface model. Each boundary circle carries a dense
/// coefficient table c_n, n in [-N, N], together with the grid of
/// equispaced samples the table was fitted from. Values are immutable
/// after construction; all operations below are pure.
class LaurentBoundaryFunction {
 public:
  LaurentBoundaryFunction() = default;

  /// Zero function on `circles` boundary components.
  static LaurentBoundaryFunction zero(int circles, int truncation,
                                      int grid_size = 0);

  /// Constant function.
  static LaurentBoundaryFunction constant(Complex value, int circles,
                                          int truncation, int grid_size = 0);

  /// Build from per-circle coefficient tables (each of length 2N+1,
  /// index 0 <-> mode -N).
  static LaurentBoundaryFunction from_coefficients(
      std::vector<CVector> coefficients, int grid_size = 0);

  /// Single-circle monomial c * z^n.
  static LaurentBoundaryFunction monomial(int n, Complex c, int truncation,
                                          int grid_size = 0);

  int circles() const { return static_cast<int>(coefficients_.size()); }
  int truncation() const { return truncation_; }
  int grid_size() const { return grid_size_; }

  Complex coeff(int circle, int n) const;
  const CVector& coefficients(int circle) const {
    return coefficients_[static_cast<size_t>(circle)];
  }
  const CVector& samples(int circle) const {
    return samples_[static_cast<size_t>(circle)];
  }

  /// Coefficient-sum evaluation at angle theta on the given circle.
  Complex eval(int circle, double theta) const;

  /// Largest |c_n| over all circles (used for relative tolerances).
  double max_abs_coeff() const;
  double max_abs_sample() const;

  LaurentBoundaryFunction operator+(const LaurentBoundaryFunction& o) const;
  LaurentBoundaryFunction operator-(const LaurentBoundaryFunction& o) const;
  LaurentBoundaryFunction operator*(Complex s) const;

  /// Pointwise product on the sample grid, refitted at the wider of the two
  /// truncations (or `out_truncation` if given).
  LaurentBoundaryFunction pointwise_mul(const LaurentBoundaryFunction& o,
                                        int out_truncation = -1) const;

  /// Pointwise complex conjugate on the grid. On S this is the function
  /// q -> f(R(q))^*, since the reflection fixes the boundary.
  LaurentBoundaryFunction conj_reflect() const;

  /// Pointwise map on samples, refitted.
  LaurentBoundaryFunction map_samples(
      const std::function<Complex(Complex)>& fn) const;

 private:
  int truncation_ = 0;
  int grid_size_ = 0;
  std::vector<CVector> coefficients_;  // per circle, length 2N+1
  std::vector<CVector> samples_;       // per circle, length grid_size

  void rebuild_samples();
};

enum class DiskPart { minus, zero, plus };

/// Fit Laurent coefficients from equispaced samples (trigonometric
/// interpolation / DFT projection). Throws DomainError if the sample count
/// is below 2N+1 (aliasing).
LaurentBoundaryFunction laurent_from_samples(const std::vector<CVector>& samples,
                                             int truncation);

/// Classical disk split f = f_- + f_0 + f_+ (negative modes, zero mode,
/// positive modes). Requires a single boundary circle.
LaurentBoundaryFunction project_disk(const LaurentBoundaryFunction& f,
                                     DiskPart part);

/// Cauchy-kernel Hilbert transform on the circle: diagonal in the monomial
/// basis with entries i*sign(n).
LaurentBoundaryFunction hilbert_transform(const LaurentBoundaryFunction& f);

struct DecayProfile {
  double sobolev_half_norm = 0.0;  // sum |n| |c_n|^2
  double geometric_rate = 1.0;     // fitted tail rate in (0, 1]
};

DecayProfile decay_profile(const LaurentBoundaryFunction& f);

/// Power-series evaluation sum_{n=n_min}^{n_max} c_n z^n of a single-circle
/// function at an arbitrary point (used for holomorphic extension on the
/// disk model).
Complex eval_power_series(const LaurentBoundaryFunction& f, Complex z,
                          int n_min, int n_max);

}  // namespace multiloop
