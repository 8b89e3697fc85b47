#pragma once

#include <vector>

#include "multiloop/common.hpp"

namespace multiloop {

/// Jacobi theta functions and Weierstrass functions for the lattice
/// Z + tau*Z, with argument reduction into the fundamental cell so the
/// q-series stay short and cancellation-free. The series are truncated
/// when the tail drops below 1e-15 of the partial sum.
///
/// Conventions: q = exp(i*pi*tau); theta1 is odd with theta1(z+1) = -theta1(z)
/// and theta1(z+tau) = -exp(-i*pi*tau - 2*pi*i*z) * theta1(z).
/// sigma(z) = exp(c z^2) theta1(z)/theta1'(0) with c = -theta1'''(0)/(6 theta1'(0)),
/// so that zeta(z) = sigma'/sigma = 1/z + O(z^3) near the origin.
class EllipticFunctions {
 public:
  explicit EllipticFunctions(Complex tau);

  Complex tau() const { return tau_; }
  Complex nome() const { return q_; }

  Complex theta1(Complex z) const;
  Complex theta1_prime(Complex z) const;
  Complex theta2(Complex z) const;
  Complex theta3(Complex z) const;
  Complex theta4(Complex z) const;

  Complex theta1_prime0() const { return th1p0_; }

  /// Quasi-period increments of Weierstrass zeta:
  /// zeta(z+1) = zeta(z) + eta_a, zeta(z+tau) = zeta(z) + eta_b.
  Complex eta_a() const { return 2.0 * c_; }
  Complex eta_b() const { return 2.0 * c_ * tau_ - 2.0 * kPi * kI; }

  Complex sigma(Complex z) const;
  Complex zeta(Complex z) const;  // Weierstrass zeta
  Complex wp(Complex z) const;
  Complex wp_prime(Complex z) const;

  /// Reduce z modulo the lattice into |Re| <= 1/2, |Im| <= Im(tau)/2;
  /// returns the reduced point and the integer shifts m, n with
  /// z = reduced + m + n*tau.
  Complex reduce(Complex z, int* m_shift = nullptr, int* n_shift = nullptr) const;

 private:
  Complex tau_;
  Complex q_;
  Complex c_;      // -theta1'''(0) / (6 theta1'(0))
  Complex th1p0_;  // theta1'(0)

  // raw series on reduced arguments
  Complex theta1_series(Complex z, int deriv) const;
  Complex theta_even_series(Complex z, int which) const;  // 2,3,4
};

/// F(u) = scale * exp(lambda*u) * prod sigma(u - zeros[i]) / prod sigma(u - poles[i]).
/// Elliptic iff lambda and the divisor sums satisfy the multiplier equations;
/// callers are responsible for that bookkeeping (see equivariant_map and the
/// Krichever-Novikov bases).
struct SigmaQuotient {
  const EllipticFunctions* ell = nullptr;
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
  Complex lambda{0.0};
  Complex scale{1.0};

  Complex eval(Complex u) const;
  /// Logarithmic derivative F'/F.
  Complex log_deriv(Complex u) const;
  /// Multiplier F(u+period)/F(u); period is 1 or tau.
  Complex multiplier(Complex period) const;
};

}  // namespace multiloop
