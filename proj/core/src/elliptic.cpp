#include "multiloop/elliptic.hpp"

#include <cmath>

namespace multiloop {

namespace {
constexpr int kMaxTerms = 64;
constexpr double kSeriesTol = 1e-16;
}  // namespace

EllipticFunctions::EllipticFunctions(Complex tau) : tau_(tau) {
  if (tau.imag() <= 0.0) {
    throw DomainError("EllipticFunctions: Im(tau) must be positive");
  }
  q_ = std::exp(kI * kPi * tau_);
  if (std::abs(q_) > 0.5 + 1e-12) {
    throw DomainError("EllipticFunctions: nome |q| > 0.5 unsupported (theta series contract)");
  }
  th1p0_ = theta1_series(0.0, 1);
  Complex th1ppp0 = theta1_series(0.0, 3);
  c_ = -th1ppp0 / (6.0 * th1p0_);
}

Complex EllipticFunctions::reduce(Complex z, int* m_shift, int* n_shift) const {
  // lattice Z + tau Z; tau may have a real part, peel the tau direction first
  double n = std::round(z.imag() / tau_.imag());
  Complex z1 = z - n * tau_;
  double m = std::round(z1.real());
  Complex z2 = z1 - m;
  if (m_shift) *m_shift = static_cast<int>(m);
  if (n_shift) *n_shift = static_cast<int>(n);
  return z2;
}

Complex EllipticFunctions::theta1_series(Complex z, int deriv) const {
  // theta1(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
  Complex acc = 0.0;
  double sign = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    double k = 2.0 * n + 1.0;
    Complex qpow = std::pow(q_, (n + 0.5) * (n + 0.5));
    Complex trig;
    double kp = k * kPi;
    switch (deriv % 4) {
      case 0: trig = std::sin(kp * z); break;
      case 1: trig = std::cos(kp * z); break;
      case 2: trig = -std::sin(kp * z); break;
      default: trig = -std::cos(kp * z); break;
    }
    Complex term = 2.0 * sign * qpow * std::pow(kp, deriv) * trig;
    acc += term;
    if (n > 2 && std::abs(term) < kSeriesTol * (std::abs(acc) + 1.0)) break;
    sign = -sign;
  }
  return acc;
}

Complex EllipticFunctions::theta_even_series(Complex z, int which) const {
  if (which == 2) {
    // theta2(z) = 2 sum_{n>=0} q^{(n+1/2)^2} cos((2n+1) pi z)
    Complex acc = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
      Complex term = 2.0 * std::pow(q_, (n + 0.5) * (n + 0.5)) *
                     std::cos((2.0 * n + 1.0) * kPi * z);
      acc += term;
      if (n > 2 && std::abs(term) < kSeriesTol * (std::abs(acc) + 1.0)) break;
    }
    return acc;
  }
  // theta3(z) = 1 + 2 sum q^{n^2} cos(2 n pi z); theta4 alternates signs
  Complex acc = 1.0;
  double sign = 1.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    sign = (which == 4) ? -sign : 1.0;
    Complex term = 2.0 * sign * std::pow(q_, static_cast<double>(n) * n) *
                   std::cos(2.0 * n * kPi * z);
    acc += term;
    if (n > 2 && std::abs(term) < kSeriesTol * (std::abs(acc) + 1.0)) break;
  }
  return acc;
}

namespace {
// Quasi-periodicity factor common to all four thetas:
// theta(z + m + n tau) = sign * exp(-i pi n^2 tau - 2 pi i n z_red) * theta(z_red)
Complex shift_factor(Complex z_red, int n, Complex tau) {
  return std::exp(-kI * kPi * static_cast<double>(n) * static_cast<double>(n) * tau -
                  2.0 * kPi * kI * static_cast<double>(n) * z_red);
}
}  // namespace

Complex EllipticFunctions::theta1(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
  return sign * shift_factor(zr, n, tau_) * theta1_series(zr, 0);
}

Complex EllipticFunctions::theta1_prime(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
  Complex f = shift_factor(zr, n, tau_);
  // d/dz [f(z) theta1(z_red)] with z_red = z - m - n tau
  return sign * f *
         (theta1_series(zr, 1) -
          2.0 * kPi * kI * static_cast<double>(n) * theta1_series(zr, 0));
}

Complex EllipticFunctions::theta2(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * shift_factor(zr, n, tau_) * theta_even_series(zr, 2);
}

Complex EllipticFunctions::theta3(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  return shift_factor(zr, n, tau_) * theta_even_series(zr, 3);
}

Complex EllipticFunctions::theta4(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * shift_factor(zr, n, tau_) * theta_even_series(zr, 4);
}

Complex EllipticFunctions::sigma(Complex z) const {
  return std::exp(c_ * z * z) * theta1(z) / th1p0_;
}

Complex EllipticFunctions::zeta(Complex z) const {
  int m = 0, n = 0;
  Complex zr = reduce(z, &m, &n);
  Complex l1 = theta1_series(zr, 1) / theta1_series(zr, 0);
  // log-derivative picks up -2 pi i per tau shift
  return 2.0 * c_ * z + l1 - 2.0 * kPi * kI * static_cast<double>(n);
}

Complex EllipticFunctions::wp(Complex z) const {
  Complex zr = reduce(z);
  Complex t0 = theta1_series(zr, 0);
  Complex t1 = theta1_series(zr, 1);
  Complex t2 = theta1_series(zr, 2);
  Complex l1 = t1 / t0;
  Complex l2 = t2 / t0 - l1 * l1;  // (log theta1)''
  return -2.0 * c_ - l2;
}

Complex EllipticFunctions::wp_prime(Complex z) const {
  Complex zr = reduce(z);
  Complex t0 = theta1_series(zr, 0);
  Complex t1 = theta1_series(zr, 1);
  Complex t2 = theta1_series(zr, 2);
  Complex t3 = theta1_series(zr, 3);
  Complex l1 = t1 / t0;
  Complex l3 = t3 / t0 - 3.0 * t2 * t1 / (t0 * t0) + 2.0 * l1 * l1 * l1;
  return -l3;
}

Complex SigmaQuotient::eval(Complex u) const {
  Complex acc = scale * std::exp(lambda * u);
  for (Complex a : zeros) acc *= ell->sigma(u - a);
  for (Complex b : poles) acc /= ell->sigma(u - b);
  return acc;
}

Complex SigmaQuotient::log_deriv(Complex u) const {
  Complex acc = lambda;
  for (Complex a : zeros) acc += ell->zeta(u - a);
  for (Complex b : poles) acc -= ell->zeta(u - b);
  return acc;
}

Complex SigmaQuotient::multiplier(Complex period) const {
  // sigma(w + p) = -sigma(w) exp(eta_p (w + p/2)) for p in {1, tau};
  // in the ratio the signs cancel pairwise when #zeros == #poles.
  Complex eta = (std::abs(period - 1.0) < 1e-14) ? ell->eta_a() : ell->eta_b();
  Complex d = 0.0;
  for (Complex b : poles) d += b;
  for (Complex a : zeros) d -= a;
  double parity = ((zeros.size() + poles.size()) % 2 == 0) ? 1.0 : -1.0;
  return parity * std::exp(lambda * period + eta * d);
}

}  // namespace multiloop
