#include "doctest.h"

#include <cmath>

#include "multiloop/elliptic.hpp"
#include "multiloop/quadrature.hpp"
#include "multiloop/rng.hpp"

using namespace multiloop;

namespace {
const Complex kTau(0.0, 1.2);
}

TEST_CASE("theta1 quasi-periodicity") {
  EllipticFunctions ell(kTau);
  CounterRng rng(3);
  for (int t = 0; t < 6; ++t) {
    Complex z(rng.uniform(-0.4, 0.4), rng.uniform(-0.5, 0.5));
    Complex lhs1 = ell.theta1(z + 1.0);
    CHECK(std::abs(lhs1 + ell.theta1(z)) < 1e-12 * (1.0 + std::abs(lhs1)));
    Complex factor = -std::exp(-kI * kPi * kTau - 2.0 * kPi * kI * z);
    Complex lhs2 = ell.theta1(z + kTau);
    CHECK(std::abs(lhs2 - factor * ell.theta1(z)) < 1e-11 * (1.0 + std::abs(lhs2)));
  }
}

TEST_CASE("even thetas: signs under shifts and the theta-constant identity") {
  EllipticFunctions ell(kTau);
  Complex z(0.17, 0.21);
  Complex lam = std::exp(-kI * kPi * kTau - 2.0 * kPi * kI * z);
  CHECK(std::abs(ell.theta2(z + 1.0) + ell.theta2(z)) < 1e-12);
  CHECK(std::abs(ell.theta3(z + 1.0) - ell.theta3(z)) < 1e-12);
  CHECK(std::abs(ell.theta4(z + 1.0) - ell.theta4(z)) < 1e-12);
  CHECK(std::abs(ell.theta2(z + kTau) - lam * ell.theta2(z)) < 1e-11);
  CHECK(std::abs(ell.theta3(z + kTau) - lam * ell.theta3(z)) < 1e-11);
  CHECK(std::abs(ell.theta4(z + kTau) + lam * ell.theta4(z)) < 1e-11);

  // theta1'(0) = pi * theta2(0) theta3(0) theta4(0)
  Complex rhs = kPi * ell.theta2(0.0) * ell.theta3(0.0) * ell.theta4(0.0);
  CHECK(std::abs(ell.theta1_prime0() - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("zeta has residue-1 pole and the stated quasi-periods") {
  EllipticFunctions ell(kTau);
  // zeta(z) - 1/z -> 0 with an O(z^3) tail
  for (double r : {1e-2, 1e-3}) {
    Complex z(r, 0.6 * r);
    Complex diff = ell.zeta(z) - 1.0 / z;
    CHECK(std::abs(diff) < 10.0 * r * r * r + 1e-12);
  }
  CounterRng rng(5);
  for (int t = 0; t < 4; ++t) {
    Complex z(rng.uniform(-0.3, 0.3), rng.uniform(-0.4, 0.4));
    CHECK(std::abs(ell.zeta(z + 1.0) - ell.zeta(z) - ell.eta_a()) < 1e-11);
    CHECK(std::abs(ell.zeta(z + kTau) - ell.zeta(z) - ell.eta_b()) < 1e-11);
  }
  // Legendre relation
  Complex legendre = ell.eta_a() * kTau - ell.eta_b();
  CHECK(std::abs(legendre - 2.0 * kPi * kI) < 1e-12);
}

TEST_CASE("wp: ellipticity, evenness, Laurent behavior, critical points") {
  EllipticFunctions ell(kTau);
  CounterRng rng(9);
  for (int t = 0; t < 5; ++t) {
    Complex z(rng.uniform(0.05, 0.45), rng.uniform(0.05, 0.5));
    Complex w = ell.wp(z);
    CHECK(std::abs(ell.wp(z + 1.0) - w) < 1e-10 * (1.0 + std::abs(w)));
    CHECK(std::abs(ell.wp(z + kTau) - w) < 1e-10 * (1.0 + std::abs(w)));
    CHECK(std::abs(ell.wp(-z) - w) < 1e-10 * (1.0 + std::abs(w)));
    Complex wp = ell.wp_prime(z);
    CHECK(std::abs(ell.wp_prime(-z) + wp) < 1e-10 * (1.0 + std::abs(wp)));
  }
  // Laurent tails: wp - 1/z^2 = O(z^2), wp' + 2/z^3 = O(z); ratio test over
  // two radii pins the order without guessing the Eisenstein constants
  {
    Complex z1(1e-2, -0.3e-2), z2 = 0.5 * z1;
    Complex d1 = ell.wp(z1) - 1.0 / (z1 * z1);
    Complex d2 = ell.wp(z2) - 1.0 / (z2 * z2);
    CHECK(std::abs(d2) < 0.3 * std::abs(d1) + 1e-12);  // ~ factor 1/4
    Complex e1 = ell.wp_prime(z1) + 2.0 / (z1 * z1 * z1);
    Complex e2 = ell.wp_prime(z2) + 2.0 / (z2 * z2 * z2);
    CHECK(std::abs(e2) < 0.6 * std::abs(e1) + 1e-12);  // ~ factor 1/2
  }
  // wp' vanishes at the half periods, and e1 + e2 + e3 = 0
  Complex h1 = 0.5, h2 = kTau * 0.5, h3 = 0.5 + kTau * 0.5;
  CHECK(std::abs(ell.wp_prime(h1)) < 1e-10);
  CHECK(std::abs(ell.wp_prime(h2)) < 1e-10);
  CHECK(std::abs(ell.wp_prime(h3)) < 1e-10);
  CHECK(std::abs(ell.wp(h1) + ell.wp(h2) + ell.wp(h3)) < 1e-10);
}

TEST_CASE("wp' is the derivative of wp (finite differences)") {
  EllipticFunctions ell(kTau);
  Complex z(0.23, 0.31);
  double h = 1e-5;
  Complex fd = (ell.wp(z + h) - ell.wp(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - ell.wp_prime(z)) < 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("sigma: odd, sigma'(0) = 1 normalization, lattice multipliers") {
  EllipticFunctions ell(kTau);
  Complex z(0.21, 0.17);
  CHECK(std::abs(ell.sigma(-z) + ell.sigma(z)) < 1e-12);
  // sigma(z)/z -> 1
  for (double r : {1e-3, 1e-4}) {
    CHECK(std::abs(ell.sigma(Complex(r, 0)) / r - 1.0) < 1e-6);
  }
  // sigma(z+1) = -sigma(z) exp(eta_a (z + 1/2))
  Complex lhs = ell.sigma(z + 1.0);
  Complex rhs = -ell.sigma(z) * std::exp(ell.eta_a() * (z + 0.5));
  CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(lhs)));
  Complex lhsb = ell.sigma(z + kTau);
  Complex rhsb = -ell.sigma(z) * std::exp(ell.eta_b() * (z + kTau * 0.5));
  CHECK(std::abs(lhsb - rhsb) < 1e-11 * (1.0 + std::abs(lhsb)));
}

TEST_CASE("zeta is the log-derivative of sigma, wp = -zeta'") {
  EllipticFunctions ell(kTau);
  Complex z(0.13, 0.27);
  double h = 1e-5;
  Complex fd_logsigma =
      (ell.sigma(z + h) - ell.sigma(z - h)) / (2.0 * h) / ell.sigma(z);
  CHECK(std::abs(fd_logsigma - ell.zeta(z)) < 1e-7);
  Complex fd_zeta = (ell.zeta(z + h) - ell.zeta(z - h)) / (2.0 * h);
  CHECK(std::abs(fd_zeta + ell.wp(z)) < 1e-6 * (1.0 + std::abs(fd_zeta)));
}

TEST_CASE("sigma quotient: elliptic when the divisor sums match") {
  EllipticFunctions ell(kTau);
  SigmaQuotient f;
  f.ell = &ell;
  f.zeros = {Complex(0.2, 0.3), Complex(0.7, 0.5)};
  f.poles = {Complex(0.5, 0.1), Complex(0.3, 0.65)};
  CHECK(std::abs(f.multiplier(1.0) - 1.0) > 1e-3);  // sums differ: not elliptic

  // move one pole so the sums agree exactly
  f.poles[1] = f.zeros[0] + f.zeros[1] - f.poles[0];
  CHECK(std::abs(f.multiplier(1.0) - 1.0) < 1e-12);
  CHECK(std::abs(f.multiplier(kTau) - 1.0) < 1e-12);
  Complex u(0.31, 0.22);
  CHECK(std::abs(f.eval(u + 1.0) - f.eval(u)) < 1e-10 * (1.0 + std::abs(f.eval(u))));
  CHECK(std::abs(f.eval(u + kTau) - f.eval(u)) < 1e-10 * (1.0 + std::abs(f.eval(u))));
  // log-derivative consistent with finite differences
  double h = 1e-6;
  Complex fd = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h) / f.eval(u);
  CHECK(std::abs(fd - f.log_deriv(u)) < 1e-5 * (1.0 + std::abs(fd)));
}

TEST_CASE("nome guard") {
  CHECK_THROWS_AS(EllipticFunctions(Complex(0.0, 0.05)), DomainError);  // |q| > 0.5
  CHECK_THROWS_AS(EllipticFunctions(Complex(0.0, -1.0)), DomainError);
}
