#include "doctest.h"

#include <cmath>

#include "multiloop/fourier.hpp"
#include "multiloop/rng.hpp"

using namespace multiloop;

namespace {

LaurentBoundaryFunction random_function(CounterRng& rng, int circles, int nn,
                                        int band = -1) {
  if (band < 0) band = nn;
  std::vector<CVector> coeffs;
  for (int c = 0; c < circles; ++c) {
    CVector v = CVector::Zero(2 * nn + 1);
    for (int n = -band; n <= band; ++n) {
      v[n + nn] = rng.complex_in_disk(1.0);
    }
    coeffs.push_back(v);
  }
  return LaurentBoundaryFunction::from_coefficients(coeffs);
}

}  // namespace

TEST_CASE("constant and single-mode samples fit exactly") {
  const int G = 64;
  std::vector<CVector> s1{CVector::Constant(G, Complex(1.0, 0.0))};
  auto f1 = laurent_from_samples(s1, 8);
  CHECK(std::abs(f1.coeff(0, 0) - 1.0) < 1e-14);
  for (int n = -8; n <= 8; ++n) {
    if (n != 0) CHECK(std::abs(f1.coeff(0, n)) < 1e-14);
  }

  CVector s2(G);
  for (int j = 0; j < G; ++j) s2[j] = std::polar(1.0, 2.0 * kPi * j / G);
  auto f2 = laurent_from_samples({s2}, 8);
  CHECK(std::abs(f2.coeff(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(f2.coeff(0, -1)) < 1e-14);
}

TEST_CASE("round trip coefficients -> samples -> coefficients") {
  CounterRng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_function(rng, 2, 16);
    auto g = laurent_from_samples({f.samples(0), f.samples(1)}, 16);
    double scale = f.max_abs_coeff();
    for (int c = 0; c < 2; ++c) {
      for (int n = -16; n <= 16; ++n) {
        CHECK(std::abs(f.coeff(c, n) - g.coeff(c, n)) < 1e-12 * scale);
      }
    }
    // evaluation through the coefficient sum reproduces the stored samples
    for (int j = 0; j < f.grid_size(); j += 17) {
      double theta = 2.0 * kPi * j / f.grid_size();
      CHECK(std::abs(f.eval(0, theta) - f.samples(0)[j]) < 1e-12 * (scale + 1.0));
    }
  }
}

TEST_CASE("aliasing guard") {
  std::vector<CVector> s{CVector::Constant(16, Complex(1.0, 0.0))};
  CHECK_THROWS_AS(laurent_from_samples(s, 8), DomainError);  // needs >= 17
}

TEST_CASE("project_disk splits monomials") {
  // f = 3 + z + 1/z
  auto f = LaurentBoundaryFunction::monomial(0, 3.0, 4) +
           LaurentBoundaryFunction::monomial(1, 1.0, 4) +
           LaurentBoundaryFunction::monomial(-1, 1.0, 4);
  auto fm = project_disk(f, DiskPart::minus);
  auto f0 = project_disk(f, DiskPart::zero);
  auto fp = project_disk(f, DiskPart::plus);
  CHECK(std::abs(fm.coeff(0, -1) - 1.0) < 1e-15);
  CHECK(std::abs(f0.coeff(0, 0) - 3.0) < 1e-15);
  CHECK(std::abs(fp.coeff(0, 1) - 1.0) < 1e-15);
  CHECK(fm.max_abs_coeff() == doctest::Approx(1.0));

  auto zero = LaurentBoundaryFunction::zero(1, 4);
  CHECK(project_disk(zero, DiskPart::minus).max_abs_coeff() == 0.0);
  CHECK(project_disk(zero, DiskPart::zero).max_abs_coeff() == 0.0);
  CHECK(project_disk(zero, DiskPart::plus).max_abs_coeff() == 0.0);
}

TEST_CASE("projector triple: sums to identity, idempotent, mutually annihilating") {
  CounterRng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    auto f = random_function(rng, 1, 12);
    auto fm = project_disk(f, DiskPart::minus);
    auto f0 = project_disk(f, DiskPart::zero);
    auto fp = project_disk(f, DiskPart::plus);
    auto sum = fm + f0 + fp;
    double scale = f.max_abs_coeff();
    for (int n = -12; n <= 12; ++n) {
      CHECK(std::abs(sum.coeff(0, n) - f.coeff(0, n)) < 1e-14 * scale);
    }
    // idempotence and annihilation
    CHECK((project_disk(fp, DiskPart::plus) - fp).max_abs_coeff() < 1e-14 * scale);
    CHECK(project_disk(fp, DiskPart::minus).max_abs_coeff() < 1e-14 * scale);
    CHECK(project_disk(fm, DiskPart::zero).max_abs_coeff() < 1e-14 * scale);
  }
}

TEST_CASE("project_disk rejects multi-circle input") {
  auto f = LaurentBoundaryFunction::zero(2, 4);
  CHECK_THROWS_AS(project_disk(f, DiskPart::plus), DomainError);
}

TEST_CASE("hilbert transform: single harmonic and zero mode") {
  // f = z + 1/z -> i z - i/z   (2 cos -> -2 sin)
  auto f = LaurentBoundaryFunction::monomial(1, 1.0, 4) +
           LaurentBoundaryFunction::monomial(-1, 1.0, 4);
  auto hf = hilbert_transform(f);
  CHECK(std::abs(hf.coeff(0, 1) - kI) < 1e-15);
  CHECK(std::abs(hf.coeff(0, -1) + kI) < 1e-15);

  auto one = LaurentBoundaryFunction::constant(1.0, 1, 4);
  CHECK(hilbert_transform(one).max_abs_coeff() < 1e-15);
}

TEST_CASE("hilbert transform: H^2 = -(I - P0), linear, real -> real") {
  CounterRng rng(23);
  auto f = random_function(rng, 1, 10);
  auto hh = hilbert_transform(hilbert_transform(f));
  auto expect = (f - project_disk(f, DiskPart::zero)) * Complex(-1.0, 0.0);
  CHECK((hh - expect).max_abs_coeff() < 1e-14 * f.max_abs_coeff());

  // real function on the grid -> real transform (conjugate-symmetric coeffs)
  auto fr = f.map_samples([](Complex v) { return Complex(v.real(), 0.0); });
  auto hfr = hilbert_transform(fr);
  for (int j = 0; j < fr.grid_size(); j += 7) {
    CHECK(std::abs(hfr.samples(0)[j].imag()) < 1e-12 * (1.0 + fr.max_abs_sample()));
  }
}

TEST_CASE("decay profile: exact norms and tail rate") {
  auto f = LaurentBoundaryFunction::monomial(1, 1.0, 8);
  CHECK(decay_profile(f).sobolev_half_norm == doctest::Approx(1.0));
  CHECK(decay_profile(LaurentBoundaryFunction::zero(1, 8)).sobolev_half_norm == 0.0);

  // c_n = r^{|n|} -> fitted rate within 5% of r for N >= 32
  for (double r : {0.5, 0.8}) {
    const int nn = 32;
    CVector c(2 * nn + 1);
    for (int n = -nn; n <= nn; ++n) c[n + nn] = std::pow(r, std::abs(n));
    auto g = LaurentBoundaryFunction::from_coefficients({c});
    double fit = decay_profile(g).geometric_rate;
    CHECK(std::abs(fit - r) < 0.05 * r);
  }
}

TEST_CASE("decay profile monotone under tail truncation") {
  CounterRng rng(5);
  auto f = random_function(rng, 1, 16);
  double full = decay_profile(f).sobolev_half_norm;
  // truncate the tail: zero out |n| > 8
  CVector c = CVector::Zero(2 * 16 + 1);
  for (int n = -8; n <= 8; ++n) c[n + 16] = f.coeff(0, n);
  auto g = LaurentBoundaryFunction::from_coefficients({c});
  CHECK(decay_profile(g).sobolev_half_norm <= full + 1e-15);
}

TEST_CASE("power-law coefficient families keep their Holder-type bound under projection") {
  // |c_n| <= C |n|^{-(s+1)} -> each projected part obeys the same bound
  CounterRng rng(31);
  for (double s : {0.3, 0.7, 1.4}) {
    const int nn = 48;
    CVector c = CVector::Zero(2 * nn + 1);
    for (int n = -nn; n <= nn; ++n) {
      if (n == 0) { c[nn] = 1.0; continue; }
      double mag = std::pow(std::abs(static_cast<double>(n)), -(s + 1.0));
      c[n + nn] = mag * std::polar(1.0, 2.0 * kPi * rng.uniform());
    }
    auto f = LaurentBoundaryFunction::from_coefficients({c});
    auto bound = [&](const LaurentBoundaryFunction& g) {
      double worst = 0.0;
      for (int n = -nn; n <= nn; ++n) {
        if (n == 0) continue;
        worst = std::max(worst, std::abs(g.coeff(0, n)) *
                                    std::pow(std::abs(static_cast<double>(n)), s + 1.0));
      }
      return worst;
    };
    double cf = bound(f);
    CHECK(bound(project_disk(f, DiskPart::plus)) <= cf + 1e-15);
    CHECK(bound(project_disk(f, DiskPart::minus)) <= cf + 1e-15);
  }
}
