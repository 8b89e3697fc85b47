#include "multiloop/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace multiloop {

namespace {

int default_grid(int truncation, int requested) {
  if (requested > 0) return requested;
  return 4 * std::max(truncation, 1);
}

}  // namespace

void LaurentBoundaryFunction::rebuild_samples() {
  samples_.clear();
  samples_.reserve(coefficients_.size());
  const int nn = truncation_;
  for (const CVector& c : coefficients_) {
    CVector s(grid_size_);
    for (int j = 0; j < grid_size_; ++j) {
      double theta = 2.0 * kPi * j / grid_size_;
      Complex acc = 0.0;
      for (int n = -nn; n <= nn; ++n) {
        acc += c[n + nn] * std::polar(1.0, n * theta);
      }
      s[j] = acc;
    }
    samples_.push_back(std::move(s));
  }
}

LaurentBoundaryFunction LaurentBoundaryFunction::zero(int circles,
                                                      int truncation,
                                                      int grid_size) {
  if (circles < 1 || truncation < 1) {
    throw DomainError("LaurentBoundaryFunction: need >=1 circle and N>=1");
  }
  LaurentBoundaryFunction f;
  f.truncation_ = truncation;
  f.grid_size_ = default_grid(truncation, grid_size);
  for (int c = 0; c < circles; ++c) {
    f.coefficients_.push_back(CVector::Zero(2 * truncation + 1));
    f.samples_.push_back(CVector::Zero(f.grid_size_));
  }
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::constant(Complex value,
                                                          int circles,
                                                          int truncation,
                                                          int grid_size) {
  LaurentBoundaryFunction f = zero(circles, truncation, grid_size);
  for (int c = 0; c < circles; ++c) {
    f.coefficients_[static_cast<size_t>(c)][truncation] = value;
    f.samples_[static_cast<size_t>(c)].setConstant(value);
  }
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::from_coefficients(
    std::vector<CVector> coefficients, int grid_size) {
  if (coefficients.empty()) throw DomainError("from_coefficients: no circles");
  const int len = static_cast<int>(coefficients.front().size());
  if (len % 2 == 0 || len < 3) {
    throw DomainError("from_coefficients: coefficient table must have odd length >= 3");
  }
  for (const CVector& c : coefficients) {
    if (static_cast<int>(c.size()) != len) {
      throw DomainError("from_coefficients: inconsistent table sizes");
    }
  }
  LaurentBoundaryFunction f;
  f.truncation_ = (len - 1) / 2;
  f.grid_size_ = default_grid(f.truncation_, grid_size);
  if (f.grid_size_ < len) {
    throw DomainError("from_coefficients: grid smaller than 2N+1");
  }
  f.coefficients_ = std::move(coefficients);
  f.rebuild_samples();
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::monomial(int n, Complex c,
                                                          int truncation,
                                                          int grid_size) {
  if (std::abs(n) > truncation) {
    throw DomainError("monomial: mode outside truncation");
  }
  LaurentBoundaryFunction f = zero(1, truncation, grid_size);
  f.coefficients_[0][n + truncation] = c;
  f.rebuild_samples();
  return f;
}

Complex LaurentBoundaryFunction::coeff(int circle, int n) const {
  if (circle < 0 || circle >= circles()) {
    throw DomainError("coeff: circle index out of range");
  }
  if (std::abs(n) > truncation_) return 0.0;
  return coefficients_[static_cast<size_t>(circle)][n + truncation_];
}

Complex LaurentBoundaryFunction::eval(int circle, double theta) const {
  const CVector& c = coefficients_[static_cast<size_t>(circle)];
  Complex acc = 0.0;
  for (int n = -truncation_; n <= truncation_; ++n) {
    acc += c[n + truncation_] * std::polar(1.0, n * theta);
  }
  return acc;
}

double LaurentBoundaryFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const CVector& c : coefficients_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

double LaurentBoundaryFunction::max_abs_sample() const {
  double m = 0.0;
  for (const CVector& s : samples_) m = std::max(m, s.cwiseAbs().maxCoeff());
  return m;
}

LaurentBoundaryFunction LaurentBoundaryFunction::operator+(
    const LaurentBoundaryFunction& o) const {
  if (circles() != o.circles()) throw DomainError("operator+: circle mismatch");
  const int nn = std::max(truncation_, o.truncation_);
  LaurentBoundaryFunction f = zero(circles(), nn, std::max(grid_size_, o.grid_size_));
  for (int c = 0; c < circles(); ++c) {
    for (int n = -nn; n <= nn; ++n) {
      f.coefficients_[static_cast<size_t>(c)][n + nn] = coeff(c, n) + o.coeff(c, n);
    }
  }
  f.rebuild_samples();
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::operator-(
    const LaurentBoundaryFunction& o) const {
  return *this + o * Complex(-1.0, 0.0);
}

LaurentBoundaryFunction LaurentBoundaryFunction::operator*(Complex s) const {
  LaurentBoundaryFunction f = *this;
  for (CVector& c : f.coefficients_) c *= s;
  for (CVector& v : f.samples_) v *= s;
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::pointwise_mul(
    const LaurentBoundaryFunction& o, int out_truncation) const {
  if (circles() != o.circles()) throw DomainError("pointwise_mul: circle mismatch");
  if (grid_size_ != o.grid_size_) throw DomainError("pointwise_mul: grid mismatch");
  const int nn = out_truncation > 0 ? out_truncation : std::max(truncation_, o.truncation_);
  std::vector<CVector> prod;
  prod.reserve(samples_.size());
  for (int c = 0; c < circles(); ++c) {
    prod.push_back(samples_[static_cast<size_t>(c)].cwiseProduct(
        o.samples_[static_cast<size_t>(c)]));
  }
  return laurent_from_samples(prod, nn);
}

LaurentBoundaryFunction LaurentBoundaryFunction::conj_reflect() const {
  LaurentBoundaryFunction f = *this;
  const int nn = truncation_;
  for (size_t c = 0; c < coefficients_.size(); ++c) {
    CVector cc(2 * nn + 1);
    for (int n = -nn; n <= nn; ++n) {
      cc[n + nn] = std::conj(coefficients_[c][-n + nn]);
    }
    f.coefficients_[c] = cc;
    f.samples_[c] = samples_[c].conjugate();
  }
  return f;
}

LaurentBoundaryFunction LaurentBoundaryFunction::map_samples(
    const std::function<Complex(Complex)>& fn) const {
  std::vector<CVector> out;
  out.reserve(samples_.size());
  for (const CVector& s : samples_) {
    CVector v(s.size());
    for (Eigen::Index j = 0; j < s.size(); ++j) v[j] = fn(s[j]);
    out.push_back(std::move(v));
  }
  return laurent_from_samples(out, truncation_);
}

LaurentBoundaryFunction laurent_from_samples(const std::vector<CVector>& samples,
                                             int truncation) {
  if (samples.empty()) throw DomainError("laurent_from_samples: no circles");
  const int grid = static_cast<int>(samples.front().size());
  if (grid < 2 * truncation + 1) {
    throw DomainError(
        "laurent_from_samples: sample count below 2N+1, coefficients would alias");
  }
  std::vector<CVector> coeffs;
  coeffs.reserve(samples.size());
  for (const CVector& s : samples) {
    if (static_cast<int>(s.size()) != grid) {
      throw DomainError("laurent_from_samples: inconsistent grid sizes");
    }
    CVector c(2 * truncation + 1);
    for (int n = -truncation; n <= truncation; ++n) {
      Complex acc = 0.0;
      for (int j = 0; j < grid; ++j) {
        double theta = 2.0 * kPi * j / grid;
        acc += s[j] * std::polar(1.0, -n * theta);
      }
      c[n + truncation] = acc / static_cast<double>(grid);
    }
    coeffs.push_back(std::move(c));
  }
  LaurentBoundaryFunction f =
      LaurentBoundaryFunction::from_coefficients(std::move(coeffs), grid);
  return f;
}

LaurentBoundaryFunction project_disk(const LaurentBoundaryFunction& f,
                                     DiskPart part) {
  if (f.circles() != 1) {
    throw DomainError("project_disk: classical split needs a single circle (disk model)");
  }
  const int nn = f.truncation();
  CVector c = CVector::Zero(2 * nn + 1);
  switch (part) {
    case DiskPart::minus:
      for (int n = -nn; n < 0; ++n) c[n + nn] = f.coeff(0, n);
      break;
    case DiskPart::zero:
      c[nn] = f.coeff(0, 0);
      break;
    case DiskPart::plus:
      for (int n = 1; n <= nn; ++n) c[n + nn] = f.coeff(0, n);
      break;
  }
  std::vector<CVector> cc;
  cc.push_back(std::move(c));
  return LaurentBoundaryFunction::from_coefficients(std::move(cc), f.grid_size());
}

LaurentBoundaryFunction hilbert_transform(const LaurentBoundaryFunction& f) {
  if (f.circles() != 1) {
    throw DomainError("hilbert_transform: single circle required");
  }
  const int nn = f.truncation();
  CVector c(2 * nn + 1);
  for (int n = -nn; n <= nn; ++n) {
    double sgn = n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0);
    c[n + nn] = kI * sgn * f.coeff(0, n);
  }
  std::vector<CVector> cc;
  cc.push_back(std::move(c));
  return LaurentBoundaryFunction::from_coefficients(std::move(cc), f.grid_size());
}

DecayProfile decay_profile(const LaurentBoundaryFunction& f) {
  DecayProfile p;
  const int nn = f.truncation();
  // |n|-weighted coefficient energy, summed over circles
  for (int c = 0; c < f.circles(); ++c) {
    for (int n = -nn; n <= nn; ++n) {
      p.sobolev_half_norm += std::abs(n) * std::norm(f.coeff(c, n));
    }
  }
  // tail regression log|c_n| ~ |n| log(rate), over the outer half of the band
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  const int lo = std::max(1, nn / 2);
  const double floor_mag = 1e-15 * std::max(f.max_abs_coeff(), 1e-300);
  for (int c = 0; c < f.circles(); ++c) {
    for (int n = -nn; n <= nn; ++n) {
      if (std::abs(n) < lo) continue;
      double mag = std::abs(f.coeff(c, n));
      if (mag <= floor_mag) continue;
      double x = std::abs(n), y = std::log(mag);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++count;
    }
  }
  if (count >= 2 && sxx * count - sx * sx > 0) {
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    p.geometric_rate = std::min(1.0, std::exp(slope));
  } else {
    p.geometric_rate = 1.0;
  }
  return p;
}

Complex eval_power_series(const LaurentBoundaryFunction& f, Complex z,
                          int n_min, int n_max) {
  if (f.circles() != 1) {
    throw DomainError("eval_power_series: single circle required");
  }
  Complex acc = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    acc += f.coeff(0, n) * std::pow(z, n);
  }
  return acc;
}

}  // namespace multiloop
