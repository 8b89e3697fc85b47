#include "multiloop/surface.hpp"

#include <algorithm>
#include <cmath>

#include "multiloop/quadrature.hpp"

namespace multiloop {

namespace {

constexpr int kHoloBasisCap = 72;

int default_grid(int truncation, int requested) {
  return requested > 0 ? requested : 4 * std::max(truncation, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

SurfaceModel SurfaceModel::disk(int truncation, int grid_size) {
  SurfaceModel m;
  m.desc_.kind = ModelKind::disk;
  m.truncation_ = truncation;
  m.grid_size_ = default_grid(truncation, grid_size);
  m.weights_.push_back(RVector::Constant(m.grid_size_, 1.0 / m.grid_size_));
  // monomial basis cache z^j
  m.holo_cache_.reserve(kHoloBasisCap);
  for (int j = 1; j <= std::min(kHoloBasisCap, truncation); ++j) {
    m.holo_cache_.push_back(
        LaurentBoundaryFunction::monomial(j, 1.0, truncation, m.grid_size_));
    m.holo_scale_.push_back(1.0);
  }
  return m;
}

SurfaceModel SurfaceModel::elliptic(Complex tau, Complex basepoint,
                                    int truncation, int grid_size) {
  SurfaceModel m;
  m.desc_.kind = ModelKind::elliptic;
  m.desc_.tau = tau;
  m.desc_.basepoint = basepoint;
  m.truncation_ = truncation;
  m.grid_size_ = default_grid(truncation, grid_size);
  m.init_elliptic();
  return m;
}

SurfaceModel SurfaceModel::from_descriptor(const ModelDescriptor& d,
                                           int truncation, int grid_size) {
  return d.kind == ModelKind::disk
             ? disk(truncation, grid_size)
             : elliptic(d.tau, d.basepoint, truncation, grid_size);
}

void SurfaceModel::init_elliptic() {
  Complex tau = desc_.tau;
  if (tau.imag() <= 0.0) throw DomainError("elliptic model: Im(tau) must be positive");
  // the reflection u -> conj(u) needs a conjugation-invariant lattice with
  // two boundary circles; that pins Re(tau) to an integer, which we drop
  double re_int = std::round(tau.real());
  if (std::abs(tau.real() - re_int) > 1e-12) {
    throw DomainError("elliptic model: Re(tau) must be an integer (reflection u -> conj u)");
  }
  tau = Complex(0.0, tau.imag());
  desc_.tau = tau;
  const double beta = tau.imag();

  Complex p0 = desc_.basepoint;
  p0 = Complex(p0.real() - std::floor(p0.real()), p0.imag());
  desc_.basepoint = p0;
  if (p0.imag() <= 1e-9 || p0.imag() >= beta / 2.0 - 1e-9) {
    throw DomainError("elliptic model: basepoint must lie strictly inside the strip 0 < Im u < Im(tau)/2");
  }

  ell_ = std::make_shared<EllipticFunctions>(tau);

  // alpha from the 2x2 real system Re(period_A) = Re(period_B) = 0:
  //   period_A = alpha + eta_a (conj(p0) - p0),  period_B = alpha tau + eta_b (conj(p0) - p0)
  const double y0 = p0.imag();
  Complex etaA = ell_->eta_a();
  Complex etaB = ell_->eta_b();
  Eigen::Matrix2d sys;
  Eigen::Vector2d rhs;
  sys << 1.0, 0.0, tau.real(), -tau.imag();
  rhs << -2.0 * y0 * etaA.imag(), -2.0 * y0 * etaB.imag();
  double det = sys.determinant();
  if (std::abs(det) < 1e-14) {
    throw NumericalError("elliptic model: period normalization solve singular");
  }
  Eigen::Vector2d a = sys.colPivHouseholderQr().solve(rhs);
  alpha_ = Complex(a[0], a[1]);

  // quadrature weights: (2 pi i)^{-1} h(u) du with the boundary orientation
  // of Sigma (lower circle +x, upper circle -x)
  const int G = grid_size_;
  RVector w0(G), w1(G);
  double max_re_defect = 0.0;
  for (int j = 0; j < G; ++j) {
    double x = static_cast<double>(j) / G;
    Complex h0 = dk_density(Complex(x, 0.0));
    Complex h1 = dk_density(Complex(x, beta / 2.0));
    max_re_defect = std::max({max_re_defect, std::abs(h0.real()), std::abs(h1.real())});
    w0[j] = h0.imag() / (2.0 * kPi * G);
    w1[j] = -h1.imag() / (2.0 * kPi * G);
  }
  double scale = std::max(w0.cwiseAbs().maxCoeff(), w1.cwiseAbs().maxCoeff());
  if (max_re_defect > 1e-9 * (1.0 + scale)) {
    throw NumericalError("elliptic model: dk not imaginary along S");
  }
  if (w0.minCoeff() <= 0.0 || w1.minCoeff() <= 0.0) {
    throw NumericalError("elliptic model: quadrature weights not positive");
  }
  double total = w0.sum() + w1.sum();
  if (std::abs(total - 1.0) > 1e-8) {
    throw NumericalError("elliptic model: boundary mass of (2 pi i)^{-1} dk != 1");
  }
  weights_.push_back(std::move(w0));
  weights_.push_back(std::move(w1));

  // locate the two zeros of dk: coarse scan + Newton on h, h' in closed form
  auto h = [this](Complex u) { return dk_density(u); };
  auto hp = [this, p0](Complex u) {
    return -ell_->wp(u - p0) + ell_->wp(u - std::conj(p0));
  };
  std::vector<Complex> zeros;
  const int scan = 48;
  std::vector<std::pair<double, Complex>> candidates;
  for (int ix = 0; ix < scan; ++ix) {
    for (int iy = 0; iy < scan; ++iy) {
      Complex u((ix + 0.5) / scan, beta * (iy + 0.5) / scan);
      candidates.push_back({std::abs(h(u)), u});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t c = 0; c < candidates.size() && zeros.size() < 8 && c < 40; ++c) {
    Complex u = candidates[c].second;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      Complex hv = h(u);
      if (std::abs(hv) < 1e-13) { ok = true; break; }
      Complex d = hv / hp(u);
      if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) break;
      if (std::abs(d) > 0.5) d *= 0.5 / std::abs(d);
      u -= d;
    }
    if (!ok) continue;
    // reduce to the fundamental domain [0,1) x [0,beta)
    double xr = u.real() - std::floor(u.real());
    double yr = u.imag() - beta * std::floor(u.imag() / beta);
    Complex ur(xr, yr);
    bool dup = false;
    for (Complex z : zeros) {
      Complex d = ur - z;
      d = Complex(d.real() - std::round(d.real()),
                  d.imag() - beta * std::round(d.imag() / beta));
      if (std::abs(d) < 1e-6) { dup = true; break; }
    }
    if (!dup) zeros.push_back(ur);
  }
  if (zeros.size() != 2) {
    throw NumericalError("elliptic model: expected exactly 2 zeros of dk, found " +
                         std::to_string(zeros.size()));
  }
  for (Complex z : zeros) {
    if (std::abs(hp(z)) < 1e-6) {
      throw NumericalError(
          "elliptic model: dk has a non-simple zero; zero-mode pole bookkeeping refused");
    }
    double d_bdy = std::min({std::abs(z.imag()), std::abs(z.imag() - beta / 2.0),
                             std::abs(z.imag() - beta)});
    if (d_bdy < 1e-3) {
      throw NumericalError("elliptic model: a zero of dk sits on the boundary S");
    }
  }
  std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  dk_zeros_ = std::move(zeros);

  // boundary values of the nonconstant zero mode du/dk = 1/h
  zero_mode1_boundary_ = sample([this](Complex u) { return 1.0 / dk_density(u); });

  // Sigma-holomorphic basis vanishing at (0). Element 1 has a simple pole at
  // the reflected dk zero (and at (infinity)); without it, products F * chi0
  // and the triangular-solve images fall outside the truncated span and the
  // decompositions stall near 1e-6. Elements j >= 2 are the wp-monomials in
  // (u - (infinity)) with a pole of order j there. All normalized to unit
  // sup on S.
  Complex pinf = std::conj(p0);
  Complex z_star = dk_zeros_[1];  // the zero in the interior of Sigma*
  Complex b2 = z_star + pinf - p0;
  if (std::abs(b2 - z_star) < 1e-6 || std::abs(b2 - pinf) < 1e-6) {
    throw NumericalError("elliptic model: degenerate pole bookkeeping for the basis");
  }
  extra_pole_ = std::make_shared<SigmaQuotient>();
  extra_pole_->ell = ell_.get();
  extra_pole_->zeros = {p0, b2};
  extra_pole_->poles = {z_star, pinf};
  for (Complex period : {Complex(1.0, 0.0), tau}) {
    if (std::abs(extra_pole_->multiplier(period) - 1.0) > 1e-9) {
      throw NumericalError("elliptic model: basis sigma quotient not elliptic");
    }
  }
  holo_cache_.reserve(kHoloBasisCap);
  holo_scale_.reserve(kHoloBasisCap);
  for (int j = 1; j <= kHoloBasisCap; ++j) {
    LaurentBoundaryFunction b = sample([this, j](Complex u) { return holo_raw(j, u); });
    double s = b.max_abs_sample();
    if (s <= 0.0) throw NumericalError("elliptic model: degenerate holomorphic basis element");
    holo_cache_.push_back(b * Complex(1.0 / s, 0.0));
    holo_scale_.push_back(1.0 / s);
  }
}

Complex SurfaceModel::holo_raw(int j, Complex u) const {
  if (j == 1) return extra_pole_->eval(u);
  Complex pinf = std::conj(desc_.basepoint);
  int order = j;
  Complex w = ell_->wp(u - pinf);
  Complex v = (order % 2 == 0) ? std::pow(w, order / 2)
                               : std::pow(w, (order - 3) / 2) * ell_->wp_prime(u - pinf);
  Complex at0 = (order % 2 == 0)
                    ? std::pow(ell_->wp(desc_.basepoint - pinf), order / 2)
                    : std::pow(ell_->wp(desc_.basepoint - pinf), (order - 3) / 2) *
                          ell_->wp_prime(desc_.basepoint - pinf);
  return v - at0;
}

// ---------------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------------

Complex SurfaceModel::basepoint() const {
  return kind() == ModelKind::disk ? Complex(0.0, 0.0) : desc_.basepoint;
}

Complex SurfaceModel::reflected_basepoint() const {
  if (kind() == ModelKind::disk) {
    throw DomainError("disk model: (infinity) is the point at infinity, not a finite coordinate");
  }
  return std::conj(desc_.basepoint);
}

Complex SurfaceModel::reflect(Complex q) const {
  if (kind() == ModelKind::disk) {
    if (std::abs(q) < 1e-300) throw DomainError("reflect: R(0) is the point at infinity");
    return 1.0 / std::conj(q);
  }
  return std::conj(q);
}

Complex SurfaceModel::boundary_point(int circle, double theta) const {
  if (kind() == ModelKind::disk) {
    if (circle != 0) throw DomainError("disk model has one boundary circle");
    return std::polar(1.0, theta);
  }
  double x = theta / (2.0 * kPi);
  if (circle == 0) return Complex(x, 0.0);
  if (circle == 1) return Complex(x, desc_.tau.imag() / 2.0);
  throw DomainError("elliptic model has two boundary circles");
}

double SurfaceModel::strip_height() const {
  if (kind() == ModelKind::disk) throw DomainError("strip_height: elliptic only");
  return desc_.tau.imag() / 2.0;
}

bool SurfaceModel::in_sigma(Complex u) const {
  if (kind() == ModelKind::disk) return std::abs(u) <= 1.0 + 1e-12;
  double beta = desc_.tau.imag();
  double y = u.imag() - beta * std::floor(u.imag() / beta);
  return y <= beta / 2.0 + 1e-12;
}

Complex SurfaceModel::dk_density(Complex u) const {
  if (kind() == ModelKind::disk) return 1.0 / u;
  return ell_->zeta(u - desc_.basepoint) - ell_->zeta(u - std::conj(desc_.basepoint)) +
         alpha_;
}

double SurfaceModel::tau_time(Complex q) const {
  if (kind() == ModelKind::disk) return std::log(std::abs(q));
  Complex p0 = desc_.basepoint;
  return std::log(std::abs(ell_->sigma(q - p0))) -
         std::log(std::abs(ell_->sigma(q - std::conj(p0)))) + (alpha_ * q).real();
}

const RVector& SurfaceModel::quad_weights(int circle) const {
  return weights_.at(static_cast<size_t>(circle));
}

// ---------------------------------------------------------------------------
// integration
// ---------------------------------------------------------------------------

Complex SurfaceModel::integrate_dk(const LaurentBoundaryFunction& f) const {
  if (f.circles() != circles() || f.grid_size() != grid_size_) {
    throw DomainError("integrate_dk: function grid does not match the model");
  }
  Complex acc = 0.0;
  for (int c = 0; c < circles(); ++c) {
    const CVector& s = f.samples(c);
    const RVector& w = weights_[static_cast<size_t>(c)];
    for (int j = 0; j < grid_size_; ++j) acc += w[j] * s[j];
  }
  return acc;
}

Complex SurfaceModel::inner(const LaurentBoundaryFunction& f,
                            const LaurentBoundaryFunction& g) const {
  Complex acc = 0.0;
  for (int c = 0; c < circles(); ++c) {
    const CVector& a = f.samples(c);
    const CVector& b = g.samples(c);
    const RVector& w = weights_[static_cast<size_t>(c)];
    for (int j = 0; j < grid_size_; ++j) acc += w[j] * a[j] * std::conj(b[j]);
  }
  return acc;
}

double SurfaceModel::norm(const LaurentBoundaryFunction& f) const {
  return std::sqrt(std::max(0.0, inner(f, f).real()));
}

Complex SurfaceModel::eval_at_basepoint(const LaurentBoundaryFunction& f) const {
  return integrate_dk(f);
}

Complex SurfaceModel::eval_at_reflected_basepoint(
    const LaurentBoundaryFunction& f) const {
  return std::conj(integrate_dk(f.conj_reflect()));
}

// ---------------------------------------------------------------------------
// bases
// ---------------------------------------------------------------------------

Complex SurfaceModel::zero_mode_value(int j, Complex u) const {
  if (j == 0) return 1.0;
  if (kind() == ModelKind::disk || j >= zero_mode_count()) {
    throw DomainError("zero_mode_value: index out of range");
  }
  return 1.0 / dk_density(u);
}

LaurentBoundaryFunction SurfaceModel::zero_mode_boundary(int j) const {
  if (j == 0) {
    return LaurentBoundaryFunction::constant(1.0, circles(), truncation_, grid_size_);
  }
  if (kind() == ModelKind::disk || j >= zero_mode_count()) {
    throw DomainError("zero_mode_boundary: index out of range");
  }
  return zero_mode1_boundary_;
}

int SurfaceModel::holo_basis_capacity() const {
  return static_cast<int>(holo_cache_.size());
}

Complex SurfaceModel::holo_basis_value(int j, Complex u) const {
  if (j < 1 || j > holo_basis_capacity()) {
    throw DomainError("holo_basis_value: index out of range");
  }
  if (kind() == ModelKind::disk) return std::pow(u, j);
  return holo_raw(j, u) * holo_scale_[static_cast<size_t>(j - 1)];
}

const LaurentBoundaryFunction& SurfaceModel::holo_basis_boundary(int j) const {
  if (j < 1 || j > holo_basis_capacity()) {
    throw DomainError("holo_basis_boundary: index out of range");
  }
  return holo_cache_[static_cast<size_t>(j - 1)];
}

LaurentBoundaryFunction SurfaceModel::holo_basis_reflected_boundary(int j) const {
  return holo_basis_boundary(j).conj_reflect();
}

LaurentBoundaryFunction SurfaceModel::sample(
    const std::function<Complex(Complex)>& f) const {
  std::vector<CVector> samples;
  for (int c = 0; c < circles(); ++c) {
    CVector s(grid_size_);
    for (int j = 0; j < grid_size_; ++j) {
      double theta = 2.0 * kPi * j / grid_size_;
      s[j] = f(boundary_point(c, theta));
    }
    samples.push_back(std::move(s));
  }
  return laurent_from_samples(samples, truncation_);
}

const EllipticFunctions& SurfaceModel::elliptic_functions() const {
  if (!ell_) throw DomainError("elliptic_functions: disk model");
  return *ell_;
}

std::shared_ptr<const EllipticFunctions> SurfaceModel::elliptic_functions_ptr() const {
  if (!ell_) throw DomainError("elliptic_functions: disk model");
  return ell_;
}

Complex SurfaceModel::dk_du_correction() const {
  if (kind() == ModelKind::disk) throw DomainError("dk_du_correction: elliptic only");
  return alpha_;
}

// ---------------------------------------------------------------------------
// zero modes / equivariant map
// ---------------------------------------------------------------------------

ZeroModeBasis zero_modes(const SurfaceModel& model) {
  ZeroModeBasis b;
  b.dimension = model.zero_mode_count();
  for (int j = 0; j < b.dimension; ++j) b.modes.push_back(model.zero_mode_boundary(j));
  return b;
}

EquivariantMap equivariant_map(const SurfaceModel& model) {
  EquivariantMap em;
  if (model.kind() == ModelKind::disk) {
    em.degree = 1;
    em.value = [](Complex z) { return z; };
    em.boundary = LaurentBoundaryFunction::monomial(1, 1.0, model.truncation(),
                                                    model.grid_size());
    return em;
  }
  std::shared_ptr<const EllipticFunctions> ell = model.elliptic_functions_ptr();
  Complex tau = model.descriptor().tau;
  Complex p0 = model.basepoint();
  Complex pinf = std::conj(p0);
  // zero divisor {(0), p}, polar divisor {R((0)), R(p)}; with p = R((0)) + tau/2
  // the divisor sums agree exactly and the sigma quotient is elliptic
  Complex p = pinf + tau / 2.0;
  auto quotient = std::make_shared<SigmaQuotient>();
  quotient->ell = ell.get();
  quotient->zeros = {p0, p};
  quotient->poles = {pinf, p0 + tau / 2.0};
  for (Complex period : {Complex(1.0, 0.0), tau}) {
    if (std::abs(quotient->multiplier(period) - 1.0) > 1e-9) {
      throw NumericalError("equivariant_map: sigma quotient not elliptic (divisor bookkeeping)");
    }
  }
  // scale to unimodularity on S
  double c2 = 0.0;
  int cnt = 0;
  for (double x : {0.11, 0.37, 0.62, 0.88}) {
    Complex v = quotient->eval(Complex(x, 0.0));
    c2 += std::norm(v);
    ++cnt;
  }
  c2 /= cnt;
  if (!(c2 > 0.0) || !std::isfinite(c2)) {
    throw NumericalError("equivariant_map: unimodular normalization failed");
  }
  quotient->scale = 1.0 / std::sqrt(c2);
  em.degree = 2;
  em.second_zero = p;
  if (!model.in_sigma(p)) {
    throw NumericalError("equivariant_map: Abel-condition zero escaped Sigma (p = " +
                         std::to_string(p.real()) + " + " + std::to_string(p.imag()) + "i)");
  }
  // the closure keeps the elliptic engine alive past the model's lifetime
  em.value = [quotient, ell](Complex u) { return quotient->eval(u); };
  em.boundary = model.sample(em.value);
  return em;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

Decomposition decompose(const SurfaceModel& model, const LaurentBoundaryFunction& f,
                        int basis_size, double tol) {
  if (f.circles() != model.circles() || f.grid_size() != model.grid_size()) {
    throw DomainError("decompose: function grid does not match the model");
  }
  Decomposition out;
  out.basis_size = basis_size;
  if (model.kind() == ModelKind::disk) {
    out.minus = project_disk(f, DiskPart::minus);
    out.zero = project_disk(f, DiskPart::zero);
    out.plus = project_disk(f, DiskPart::plus);
    out.residual = 0.0;
    out.sigma_min = 1.0;
    out.zero_coefficients = CVector::Constant(1, f.coeff(0, 0));
    return out;
  }

  const int B = std::min(basis_size, model.holo_basis_capacity());
  const int G = model.grid_size();
  const int rows = 2 * G;
  const int zc = model.zero_mode_count();  // 2 on the torus
  const int cols = zc + 2 * B;

  // weighted sample rows: minimizing ||A x - b|| is least squares in the
  // dk-measure L2 norm
  RVector sqw(rows);
  for (int c = 0; c < 2; ++c) {
    const RVector& w = model.quad_weights(c);
    for (int j = 0; j < G; ++j) sqw[c * G + j] = std::sqrt(w[j]);
  }
  auto stack = [&](const LaurentBoundaryFunction& g) {
    CVector v(rows);
    for (int c = 0; c < 2; ++c) {
      const CVector& s = g.samples(c);
      for (int j = 0; j < G; ++j) v[c * G + j] = s[j] * sqw[c * G + j];
    }
    return v;
  };

  CMatrix A(rows, cols);
  std::vector<LaurentBoundaryFunction> columns;
  columns.reserve(static_cast<size_t>(cols));
  for (int j = 0; j < zc; ++j) columns.push_back(model.zero_mode_boundary(j));
  for (int j = 1; j <= B; ++j) columns.push_back(model.holo_basis_boundary(j));
  for (int j = 1; j <= B; ++j) columns.push_back(model.holo_basis_reflected_boundary(j));
  for (int k = 0; k < cols; ++k) A.col(k) = stack(columns[static_cast<size_t>(k)]);

  CVector b = stack(f);
  Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CVector x = svd.solve(b);
  out.sigma_min = svd.singularValues().tail(1)(0);
  out.residual = (A * x - b).norm();

  auto combine = [&](int from, int count) {
    LaurentBoundaryFunction acc = LaurentBoundaryFunction::zero(
        model.circles(), f.truncation(), model.grid_size());
    for (int k = 0; k < count; ++k) {
      acc = acc + columns[static_cast<size_t>(from + k)] * x[from + k];
    }
    return acc;
  };
  out.zero = combine(0, zc);
  out.plus = combine(zc, B);
  out.minus = combine(zc + B, B);
  out.zero_coefficients = x.head(zc);

  double scale = std::max(1.0, f.max_abs_sample());
  if (out.residual > tol * scale) {
    throw NumericalError("decompose: residual " + std::to_string(out.residual) +
                         " above tolerance at basis size " + std::to_string(B));
  }
  return out;
}

double multiply_stability_check(const SurfaceModel& model,
                                const LaurentBoundaryFunction& holo_f,
                                const LaurentBoundaryFunction& chi0,
                                int basis_size) {
  LaurentBoundaryFunction prod = holo_f.pointwise_mul(chi0);
  Decomposition d = decompose(model, prod, basis_size);
  return model.norm(d.minus);
}

// ---------------------------------------------------------------------------
// holomorphic extension (interior evaluation)
// ---------------------------------------------------------------------------

Complex HolomorphicExtension::operator()(Complex u) const {
  Complex acc = constant;
  for (int j = 0; j < coefficients.size(); ++j) {
    acc += coefficients[j] * model->holo_basis_value(j + 1, u);
  }
  return acc;
}

HolomorphicExtension extend_holomorphic(const SurfaceModel& model,
                                        const LaurentBoundaryFunction& f,
                                        int basis_size) {
  HolomorphicExtension ext;
  ext.model = &model;
  if (model.kind() == ModelKind::disk) {
    // direct power series
    ext.constant = f.coeff(0, 0);
    int B = std::min(basis_size, f.truncation());
    ext.coefficients = CVector::Zero(B);
    for (int j = 1; j <= B; ++j) ext.coefficients[j - 1] = f.coeff(0, j);
    double tail = 0.0;
    for (int n = -f.truncation(); n < 0; ++n) tail += std::norm(f.coeff(0, n));
    ext.fit_residual = std::sqrt(tail);
    return ext;
  }
  const int B = std::min(basis_size, model.holo_basis_capacity());
  const int G = model.grid_size();
  const int rows = 2 * G;
  RVector sqw(rows);
  for (int c = 0; c < 2; ++c) {
    const RVector& w = model.quad_weights(c);
    for (int j = 0; j < G; ++j) sqw[c * G + j] = std::sqrt(w[j]);
  }
  CMatrix A(rows, B + 1);
  CVector b(rows);
  for (int c = 0; c < 2; ++c) {
    const CVector& s = f.samples(c);
    for (int j = 0; j < G; ++j) b[c * G + j] = s[j] * sqw[c * G + j];
  }
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < G; ++j) A(c * G + j, 0) = sqw[c * G + j];
  }
  for (int k = 1; k <= B; ++k) {
    const CVector s0 = model.holo_basis_boundary(k).samples(0);
    const CVector s1 = model.holo_basis_boundary(k).samples(1);
    for (int j = 0; j < G; ++j) {
      A(j, k) = s0[j] * sqw[j];
      A(G + j, k) = s1[j] * sqw[G + j];
    }
  }
  Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CVector x = svd.solve(b);
  ext.constant = x[0];
  ext.coefficients = x.tail(B);
  ext.fit_residual = (A * x - b).norm();
  return ext;
}

// ---------------------------------------------------------------------------
// invariant checks
// ---------------------------------------------------------------------------

SurfaceChecks check_surface(const SurfaceModel& model) {
  SurfaceChecks out;
  if (model.kind() == ModelKind::disk) {
    auto h = [&model](Complex z) { return model.dk_density(z); };
    out.residue_basepoint_err = std::abs(contour_integral(h, 0.0, 0.5) - 1.0);
    // at infinity: dk = dz/z = -dw/w under w = 1/z, so the residue is -1;
    // check it as the outward contour at large radius
    Complex res_inf = -contour_integral(h, 0.0, 8.0);
    out.residue_reflected_err = std::abs(res_inf + 1.0);
    out.max_period_re = 0.0;
    out.min_quad_weight = model.quad_weights(0).minCoeff();
    out.dk_zero_count = 0;
    out.zero_mode_basepoint_match = 0.0;
    out.zero_mode_dk_contour = 0.0;
    return out;
  }

  const double beta = model.descriptor().tau.imag();
  Complex p0 = model.basepoint();
  Complex pinf = model.reflected_basepoint();
  auto h = [&model](Complex u) { return model.dk_density(u); };

  double r0 = 0.4 * std::min({p0.imag(), beta / 2.0 - p0.imag(), 0.5});
  out.residue_basepoint_err = std::abs(contour_integral(h, p0, r0) - 1.0);
  out.residue_reflected_err = std::abs(contour_integral(h, pinf, r0) + 1.0);

  // homology periods along pole-avoiding straight paths
  auto dist_to_poles = [&](double y) {
    double d = 1e9;
    for (double py : {p0.imag(), beta - p0.imag()}) {
      d = std::min({d, std::abs(y - py), std::abs(y - py + beta), std::abs(y - py - beta)});
    }
    return d;
  };
  double ya = 0.0, best = -1.0;
  for (int k = 1; k < 64; ++k) {
    double y = beta * k / 64.0;
    if (dist_to_poles(y) > best) { best = dist_to_poles(y); ya = y; }
  }
  Complex perA = line_integral(h, Complex(0.13, ya), Complex(1.13, ya), 64);
  double xb = p0.real() + 0.5;
  Complex perB = line_integral(h, Complex(xb, 0.07 * beta), Complex(xb, 1.07 * beta), 64);
  out.max_period_re = std::max(std::abs(perA.real()), std::abs(perB.real()));

  out.min_quad_weight =
      std::min(model.quad_weights(0).minCoeff(), model.quad_weights(1).minCoeff());
  out.dk_zero_count = static_cast<int>(model.dk_zeros().size());

  // chi0 = du/dk at the basepoint pair: Richardson toward the pole
  auto chi1 = [&model](Complex u) { return 1.0 / model.dk_density(u); };
  double r = 1e-3;
  Complex v0 = 2.0 * chi1(p0 + Complex(r / 2, 0)) - chi1(p0 + Complex(r, 0));
  Complex vi = 2.0 * chi1(pinf + Complex(r / 2, 0)) - chi1(pinf + Complex(r, 0));
  out.zero_mode_basepoint_match = std::abs(v0 - vi);

  // pole structure of the nonconstant zero mode: simple poles exactly at the
  // zeros of dk (first Laurent coefficient nonzero, second vanishing), and
  // for the combined mode 1 + chi0 the product with dk keeps residues +-1 at
  // the basepoint pair only
  double err = 0.0;
  for (Complex z : model.dk_zeros()) {
    double rz = 0.05 * beta;
    Complex a1 = contour_integral(chi1, z, rz);
    Complex a2 = contour_integral([&chi1, z](Complex u) { return (u - z) * chi1(u); }, z, rz);
    if (std::abs(a1) < 1e-10) err = std::max(err, 1.0);  // pole missing
    err = std::max(err, std::abs(a2));
  }
  auto mode_dk = [&model](Complex u) {
    Complex hh = model.dk_density(u);
    return (1.0 + 1.0 / hh) * hh;
  };
  err = std::max(err, std::abs(contour_integral(mode_dk, p0, r0) - 1.0));
  err = std::max(err, std::abs(contour_integral(mode_dk, pinf, r0) + 1.0));
  out.zero_mode_dk_contour = err;
  return out;
}

}  // namespace multiloop
