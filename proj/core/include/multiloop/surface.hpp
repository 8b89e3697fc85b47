#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "multiloop/common.hpp"
#include "multiloop/elliptic.hpp"
#include "multiloop/fourier.hpp"

namespace multiloop {

enum class ModelKind { disk, elliptic };

struct ModelDescriptor {
  ModelKind kind = ModelKind::disk;
  Complex tau{0.0, 0.0};        // elliptic only
  Complex basepoint{0.0, 0.0};  // elliptic only
};

/// Everything that depends on the surface and its double: the reflection R,
/// the distinguished differential dk, its zeros, the boundary quadrature
/// realizing (2*pi*i)^{-1} dk|_S, the zero modes, and the holomorphic
/// function bases used by the least-squares decompositions.
///
/// Two models are provided:
///   disk      - Sigma = closed unit disk, double = sphere, dk = dz/z
///   elliptic  - Sigma = the strip {0 <= Im u <= Im(tau)/2} in C/(Z + tau Z),
///               double = the torus, reflection u -> conj(u); dk is the
///               zeta-difference with poles at the basepoint pair plus the
///               du-correction that makes all periods purely imaginary.
///
/// Instances are immutable after construction and safe to share across
/// threads; all evaluators are pure.
class SurfaceModel {
 public:
  static SurfaceModel disk(int truncation = 64, int grid_size = 0);
  static SurfaceModel elliptic(Complex tau, Complex basepoint,
                               int truncation = 64, int grid_size = 0);
  static SurfaceModel from_descriptor(const ModelDescriptor& d,
                                      int truncation = 64, int grid_size = 0);

  ModelKind kind() const { return desc_.kind; }
  const ModelDescriptor& descriptor() const { return desc_; }
  int genus_double() const { return kind() == ModelKind::disk ? 0 : 1; }
  int circles() const { return kind() == ModelKind::disk ? 1 : 2; }
  int truncation() const { return truncation_; }
  int grid_size() const { return grid_size_; }

  Complex basepoint() const;             // (0)
  Complex reflected_basepoint() const;   // (infinity) = R((0))
  Complex reflect(Complex q) const;      // R
  Complex boundary_point(int circle, double theta) const;  // theta in [0, 2 pi)
  double strip_height() const;           // elliptic: Im(tau)/2
  bool in_sigma(Complex u) const;        // closed Sigma membership

  /// dk / d(coordinate) at an interior or boundary point.
  Complex dk_density(Complex u) const;
  /// Re(k), the Krichever-Novikov time parameter.
  double tau_time(Complex q) const;
  /// The 2g zeros of dk in the fundamental domain (empty on the disk).
  const std::vector<Complex>& dk_zeros() const { return dk_zeros_; }

  /// Quadrature weights per circle realizing integration against
  /// (2*pi*i)^{-1} dk restricted to S (real and positive with the boundary
  /// orientation of Sigma).
  const RVector& quad_weights(int circle) const;

  Complex integrate_dk(const LaurentBoundaryFunction& f) const;
  Complex inner(const LaurentBoundaryFunction& f,
                const LaurentBoundaryFunction& g) const;
  double norm(const LaurentBoundaryFunction& f) const;

  /// Cauchy-type evaluation at the basepoint; exact for boundary values of
  /// functions holomorphic in Sigma, since dk is the Cauchy kernel at (0).
  Complex eval_at_basepoint(const LaurentBoundaryFunction& f) const;
  /// Same at (infinity), for functions holomorphic in Sigma*.
  Complex eval_at_reflected_basepoint(const LaurentBoundaryFunction& f) const;

  // -- zero modes ------------------------------------------------------
  int zero_mode_count() const { return genus_double() + 1; }
  /// j = 0: constants; j = 1 (elliptic): du/dk.
  Complex zero_mode_value(int j, Complex u) const;
  LaurentBoundaryFunction zero_mode_boundary(int j) const;

  // -- Sigma-holomorphic basis, vanishing at (0), j = 1, 2, ... ---------
  // disk: z^j; elliptic: normalized wp-monomials in (u - (infinity)) with a
  // pole of order j+1 at (infinity), value-shifted to vanish at (0).
  int holo_basis_capacity() const;
  Complex holo_basis_value(int j, Complex u) const;
  const LaurentBoundaryFunction& holo_basis_boundary(int j) const;
  /// Reflection: holomorphic on Sigma*, vanishing at (infinity).
  LaurentBoundaryFunction holo_basis_reflected_boundary(int j) const;

  /// Sample an arbitrary function on the boundary grid.
  LaurentBoundaryFunction sample(const std::function<Complex(Complex)>& f) const;

  const EllipticFunctions& elliptic_functions() const;
  std::shared_ptr<const EllipticFunctions> elliptic_functions_ptr() const;
  Complex dk_du_correction() const;  // elliptic: the alpha in dk = (...) du

 private:
  SurfaceModel() = default;
  void init_elliptic();
  Complex holo_raw(int j, Complex u) const;  // unnormalized elliptic basis

  ModelDescriptor desc_;
  int truncation_ = 64;
  int grid_size_ = 256;

  std::shared_ptr<EllipticFunctions> ell_;
  std::shared_ptr<SigmaQuotient> extra_pole_;  // simple pole at the reflected dk zero
  Complex alpha_{0.0};
  std::vector<Complex> dk_zeros_;
  std::vector<RVector> weights_;
  std::vector<LaurentBoundaryFunction> holo_cache_;   // write-once, built in ctor
  std::vector<double> holo_scale_;
  LaurentBoundaryFunction zero_mode1_boundary_;
};

struct ZeroModeBasis {
  int dimension = 1;
  std::vector<LaurentBoundaryFunction> modes;
};

ZeroModeBasis zero_modes(const SurfaceModel& model);

/// Strictly equivariant holomorphic map z: double -> sphere with z((0)) = 0,
/// |z| = 1 on S. Disk: the identity. Elliptic: degree-2 sigma quotient with
/// zero divisor {(0), p} and polar divisor {R((0)), R(p)}, p fixed by the
/// Abel condition, scaled to unimodularity on S.
struct EquivariantMap {
  int degree = 1;
  Complex second_zero{0.0};  // elliptic: the point p
  std::function<Complex(Complex)> value;
  LaurentBoundaryFunction boundary;  // samples of z on S
};

EquivariantMap equivariant_map(const SurfaceModel& model);

struct Decomposition {
  LaurentBoundaryFunction minus, zero, plus;
  double residual = 0.0;
  double sigma_min = 0.0;      // smallest singular value of the design matrix
  int basis_size = 0;
  CVector zero_coefficients;   // coordinates in the zero-mode basis
};

/// Linear triangular decomposition f = f_- + f_0 + f_+ over truncated bases
/// (least squares in the dk-weighted L2 norm; exact coefficient split on the
/// disk). Throws NumericalError if the residual stays above `tol` at the
/// maximum basis size.
Decomposition decompose(const SurfaceModel& model,
                        const LaurentBoundaryFunction& f, int basis_size = 48,
                        double tol = 1e-8);

/// || (F * chi0)_- || for F holomorphic on Sigma; the multiplication
/// stability contract says this vanishes.
double multiply_stability_check(const SurfaceModel& model,
                                const LaurentBoundaryFunction& holo_f,
                                const LaurentBoundaryFunction& chi0,
                                int basis_size = 48);

/// Interior extension of Sigma-holomorphic boundary data by a fit over
/// {1, F_1, ..., F_B}.
struct HolomorphicExtension {
  const SurfaceModel* model = nullptr;
  Complex constant{0.0};
  CVector coefficients;  // over holo basis j = 1..B
  double fit_residual = 0.0;
  Complex operator()(Complex u) const;
};

HolomorphicExtension extend_holomorphic(const SurfaceModel& model,
                                        const LaurentBoundaryFunction& f,
                                        int basis_size = 32);

struct SurfaceChecks {
  double residue_basepoint_err = 0.0;   // |res_(0)(dk) - 1|
  double residue_reflected_err = 0.0;   // |res_(inf)(dk) + 1|
  double max_period_re = 0.0;           // max |Re period(dk)| over generators
  double min_quad_weight = 0.0;
  int dk_zero_count = 0;
  double zero_mode_basepoint_match = 0.0;  // |chi0((0)) - chi0((inf))|
  double zero_mode_dk_contour = 0.0;       // holomorphy defect of chi0 * dk
};

SurfaceChecks check_surface(const SurfaceModel& model);

}  // namespace multiloop
