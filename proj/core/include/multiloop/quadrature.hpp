#pragma once

#include <functional>

#include "multiloop/common.hpp"

namespace multiloop {

/// (1/2*pi*i) * contour integral of f over the circle |u - center| = radius,
/// trapezoid rule (spectrally accurate for analytic integrands).
Complex contour_integral(const std::function<Complex(Complex)>& f, Complex center,
                         double radius, int nodes = 128);

/// Line integral of f along the straight segment [a, b], composite
/// Gauss-Legendre.
Complex line_integral(const std::function<Complex(Complex)>& f, Complex a,
                      Complex b, int segments = 32);

}  // namespace multiloop
