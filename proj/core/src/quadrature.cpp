#include "multiloop/quadrature.hpp"

#include <array>
#include <cmath>

namespace multiloop {

Complex contour_integral(const std::function<Complex(Complex)>& f, Complex center,
                         double radius, int nodes) {
  Complex acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    double theta = 2.0 * kPi * j / nodes;
    Complex w = std::polar(radius, theta);
    acc += f(center + w) * kI * w;  // f(u) du with du = i w dtheta
  }
  acc *= 2.0 * kPi / nodes;
  return acc / (2.0 * kPi * kI);
}

namespace {
// 16-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace

Complex line_integral(const std::function<Complex(Complex)>& f, Complex a,
                      Complex b, int segments) {
  Complex acc = 0.0;
  Complex step = (b - a) / static_cast<double>(segments);
  for (int s = 0; s < segments; ++s) {
    Complex mid = a + (s + 0.5) * step;
    for (size_t k = 0; k < kGlNodes.size(); ++k) {
      Complex dp = 0.5 * step * kGlNodes[k];
      acc += kGlWeights[k] * (f(mid + dp) + f(mid - dp));
    }
  }
  return acc * 0.5 * step;
}

}  // namespace multiloop
