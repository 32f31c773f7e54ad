#pragma once

#include <algorithm>

namespace coopdyn {

// g(x) = a2 x^2 + a1 x + a0, the selection gradient f_C - f_D of a reduced
// game. The replicator field is D(x) = x (1 - x) g(x).
//
// Every routine here fixes its floating-point operation order: the SIMD
// kernels replay the same sequence lane by lane and must agree bit for bit.
struct GrowthPolynomial {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  constexpr double operator()(double x) const noexcept { return (a2 * x + a1) * x + a0; }
  constexpr double derivative(double x) const noexcept { return 2.0 * a2 * x + a1; }
};

constexpr double field_velocity(const GrowthPolynomial& g, double x) noexcept {
  return (x * (1.0 - x)) * g(x);
}

// d/dx [x (1 - x) g(x)]
constexpr double field_derivative(const GrowthPolynomial& g, double x) noexcept {
  return (1.0 - 2.0 * x) * g(x) + (x * (1.0 - x)) * g.derivative(x);
}

constexpr double clamp_unit(double x) noexcept { return std::min(std::max(x, 0.0), 1.0); }

constexpr double euler_update(const GrowthPolynomial& g, double x, double dt) noexcept {
  return clamp_unit(x + dt * field_velocity(g, x));
}

constexpr double rk4_update(const GrowthPolynomial& g, double x, double dt) noexcept {
  const double half = 0.5 * dt;
  const double k1 = field_velocity(g, x);
  const double k2 = field_velocity(g, x + half * k1);
  const double k3 = field_velocity(g, x + half * k2);
  const double k4 = field_velocity(g, x + dt * k3);
  return clamp_unit(x + (dt / 6.0) * (((k1 + 2.0 * k2) + 2.0 * k3) + k4));
}

}  // namespace coopdyn
