#pragma once

// Reference computations for the tests. Nothing here calls into the library:
// fitness comes straight from the payoff formulas and roots/derivatives come
// from bisection and finite differences.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct Payoffs {
  double R, S, T, P;
};

inline Payoffs reduced(double r) { return {1.0, 0.0, 1.0 + r, r}; }

// f_C - f_D with the interaction strength value f already evaluated at x.
inline double selection(const Payoffs& m, double f, double x) {
  const double y = 1.0 - x;
  const double fc = x * m.R + y * f * m.S;
  const double fd = x * f * m.T + y * m.P;
  return fc - fd;
}

inline double gain_linear(double r, double k, double x) { return selection(reduced(r), k * x, x); }
inline double gain_constant(double r, double p, double x) { return selection(reduced(r), p, x); }

inline double velocity_linear(double r, double k, double x) {
  return x * (1.0 - x) * gain_linear(r, k, x);
}
inline double velocity_constant(double r, double p, double x) {
  return x * (1.0 - x) * gain_constant(r, p, x);
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Roots of f inside (0, 1) found from sign changes on an n-cell grid.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& f,
                                             int n = 10000) {
  std::vector<double> roots;
  double prev_x = 0.0;
  double prev = f(prev_x);
  for (int i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double v = f(x);
    if ((prev < 0.0 && v > 0.0) || (prev > 0.0 && v < 0.0)) roots.push_back(bisect(f, prev_x, x));
    prev_x = x;
    prev = v;
  }
  return roots;
}

// Maximizer of a unimodal function on [a, b] by ternary search.
inline double argmax(const std::function<double(double)>& f, double a, double b) {
  for (int i = 0; i < 300; ++i) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return 0.5 * (a + b);
}

// Random matrix with T > R > P > S.
inline Payoffs random_dilemma(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> gap(0.05, 3.0);
  const double S = u(rng);
  const double P = S + gap(rng);
  const double R = P + gap(rng);
  const double T = R + gap(rng);
  return {R, S, T, P};
}

}  // namespace oracle
