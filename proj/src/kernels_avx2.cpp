#include <immintrin.h>

#include <stdexcept>

#include "coopdyn/kernels.hpp"

// Lane-wise replay of the scalar sequences in field.hpp. No FMA: each
// multiply and add rounds separately, as in the reference.
namespace coopdyn::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

struct Coefficients {
  __m256d a2;
  __m256d a1;
  __m256d a0;
};

inline Coefficients broadcast(const GrowthPolynomial& g) {
  return {_mm256_set1_pd(g.a2), _mm256_set1_pd(g.a1), _mm256_set1_pd(g.a0)};
}

inline __m256d velocity4(const Coefficients& c, __m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d growth =
      _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(c.a2, x), c.a1), x), c.a0);
  return _mm256_mul_pd(_mm256_mul_pd(x, _mm256_sub_pd(one, x)), growth);
}

// Operand order matches std::min(std::max(x, 0.0), 1.0) including -0.0 and NaN.
inline __m256d clamp4(__m256d x) {
  return _mm256_min_pd(_mm256_set1_pd(1.0), _mm256_max_pd(_mm256_setzero_pd(), x));
}

void check_sizes(std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw std::invalid_argument("kernel input/output size mismatch");
}

}  // namespace

void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out) {
  check_sizes(x, out);
  const Coefficients c = broadcast(g);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i, velocity4(c, _mm256_loadu_pd(x.data() + i)));
  }
  for (; i < x.size(); ++i) out[i] = field_velocity(g, x[i]);
}

void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out) {
  check_sizes(x, out);
  const Coefficients c = broadcast(g);
  const __m256d step = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    const __m256d next = _mm256_add_pd(xv, _mm256_mul_pd(step, velocity4(c, xv)));
    _mm256_storeu_pd(out.data() + i, clamp4(next));
  }
  for (; i < x.size(); ++i) out[i] = euler_update(g, x[i], dt);
}

void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out) {
  check_sizes(x, out);
  const Coefficients c = broadcast(g);
  const __m256d step = _mm256_set1_pd(dt);
  const __m256d half = _mm256_set1_pd(0.5 * dt);
  const __m256d sixth = _mm256_set1_pd(dt / 6.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    const __m256d k1 = velocity4(c, xv);
    const __m256d k2 = velocity4(c, _mm256_add_pd(xv, _mm256_mul_pd(half, k1)));
    const __m256d k3 = velocity4(c, _mm256_add_pd(xv, _mm256_mul_pd(half, k2)));
    const __m256d k4 = velocity4(c, _mm256_add_pd(xv, _mm256_mul_pd(step, k3)));
    __m256d sum = _mm256_add_pd(k1, _mm256_mul_pd(two, k2));
    sum = _mm256_add_pd(sum, _mm256_mul_pd(two, k3));
    sum = _mm256_add_pd(sum, k4);
    _mm256_storeu_pd(out.data() + i, clamp4(_mm256_add_pd(xv, _mm256_mul_pd(sixth, sum))));
  }
  for (; i < x.size(); ++i) out[i] = rk4_update(g, x[i], dt);
}

}  // namespace coopdyn::kernels::avx2
