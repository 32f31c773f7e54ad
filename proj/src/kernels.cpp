#include "coopdyn/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace coopdyn::kernels {

namespace {

void check_sizes(std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw std::invalid_argument("kernel input/output size mismatch");
}

bool cpu_has_avx2() noexcept {
#if defined(COOPDYN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool forced_scalar() noexcept {
  const char* value = std::getenv("COOPDYN_ISA");
  return value != nullptr && std::string(value) == "scalar";
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
  static const bool available = cpu_has_avx2();
  return available;
}

Isa active_isa() noexcept {
  static const Isa isa = (avx2_available() && !forced_scalar()) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

namespace scalar {

void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out) {
  check_sizes(x, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = field_velocity(g, x[i]);
}

void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out) {
  check_sizes(x, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = euler_update(g, x[i], dt);
}

void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out) {
  check_sizes(x, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = rk4_update(g, x[i], dt);
}

}  // namespace scalar

#if !defined(COOPDYN_HAVE_AVX2)
namespace avx2 {

void velocity(const GrowthPolynomial&, std::span<const double>, std::span<double>) {
  throw std::runtime_error("AVX2 kernels not compiled in");
}
void euler_step(const GrowthPolynomial&, double, std::span<const double>, std::span<double>) {
  throw std::runtime_error("AVX2 kernels not compiled in");
}
void rk4_step(const GrowthPolynomial&, double, std::span<const double>, std::span<double>) {
  throw std::runtime_error("AVX2 kernels not compiled in");
}

}  // namespace avx2
#endif

void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out,
              Isa isa) {
  if (isa == Isa::Avx2 && avx2_available()) return avx2::velocity(g, x, out);
  scalar::velocity(g, x, out);
}

void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out, Isa isa) {
  if (isa == Isa::Avx2 && avx2_available()) return avx2::euler_step(g, dt, x, out);
  scalar::euler_step(g, dt, x, out);
}

void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out, Isa isa) {
  if (isa == Isa::Avx2 && avx2_available()) return avx2::rk4_step(g, dt, x, out);
  scalar::rk4_step(g, dt, x, out);
}

}  // namespace coopdyn::kernels
