#pragma once

#include <span>
#include <string_view>

#include "coopdyn/field.hpp"

// Batched evaluation of the replicator field over many population states.
// The scalar routines are the reference; the AVX2 routines process four
// states per instruction and produce bit-identical results.
namespace coopdyn::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

// True when the AVX2 kernels were compiled in and the CPU supports them.
bool avx2_available() noexcept;

// Best available ISA. Setting COOPDYN_ISA=scalar in the environment forces
// the reference path.
Isa active_isa() noexcept;

// All routines require out.size() == x.size(); out may alias x.
void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out,
              Isa isa = active_isa());
void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out, Isa isa = active_isa());
void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out, Isa isa = active_isa());

namespace scalar {
void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out);
void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out);
void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out);
}  // namespace scalar

namespace avx2 {
void velocity(const GrowthPolynomial& g, std::span<const double> x, std::span<double> out);
void euler_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
                std::span<double> out);
void rk4_step(const GrowthPolynomial& g, double dt, std::span<const double> x,
              std::span<double> out);
}  // namespace avx2

}  // namespace coopdyn::kernels
