#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "coopdyn/analysis.hpp"
#include "coopdyn/game.hpp"
#include "coopdyn/kernels.hpp"

namespace coopdyn {

enum class IntegrationMethod { ForwardEuler, RungeKutta4 };

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::ForwardEuler;
  double step = 1.0;
  std::size_t max_steps = 100000;
  // Converged once a step moves the state by less than this.
  double tolerance = 1e-8;
  // Record every n-th step; the initial and terminal states are always kept.
  std::size_t sample_stride = 1;
  // A state this close to 0 or 1 counts as absorbed.
  double boundary_epsilon = kDefaultEpsilon;

  void validate() const;
};

struct Sample {
  double t;
  double x;

  friend bool operator==(const Sample&, const Sample&) = default;
};

enum class TerminalStatus { Converged, MaxStepsReached, AbsorbedAtBoundary };

struct Trajectory {
  std::vector<Sample> samples;
  TerminalStatus status = TerminalStatus::MaxStepsReached;
  std::size_t steps = 0;

  double initial_state() const { return samples.front().x; }
  double final_state() const { return samples.back().x; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct AttractorEstimate {
  double location;
  bool slow_decay;
};

struct EnsembleConfig {
  std::size_t members = 50;
  std::uint64_t seed = 42;
  double r = 0.2;
  InteractionStrength strength = InteractionStrength::linear(1.0);
  // Terminal states within this distance of an analytic fixed point are
  // assigned to it.
  double bin_radius = 1e-3;

  void validate() const;
};

struct MemberSummary {
  double x0;
  double x_final;
  std::optional<double> attractor;  // empty when no fixed point lies within the bin radius
  bool slow_decay;
  TerminalStatus status;
};

struct Basin {
  double location;
  Stability stability;
  std::size_t count;
};

struct EnsembleResult {
  std::vector<Trajectory> trajectories;
  std::vector<MemberSummary> members;
  std::vector<Basin> basins;  // one per analytic fixed point, ascending
  std::size_t unbinned = 0;
  RegimeReport report;
};

std::string_view to_string(IntegrationMethod method) noexcept;
std::string_view to_string(TerminalStatus status) noexcept;

double step_euler(const ModelInstance& model, double x, double dt);
double step_rk4(const ModelInstance& model, double x, double dt);

Trajectory integrate(const ModelInstance& model, double x0, const IntegratorConfig& config);

// Integrates every initial state in lockstep. For reduced games each step is
// one batched kernel call; results do not depend on the ISA.
std::vector<Trajectory> integrate_batch(const ModelInstance& model,
                                        std::span<const double> initial_states,
                                        const IntegratorConfig& config,
                                        kernels::Isa isa = kernels::active_isa());

// Uniform draws on the open interval (0, 1): the top 53 bits of successive
// std::mt19937_64 outputs scaled by 2^-53, rejecting exact zero.
std::vector<double> draw_initial_states(std::size_t count, std::uint64_t seed);

EnsembleResult run_ensemble(const EnsembleConfig& config, const IntegratorConfig& integrator,
                            kernels::Isa isa = kernels::active_isa());

// Terminal location and whether the tail approaches it algebraically (the
// signature of a semi-stable double root) rather than geometrically.
AttractorEstimate estimate_attractor(const Trajectory& trajectory);

}  // namespace coopdyn
