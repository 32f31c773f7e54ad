#include "coopdyn/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace coopdyn {

namespace {

// Consecutive increments of a trajectory, truncated at the first zero
// increment; only pairs sharing the nominal sample spacing are kept.
std::vector<double> increment_ratios(const std::vector<Sample>& samples) {
  std::vector<double> ratios;
  if (samples.size() < 3) return ratios;
  const double spacing = samples[1].t - samples[0].t;
  auto regular = [&](std::size_t i) {
    return std::abs((samples[i + 1].t - samples[i].t) - spacing) <= 1e-9 * spacing;
  };
  for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
    if (!regular(i) || !regular(i + 1)) break;
    const double first = samples[i + 1].x - samples[i].x;
    const double second = samples[i + 2].x - samples[i + 1].x;
    if (first == 0.0 || second == 0.0) break;
    ratios.push_back(second / first);
  }
  return ratios;
}

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

bool monotone_tail(const std::vector<Sample>& samples, std::size_t window) {
  const std::size_t n = samples.size();
  const std::size_t first = n > window + 1 ? n - window - 1 : 0;
  int sign = 0;
  for (std::size_t i = first; i + 1 < n; ++i) {
    const double d = samples[i + 1].x - samples[i].x;
    const int s = (d > 0.0) - (d < 0.0);
    if (s == 0) continue;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return true;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
  if (max_steps < 1) throw std::invalid_argument("max steps must be at least 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (sample_stride < 1) throw std::invalid_argument("sample stride must be at least 1");
  if (!(boundary_epsilon >= 0.0)) throw std::invalid_argument("boundary epsilon must be >= 0");
}

void EnsembleConfig::validate() const {
  if (members < 1) throw std::invalid_argument("ensemble needs at least one member");
  if (!(bin_radius > 0.0)) throw std::invalid_argument("bin radius must be positive");
  (void)ReducedGame(r);
}

std::string_view to_string(IntegrationMethod method) noexcept {
  return method == IntegrationMethod::ForwardEuler ? "euler" : "rk4";
}

std::string_view to_string(TerminalStatus status) noexcept {
  switch (status) {
    case TerminalStatus::Converged: return "Converged";
    case TerminalStatus::MaxStepsReached: return "MaxStepsReached";
    case TerminalStatus::AbsorbedAtBoundary: return "AbsorbedAtBoundary";
  }
  return "Unknown";
}

double step_euler(const ModelInstance& model, double x, double dt) {
  return clamp_unit(x + dt * model.replicator_velocity(x));
}

double step_rk4(const ModelInstance& model, double x, double dt) {
  if (model.is_reduced()) return rk4_update(model.growth_polynomial(), x, dt);
  // General games: velocity_from_fitness needs states inside [0, 1].
  auto v = [&](double y) { return model.replicator_velocity(clamp_unit(y)); };
  const double half = 0.5 * dt;
  const double k1 = v(x);
  const double k2 = v(x + half * k1);
  const double k3 = v(x + half * k2);
  const double k4 = v(x + dt * k3);
  return clamp_unit(x + (dt / 6.0) * (((k1 + 2.0 * k2) + 2.0 * k3) + k4));
}

Trajectory integrate(const ModelInstance& model, double x0, const IntegratorConfig& config) {
  const double start[] = {x0};
  return std::move(integrate_batch(model, start, config).front());
}

std::vector<Trajectory> integrate_batch(const ModelInstance& model,
                                        std::span<const double> initial_states,
                                        const IntegratorConfig& config, kernels::Isa isa) {
  config.validate();
  const std::size_t n = initial_states.size();
  const double dt = config.step;
  const double edge = config.boundary_epsilon;
  const bool euler = config.method == IntegrationMethod::ForwardEuler;

  std::vector<Trajectory> out(n);
  std::vector<double> x(n);
  std::vector<double> next(n);
  std::vector<bool> active(n, true);
  std::size_t remaining = n;

  for (std::size_t i = 0; i < n; ++i) {
    x[i] = PopulationState(initial_states[i]).cooperators();
    out[i].samples.push_back({0.0, x[i]});
    if (x[i] <= edge || x[i] >= 1.0 - edge) {
      out[i].status = TerminalStatus::AbsorbedAtBoundary;
      active[i] = false;
      --remaining;
    }
  }

  auto advance = [&] {
    if (model.is_reduced()) {
      const GrowthPolynomial g = model.growth_polynomial();
      if (euler) {
        kernels::euler_step(g, dt, x, next, isa);
      } else {
        kernels::rk4_step(g, dt, x, next, isa);
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) next[i] = euler ? step_euler(model, x[i], dt) : step_rk4(model, x[i], dt);
    }
  };

  for (std::size_t step = 1; step <= config.max_steps && remaining > 0; ++step) {
    advance();
    const double t = static_cast<double>(step) * dt;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const double delta = next[i] - x[i];
      x[i] = next[i];

      bool done = true;
      if (std::abs(delta) < config.tolerance) {
        out[i].status = TerminalStatus::Converged;
      } else if (x[i] <= edge || x[i] >= 1.0 - edge) {
        out[i].status = TerminalStatus::AbsorbedAtBoundary;
      } else if (step == config.max_steps) {
        out[i].status = TerminalStatus::MaxStepsReached;
      } else {
        done = false;
      }

      if (done || step % config.sample_stride == 0) out[i].samples.push_back({t, x[i]});
      if (done) {
        out[i].steps = step;
        active[i] = false;
        --remaining;
      }
    }
  }
  return out;
}

std::vector<double> draw_initial_states(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> states;
  states.reserve(count);
  while (states.size() < count) {
    const std::uint64_t bits = engine() >> 11;
    if (bits == 0) continue;
    states.push_back(static_cast<double>(bits) * 0x1.0p-53);
  }
  return states;
}

AttractorEstimate estimate_attractor(const Trajectory& trajectory) {
  const auto& samples = trajectory.samples;
  if (samples.empty()) throw std::invalid_argument("empty trajectory");
  const double location = samples.back().x;
  const bool stationary = std::all_of(samples.begin(), samples.end(),
                                      [&](const Sample& s) { return s.x == samples.front().x; });
  if (stationary) return {location, false};
  if (samples.size() < 10) {
    throw std::invalid_argument("attractor estimate needs at least 10 samples");
  }
  if (trajectory.status == TerminalStatus::MaxStepsReached && !monotone_tail(samples, 100)) {
    throw std::invalid_argument("trajectory did not settle: tail is not monotone");
  }

  // Geometric approach keeps the increment ratio at a constant below one.
  // Algebraic approach pushes it towards one, with 1 - ratio shrinking like
  // 1/n, so the tail ratio must be near one and markedly closer to one than
  // at mid-trajectory.
  const std::vector<double> ratios = increment_ratios(samples);
  if (ratios.size() < 8) return {location, false};
  const std::size_t window = std::min<std::size_t>(100, ratios.size() / 2);
  const std::span<const double> all(ratios);
  const double tail = mean(all.last(window));
  const double middle = mean(all.subspan(ratios.size() / 2 - window, window));
  const bool near_one = tail >= 0.9 && tail <= 1.0;
  const bool sharpening = (1.0 - tail) <= 0.75 * (1.0 - middle);
  return {location, near_one && sharpening};
}

EnsembleResult run_ensemble(const EnsembleConfig& config, const IntegratorConfig& integrator,
                            kernels::Isa isa) {
  config.validate();
  integrator.validate();
  const ModelInstance model(ReducedGame(config.r), config.strength);
  const std::vector<double> initial = draw_initial_states(config.members, config.seed);

  EnsembleResult result;
  result.report = classify_regime(config.strength, config.r);
  result.trajectories = integrate_batch(model, initial, integrator, isa);
  for (const FixedPoint& fp : result.report.fixed_points) {
    result.basins.push_back({fp.location, fp.stability, 0});
  }

  for (const Trajectory& trajectory : result.trajectories) {
    MemberSummary member{trajectory.initial_state(), trajectory.final_state(), std::nullopt, false,
                         trajectory.status};
    try {
      member.slow_decay = estimate_attractor(trajectory).slow_decay;
    } catch (const std::invalid_argument&) {
      member.slow_decay = false;
    }

    Basin* nearest = nullptr;
    double best = config.bin_radius;
    for (Basin& basin : result.basins) {
      const double distance = std::abs(basin.location - member.x_final);
      if (distance <= best) {
        best = distance;
        nearest = &basin;
      }
    }
    if (nearest != nullptr) {
      ++nearest->count;
      member.attractor = nearest->location;
    } else {
      ++result.unbinned;
    }
    result.members.push_back(member);
  }
  return result;
}

}  // namespace coopdyn
