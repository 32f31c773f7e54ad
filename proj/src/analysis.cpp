#include "coopdyn/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coopdyn {

namespace {

constexpr std::array<std::string_view, 3> kStabilityNames = {"Stable", "Unstable", "SemiStable"};
constexpr std::array<std::string_view, 5> kRegimeNames = {
    "Bistable", "Coexistence", "DefectorDominance", "CriticalLower", "CriticalUpper"};

void require_open_unit(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must lie in the open interval (0, 1)");
}

bool strictly_inside(double x, double epsilon) { return x > epsilon && x < 1.0 - epsilon; }

// Sign of the flow at x + direction * offset points back towards x.
bool flows_towards(const ModelInstance& model, double x, double direction, double offset) {
  const double v = model.replicator_velocity(x + direction * offset);
  return direction > 0.0 ? v < 0.0 : v > 0.0;
}

}  // namespace

std::string_view to_string(FixedPointOrigin origin) noexcept {
  return origin == FixedPointOrigin::Boundary ? "Boundary" : "Internal";
}

std::string_view to_string(Stability stability) noexcept {
  return kStabilityNames[static_cast<std::size_t>(stability)];
}

std::string_view to_string(Regime regime) noexcept {
  return kRegimeNames[static_cast<std::size_t>(regime)];
}

Stability parse_stability(std::string_view text) {
  for (std::size_t i = 0; i < kStabilityNames.size(); ++i) {
    if (kStabilityNames[i] == text) return static_cast<Stability>(i);
  }
  throw std::invalid_argument("unknown stability label: " + std::string(text));
}

Regime parse_regime(std::string_view text) {
  for (std::size_t i = 0; i < kRegimeNames.size(); ++i) {
    if (kRegimeNames[i] == text) return static_cast<Regime>(i);
  }
  throw std::invalid_argument("unknown regime label: " + std::string(text));
}

bool is_critical(Regime regime) noexcept {
  return regime == Regime::CriticalLower || regime == Regime::CriticalUpper;
}

Thresholds critical_thresholds(double r) {
  require_open_unit(r);
  return {1.0 / (1.0 + r), 0.25 * (1.0 + 1.0 / r)};
}

CoexistenceWindow coexistence_window(const DonationGame& game) {
  const double b = game.benefit();
  const double c = game.cost();
  return {b / (b + c), (b + c) / (4.0 * c)};
}

std::optional<double> internal_fixed_point_constant(double p, double r, double epsilon) {
  require_open_unit(r);
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1); p = 1 has no internal fixed point");
  }
  const double x = r / ((1.0 + r) * (1.0 - p));
  if (!strictly_inside(x, epsilon)) return std::nullopt;
  return x;
}

std::optional<std::pair<double, double>> linear_growth_roots(double k, double r, double epsilon) {
  require_open_unit(r);
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("k must be positive");

  // g(x) = 0  <=>  k x^2 - x + r/(1+r) = 0
  const double discriminant = 1.0 - 4.0 * k * r / (1.0 + r);
  if (discriminant < -epsilon) return std::nullopt;
  if (std::abs(discriminant) <= epsilon) {
    const double x = 1.0 / (2.0 * k);
    return std::pair{x, x};
  }
  // Larger root directly (no cancellation), smaller one from the product.
  const double larger = (1.0 + std::sqrt(discriminant)) / (2.0 * k);
  const double product = r / (k * (1.0 + r));
  return std::pair{product / larger, larger};
}

std::vector<double> internal_fixed_points_linear(double k, double r, double epsilon) {
  std::vector<double> roots;
  const auto real = linear_growth_roots(k, r, epsilon);
  if (!real) return roots;
  roots.push_back(real->first);
  if (real->second != real->first) roots.push_back(real->second);
  std::erase_if(roots, [epsilon](double x) { return !strictly_inside(x, epsilon); });
  return roots;
}

FixedPoint classify_fixed_point(const ModelInstance& model, double x,
                                const AnalysisOptions& options) {
  const double eps = options.epsilon;
  if (!model.is_reduced()) {
    throw std::domain_error("fixed-point classification requires the reduced game");
  }
  if (!(x >= -eps && x <= 1.0 + eps) || std::abs(model.replicator_velocity(x)) > eps) {
    throw std::invalid_argument("x = " + std::to_string(x) + " is not a fixed point");
  }

  const bool at_zero = x <= eps;
  const bool at_one = x >= 1.0 - eps;
  FixedPoint fp{x, FixedPointOrigin::Internal, Stability::Stable};
  if (at_zero || at_one) {
    fp.origin = FixedPointOrigin::Boundary;
    fp.location = at_zero ? 0.0 : 1.0;
  }

  const double slope = model.velocity_derivative(fp.location);
  if (slope < -eps) return fp;
  if (slope > eps) {
    fp.stability = Stability::Unstable;
    return fp;
  }

  // Degenerate linearization: read the flow direction on each available side.
  const double delta = options.probe_offset;
  if (at_zero || at_one) {
    const double inward = at_zero ? 1.0 : -1.0;
    fp.stability = flows_towards(model, fp.location, inward, delta) ? Stability::Stable
                                                                    : Stability::Unstable;
    return fp;
  }
  const bool from_below = flows_towards(model, fp.location, -1.0, delta);
  const bool from_above = flows_towards(model, fp.location, 1.0, delta);
  if (from_below && from_above) {
    fp.stability = Stability::Stable;
  } else if (!from_below && !from_above) {
    fp.stability = Stability::Unstable;
  } else {
    fp.stability = Stability::SemiStable;
  }
  return fp;
}

RegimeReport classify_regime(const InteractionStrength& strength, double r,
                             const AnalysisOptions& options) {
  const double eps = options.epsilon;
  const ModelInstance model(ReducedGame(r), strength);
  RegimeReport report{Regime::Bistable, critical_thresholds(r), {}};
  const Thresholds& t = report.thresholds;
  const double parameter = strength.parameter();

  std::vector<double> interior;
  if (strength.kind() == StrengthKind::Constant) {
    if (parameter < 1.0) {
      if (auto x = internal_fixed_point_constant(parameter, r, eps)) interior.push_back(*x);
    }
    if (std::abs(parameter - t.k1) <= eps) {
      report.regime = Regime::CriticalLower;
    } else {
      report.regime = parameter < t.k1 ? Regime::Bistable : Regime::DefectorDominance;
    }
  } else {
    interior = internal_fixed_points_linear(parameter, r, eps);
    if (std::abs(parameter - t.k1) <= eps) {
      report.regime = Regime::CriticalLower;
    } else if (std::abs(parameter - t.k2) <= eps) {
      report.regime = Regime::CriticalUpper;
    } else if (parameter < t.k1) {
      report.regime = Regime::Bistable;
    } else if (parameter < t.k2) {
      report.regime = Regime::Coexistence;
    } else {
      report.regime = Regime::DefectorDominance;
    }
  }

  report.fixed_points.push_back(classify_fixed_point(model, 0.0, options));
  for (double x : interior) {
    if (!report.fixed_points.empty() && x - report.fixed_points.back().location <= eps) continue;
    report.fixed_points.push_back(classify_fixed_point(model, x, options));
  }
  report.fixed_points.push_back(classify_fixed_point(model, 1.0, options));
  return report;
}

std::vector<BifurcationRow> bifurcation_sweep(double r, std::span<const double> grid,
                                              StrengthKind variant,
                                              const AnalysisOptions& options) {
  require_open_unit(r);
  std::vector<BifurcationRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    BifurcationRow row{value, std::nullopt, {}, {}};
    try {
      RegimeReport report = classify_regime(InteractionStrength::make(variant, value), r, options);
      row.regime = report.regime;
      row.fixed_points = std::move(report.fixed_points);
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> linear_grid(double first, double last, std::size_t n) {
  if (n == 0) throw std::invalid_argument("grid must contain at least one point");
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = first;
    return grid;
  }
  const double span = last - first;
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = first + span * (static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.back() = last;
  return grid;
}

}  // namespace coopdyn
