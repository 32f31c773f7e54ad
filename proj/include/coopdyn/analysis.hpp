#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopdyn/game.hpp"

namespace coopdyn {

struct AnalysisOptions {
  // Zero test for velocities, derivatives, discriminants and boundary margins.
  double epsilon = kDefaultEpsilon;
  // Offset of the sign probes used when the linearization is degenerate.
  double probe_offset = 1e-4;
};

enum class FixedPointOrigin { Boundary, Internal };
enum class Stability { Stable, Unstable, SemiStable };
enum class Regime { Bistable, Coexistence, DefectorDominance, CriticalLower, CriticalUpper };

struct FixedPoint {
  double location;
  FixedPointOrigin origin;
  Stability stability;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

// k1 = 1/(1+r) separates bistability from coexistence; k2 = (1+r)/(4r) is
// the largest k for which g has real roots.
struct Thresholds {
  double k1;
  double k2;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct RegimeReport {
  Regime regime;
  Thresholds thresholds;
  std::vector<FixedPoint> fixed_points;  // ascending by location

  friend bool operator==(const RegimeReport&, const RegimeReport&) = default;
};

struct BifurcationRow {
  double parameter;
  std::optional<Regime> regime;  // empty when the parameter was rejected
  std::vector<FixedPoint> fixed_points;
  std::string error;
};

// Bounds of k for which cooperators and defectors coexist in the donation game.
struct CoexistenceWindow {
  double lower;  // b / (b + c)
  double upper;  // (b + c) / (4 c)
};

std::string_view to_string(FixedPointOrigin origin) noexcept;
std::string_view to_string(Stability stability) noexcept;
std::string_view to_string(Regime regime) noexcept;
Stability parse_stability(std::string_view text);
Regime parse_regime(std::string_view text);

bool is_critical(Regime regime) noexcept;

Thresholds critical_thresholds(double r);

CoexistenceWindow coexistence_window(const DonationGame& game);

// r / [(1+r)(1-p)] when it lies strictly inside (0, 1).
std::optional<double> internal_fixed_point_constant(double p, double r,
                                                    double epsilon = kDefaultEpsilon);

// Both real roots of g for f(x) = k x, smaller first, wherever they lie.
// Empty when the discriminant is below -epsilon; a discriminant within
// epsilon of zero gives the double root 1/(2k) twice.
std::optional<std::pair<double, double>> linear_growth_roots(double k, double r,
                                                             double epsilon = kDefaultEpsilon);

// Roots of -k(1+r)x^2 + (1+r)x - r inside (0, 1), ascending. A discriminant
// within epsilon of zero yields the single double root 1/(2k).
std::vector<double> internal_fixed_points_linear(double k, double r,
                                                 double epsilon = kDefaultEpsilon);

// Requires a reduced-game model and |D(x)| <= epsilon.
FixedPoint classify_fixed_point(const ModelInstance& model, double x,
                                const AnalysisOptions& options = {});

RegimeReport classify_regime(const InteractionStrength& strength, double r,
                             const AnalysisOptions& options = {});

// One row per grid value, in grid order. Invalid parameters produce a row
// carrying the error message instead of aborting the sweep.
std::vector<BifurcationRow> bifurcation_sweep(double r, std::span<const double> grid,
                                              StrengthKind variant,
                                              const AnalysisOptions& options = {});

// n evenly spaced values from first to last inclusive.
std::vector<double> linear_grid(double first, double last, std::size_t n);

}  // namespace coopdyn
