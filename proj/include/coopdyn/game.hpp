#pragma once

#include <optional>
#include <variant>

#include "coopdyn/field.hpp"

namespace coopdyn {

inline constexpr double kDefaultEpsilon = 1e-9;

// 2x2 symmetric game, row player's payoffs:
//        C  D
//    C   R  S
//    D   T  P
class PayoffMatrix {
 public:
  // Any finite payoffs.
  PayoffMatrix(double reward, double sucker, double temptation, double punishment);

  // Requires T > R > P > S.
  static PayoffMatrix prisoners_dilemma(double reward, double sucker, double temptation,
                                        double punishment);

  double reward() const noexcept { return reward_; }
  double sucker() const noexcept { return sucker_; }
  double temptation() const noexcept { return temptation_; }
  double punishment() const noexcept { return punishment_; }

  bool is_prisoners_dilemma() const noexcept;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  double reward_;
  double sucker_;
  double temptation_;
  double punishment_;
};

// One-parameter dilemma (R, S, T, P) = (1, 0, 1 + r, r), r in (0, 1).
class ReducedGame {
 public:
  explicit ReducedGame(double r);

  double r() const noexcept { return r_; }
  PayoffMatrix payoffs() const { return PayoffMatrix(1.0, 0.0, 1.0 + r_, r_); }

  friend bool operator==(const ReducedGame&, const ReducedGame&) = default;

 private:
  double r_;
};

// Cooperation costs c and gives b to the partner: (R, S, T, P) = (b - c, -c, b, 0).
class DonationGame {
 public:
  DonationGame(double benefit, double cost);

  double benefit() const noexcept { return benefit_; }
  double cost() const noexcept { return cost_; }
  PayoffMatrix payoffs() const;

 private:
  double benefit_;
  double cost_;
};

// r = c / b
ReducedGame donation_to_reduced(const DonationGame& game);

enum class StrengthKind { Constant, LinearInFrequency };

// Intensity f(x) with which a cooperator engages a defector, as a function of
// the cooperator frequency x. The linear form is deliberately not clamped to
// [0, 1]: k above 1 is part of the model.
class InteractionStrength {
 public:
  // f(x) = p, p in [0, 1]
  static InteractionStrength constant(double p);
  // f(x) = k x, k > 0
  static InteractionStrength linear(double k);
  static InteractionStrength make(StrengthKind kind, double parameter);

  StrengthKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return parameter_; }

  double operator()(double x) const noexcept {
    return kind_ == StrengthKind::Constant ? parameter_ : parameter_ * x;
  }

  friend bool operator==(const InteractionStrength&, const InteractionStrength&) = default;

 private:
  InteractionStrength(StrengthKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  StrengthKind kind_;
  double parameter_;
};

// Cooperator frequency. Values within epsilon outside [0, 1] snap to the
// boundary; anything further out is rejected.
class PopulationState {
 public:
  explicit PopulationState(double x, double epsilon = kDefaultEpsilon);

  double cooperators() const noexcept { return x_; }
  double defectors() const noexcept { return 1.0 - x_; }

 private:
  double x_;
};

struct FitnessPair {
  double cooperator;
  double defector;
};

class ModelInstance {
 public:
  ModelInstance(ReducedGame game, InteractionStrength strength);
  ModelInstance(PayoffMatrix payoffs, InteractionStrength strength);

  bool is_reduced() const noexcept { return std::holds_alternative<ReducedGame>(game_); }
  std::optional<ReducedGame> reduced_game() const;
  PayoffMatrix payoffs() const;
  const InteractionStrength& strength() const noexcept { return strength_; }

  // f_C = x R + y f(x) S,  f_D = x f(x) T + y P
  FitnessPair fitness_pair(PopulationState state) const;
  // phi = x f_C + y f_D
  double mean_fitness(PopulationState state) const;

  // Reduced games only; throws std::domain_error otherwise.
  GrowthPolynomial growth_polynomial() const;
  double growth_function(double x) const;
  double velocity_derivative(double x) const;

  // x (1 - x) g(x) for reduced games, x (f_C - phi) otherwise.
  double replicator_velocity(double x) const;
  // Always x (f_C - phi); x must lie in [0, 1].
  double velocity_from_fitness(double x) const;

 private:
  std::variant<ReducedGame, PayoffMatrix> game_;
  InteractionStrength strength_;
  std::optional<GrowthPolynomial> polynomial_;
};

}  // namespace coopdyn
