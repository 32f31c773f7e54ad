#include "coopdyn/game.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace coopdyn {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(double reward, double sucker, double temptation, double punishment)
    : reward_(reward), sucker_(sucker), temptation_(temptation), punishment_(punishment) {
  require_finite(reward, "reward");
  require_finite(sucker, "sucker payoff");
  require_finite(temptation, "temptation");
  require_finite(punishment, "punishment");
}

PayoffMatrix PayoffMatrix::prisoners_dilemma(double reward, double sucker, double temptation,
                                             double punishment) {
  PayoffMatrix m(reward, sucker, temptation, punishment);
  if (!m.is_prisoners_dilemma()) {
    throw std::invalid_argument("payoffs violate the dilemma ordering T > R > P > S");
  }
  return m;
}

bool PayoffMatrix::is_prisoners_dilemma() const noexcept {
  return temptation_ > reward_ && reward_ > punishment_ && punishment_ > sucker_;
}

ReducedGame::ReducedGame(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("r must lie in the open interval (0, 1)");
  }
}

DonationGame::DonationGame(double benefit, double cost) : benefit_(benefit), cost_(cost) {
  require_finite(benefit, "benefit");
  require_finite(cost, "cost");
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
  if (!(benefit > cost)) throw std::invalid_argument("benefit must exceed cost");
}

PayoffMatrix DonationGame::payoffs() const {
  return PayoffMatrix(benefit_ - cost_, -cost_, benefit_, 0.0);
}

ReducedGame donation_to_reduced(const DonationGame& game) {
  return ReducedGame(game.cost() / game.benefit());
}

InteractionStrength InteractionStrength::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("constant interaction strength p must lie in [0, 1]");
  }
  return InteractionStrength(StrengthKind::Constant, p);
}

InteractionStrength InteractionStrength::linear(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("maximum interaction strength k must be positive");
  }
  return InteractionStrength(StrengthKind::LinearInFrequency, k);
}

InteractionStrength InteractionStrength::make(StrengthKind kind, double parameter) {
  return kind == StrengthKind::Constant ? constant(parameter) : linear(parameter);
}

PopulationState::PopulationState(double x, double epsilon) : x_(x) {
  if (!(x >= -epsilon && x <= 1.0 + epsilon)) {
    throw std::invalid_argument("cooperator frequency must lie in [0, 1]");
  }
  x_ = clamp_unit(x);
}

ModelInstance::ModelInstance(ReducedGame game, InteractionStrength strength)
    : game_(game), strength_(strength) {
  const double r = game.r();
  const double p = strength.parameter();
  if (strength.kind() == StrengthKind::Constant) {
    polynomial_ = GrowthPolynomial{0.0, (1.0 + r) * (1.0 - p), -r};
  } else {
    polynomial_ = GrowthPolynomial{-p * (1.0 + r), 1.0 + r, -r};
  }
}

ModelInstance::ModelInstance(PayoffMatrix payoffs, InteractionStrength strength)
    : game_(payoffs), strength_(strength) {}

std::optional<ReducedGame> ModelInstance::reduced_game() const {
  if (const auto* g = std::get_if<ReducedGame>(&game_)) return *g;
  return std::nullopt;
}

PayoffMatrix ModelInstance::payoffs() const {
  if (const auto* g = std::get_if<ReducedGame>(&game_)) return g->payoffs();
  return std::get<PayoffMatrix>(game_);
}

FitnessPair ModelInstance::fitness_pair(PopulationState state) const {
  const PayoffMatrix m = payoffs();
  const double x = state.cooperators();
  const double y = state.defectors();
  const double f = strength_(x);
  return {x * m.reward() + y * f * m.sucker(), x * f * m.temptation() + y * m.punishment()};
}

double ModelInstance::mean_fitness(PopulationState state) const {
  const auto [fc, fd] = fitness_pair(state);
  return state.cooperators() * fc + state.defectors() * fd;
}

GrowthPolynomial ModelInstance::growth_polynomial() const {
  if (!polynomial_) {
    throw std::domain_error("growth function is only defined for the reduced game");
  }
  return *polynomial_;
}

double ModelInstance::growth_function(double x) const { return growth_polynomial()(x); }

double ModelInstance::velocity_derivative(double x) const {
  return field_derivative(growth_polynomial(), x);
}

double ModelInstance::replicator_velocity(double x) const {
  if (polynomial_) return field_velocity(*polynomial_, x);
  return velocity_from_fitness(x);
}

double ModelInstance::velocity_from_fitness(double x) const {
  const PopulationState state(x);
  const double xc = state.cooperators();
  const auto [fc, fd] = fitness_pair(state);
  const double phi = xc * fc + state.defectors() * fd;
  return xc * (fc - phi);
}

}  // namespace coopdyn
