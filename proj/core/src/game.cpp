#include "sgc/game.hpp"

#include <cmath>
#include <cstdlib>

#include "sgc/errors.hpp"

namespace sgc {

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return ExitCode::parse_error;
  if (dynamic_cast<const InputError*>(&e)) return ExitCode::validation_error;
  if (dynamic_cast<const DataError*>(&e)) return ExitCode::validation_error;
  if (dynamic_cast<const NumericalError*>(&e)) return ExitCode::numerical_error;
  if (dynamic_cast<const InvariantError*>(&e))
    return ExitCode::invariant_violation;
  return ExitCode::validation_error;
}

MixedStrategy::MixedStrategy(int player, std::vector<double> weights,
                             double tol)
    : player_(player), weights_(std::move(weights)) {
  if (weights_.empty())
    throw InputError("mixed strategy has no weights (player " +
                     std::to_string(player) + ")");
  double sum = 0.0;
  for (double w : weights_) {
    if (w < 0.0)
      throw InputError("mixed strategy weight is negative (player " +
                       std::to_string(player) + ")");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol)
    throw InputError("mixed strategy weights sum to " + std::to_string(sum) +
                     ", expected 1 (player " + std::to_string(player) + ")");
  if (sum != 1.0)
    for (double& w : weights_) w /= sum;
}

MixedStrategy MixedStrategy::delta(int player, int pure_index,
                                   int num_strategies) {
  std::vector<double> w(static_cast<std::size_t>(num_strategies), 0.0);
  w[static_cast<std::size_t>(pure_index)] = 1.0;
  return MixedStrategy(player, std::move(w));
}

MixedStrategy MixedStrategy::from_normalized(int player,
                                             std::vector<double> weights,
                                             double tol) {
  MixedStrategy m(player, weights, tol);
  m.weights_ = std::move(weights);  // keep the caller's exact values
  return m;
}

Game::Game(std::vector<std::vector<std::string>> strategy_names,
           std::vector<double> payoffs, std::string title,
           std::vector<std::string> player_names)
    : title_(std::move(title)),
      players_(std::move(player_names)),
      strategies_(std::move(strategy_names)),
      payoffs_(std::move(payoffs)) {
  if (strategies_.empty()) throw InputError("game needs at least one player");
  std::size_t profiles = 1;
  for (const auto& names : strategies_) {
    if (names.empty())
      throw InputError("every player needs at least one pure strategy");
    profiles *= names.size();
  }
  profile_count_ = static_cast<int>(profiles);
  const std::size_t expected = profiles * strategies_.size();
  if (payoffs_.size() != expected)
    throw InputError("payoff tensor has " + std::to_string(payoffs_.size()) +
                     " entries, expected " + std::to_string(expected));
  if (players_.empty()) {
    players_.reserve(strategies_.size());
    for (std::size_t i = 0; i < strategies_.size(); ++i)
      players_.push_back("P" + std::to_string(i + 1));
  } else if (players_.size() != strategies_.size()) {
    throw InputError("player name count does not match strategy sets");
  }
}

int Game::profile_index(std::span<const int> profile) const {
  validate_profile(profile);
  int index = 0;
  for (int i = 0; i < player_count(); ++i)
    index = index * strategy_count(i) + profile[static_cast<std::size_t>(i)];
  return index;
}

void Game::decode_profile(int index, std::vector<int>& out) const {
  out.resize(static_cast<std::size_t>(player_count()));
  for (int i = player_count() - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = index % strategy_count(i);
    index /= strategy_count(i);
  }
}

void Game::validate_profile(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != player_count())
    throw InputError("profile has " + std::to_string(profile.size()) +
                     " coordinates, expected " +
                     std::to_string(player_count()));
  for (int i = 0; i < player_count(); ++i)
    if (profile[static_cast<std::size_t>(i)] < 0 ||
        profile[static_cast<std::size_t>(i)] >= strategy_count(i))
      throw InputError("profile coordinate out of range for player " +
                       std::to_string(i));
}

void Game::validate_situation(const SituationProfile& x) const {
  if (static_cast<int>(x.components.size()) != player_count())
    throw InputError("situation has " + std::to_string(x.components.size()) +
                     " components, expected " +
                     std::to_string(player_count()));
  for (int i = 0; i < player_count(); ++i) {
    const MixedStrategy& m = x.components[static_cast<std::size_t>(i)];
    if (m.player() != i)
      throw InputError("situation component " + std::to_string(i) +
                       " belongs to player " + std::to_string(m.player()));
    if (m.size() != strategy_count(i))
      throw InputError("situation component " + std::to_string(i) + " has " +
                       std::to_string(m.size()) + " weights, expected " +
                       std::to_string(strategy_count(i)));
  }
}

double expected_payoff(const Game& game, const SituationProfile& x,
                       int player) {
  game.validate_situation(x);
  const int n = game.player_count();
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  for (int p = 0; p < game.profile_count(); ++p) {
    game.decode_profile(p, s);
    double prob = 1.0;
    for (int j = 0; j < n; ++j)
      prob *= x.components[static_cast<std::size_t>(j)](
          s[static_cast<std::size_t>(j)]);
    if (prob != 0.0) total += game.payoff(player, p) * prob;
  }
  return total;
}

double payoff_difference(const Game& game, std::span<const int> s,
                         std::span<const int> s_tilde, int player) {
  game.validate_profile(s);
  game.validate_profile(s_tilde);
  int differing = -1;
  for (int j = 0; j < game.player_count(); ++j) {
    if (s[static_cast<std::size_t>(j)] != s_tilde[static_cast<std::size_t>(j)]) {
      if (differing != -1) return 0.0;  // differ in more than one coordinate
      differing = j;
    }
  }
  if (differing != player) return 0.0;  // equal, or not i-comparable
  return game.payoff(player, s) - game.payoff(player, s_tilde);
}

std::vector<std::size_t> nash_oracle_indices(
    const Game& game, const std::vector<SituationProfile>& candidates,
    double tol) {
  std::vector<std::size_t> kept;
  const int n = game.player_count();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const SituationProfile& x = candidates[c];
    game.validate_situation(x);
    bool nash = true;
    for (int i = 0; i < n && nash; ++i) {
      const double own = expected_payoff(game, x, i);
      SituationProfile deviated = x;
      for (int j = 0; j < game.strategy_count(i); ++j) {
        deviated.components[static_cast<std::size_t>(i)] =
            MixedStrategy::delta(i, j, game.strategy_count(i));
        if (expected_payoff(game, deviated, i) > own + tol) {
          nash = false;
          break;
        }
      }
    }
    if (nash) kept.push_back(c);
  }
  return kept;
}

std::vector<SituationProfile> nash_oracle(
    const Game& game, const std::vector<SituationProfile>& candidates,
    double tol) {
  std::vector<SituationProfile> out;
  for (std::size_t c : nash_oracle_indices(game, candidates, tol))
    out.push_back(candidates[c]);
  return out;
}

}  // namespace sgc
