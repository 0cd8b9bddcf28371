#pragma once

#include <span>
#include <string>
#include <vector>

namespace sgc {

/// One absolute tolerance is used for every payoff comparison in the library
/// so the degree criterion and the brute-force equilibrium test always agree.
inline constexpr double kDefaultTolerance = 1e-9;

/// A probability distribution over one player's pure strategies.
///
/// Validated on construction: weights must be nonnegative and sum to 1.
/// A sum off by at most `tol` is renormalized; anything worse is rejected.
class MixedStrategy {
 public:
  MixedStrategy(int player, std::vector<double> weights,
                double tol = kDefaultTolerance);

  /// Delta distribution: the pure strategy `pure_index` embedded in the
  /// mixed-strategy space.
  static MixedStrategy delta(int player, int pure_index, int num_strategies);

  /// Adopts weights that are already normalized (validated, never rescaled),
  /// so distributions survive a serialization round trip bit for bit.
  static MixedStrategy from_normalized(int player, std::vector<double> weights,
                                       double tol = kDefaultTolerance);

  int player() const { return player_; }
  int size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double operator()(int pure_index) const { return weights_[pure_index]; }

  bool same_distribution(const MixedStrategy& other) const {
    return player_ == other.player_ && weights_ == other.weights_;
  }

 private:
  int player_;
  std::vector<double> weights_;
};

/// A situation: one mixed strategy per player, in player order.
struct SituationProfile {
  std::vector<MixedStrategy> components;
};

/// A finite strategic-form game: players, named pure strategies and a dense
/// payoff tensor indexed by the player-major mixed-radix profile index.
class Game {
 public:
  /// `payoffs` is flat with length n * prod(l_i): for profile index p and
  /// player i the utility u_i lives at payoffs[p * n + i].
  Game(std::vector<std::vector<std::string>> strategy_names,
       std::vector<double> payoffs, std::string title = "",
       std::vector<std::string> player_names = {});

  int player_count() const { return static_cast<int>(strategies_.size()); }
  int strategy_count(int player) const {
    return static_cast<int>(strategies_[player].size());
  }
  const std::vector<std::vector<std::string>>& strategy_names() const {
    return strategies_;
  }
  const std::vector<std::string>& player_names() const { return players_; }
  const std::string& title() const { return title_; }
  const std::vector<double>& payoff_tensor() const { return payoffs_; }

  int profile_count() const { return profile_count_; }
  /// Player-major mixed-radix index of a pure profile.
  int profile_index(std::span<const int> profile) const;
  void decode_profile(int index, std::vector<int>& out) const;

  double payoff(int player, int profile_index) const {
    return payoffs_[static_cast<std::size_t>(profile_index) *
                        static_cast<std::size_t>(player_count()) +
                    static_cast<std::size_t>(player)];
  }
  double payoff(int player, std::span<const int> profile) const {
    return payoff(player, profile_index(profile));
  }

  /// The profile validated against this game (size and ranges).
  void validate_profile(std::span<const int> profile) const;
  void validate_situation(const SituationProfile& x) const;

 private:
  std::string title_;
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategies_;
  std::vector<double> payoffs_;
  int profile_count_ = 0;
};

/// Expected payoff e_i(X) of a situation: the payoff tensor contracted with
/// the product distribution of the components.
double expected_payoff(const Game& game, const SituationProfile& x,
                       int player);

/// Candogan-style edge weight between pure profiles:
/// u_i(s) - u_i(s~) when s and s~ differ exactly in coordinate i, else 0.
double payoff_difference(const Game& game, std::span<const int> s,
                         std::span<const int> s_tilde, int player);

/// Brute-force mixed-Nash filter over a finite candidate set: keeps exactly
/// the candidates where no player gains more than `tol` by a pure deviation.
/// Returns positions into `candidates`, ascending. This is the independent
/// oracle the degree criterion is checked against.
std::vector<std::size_t> nash_oracle_indices(
    const Game& game, const std::vector<SituationProfile>& candidates,
    double tol = kDefaultTolerance);

std::vector<SituationProfile> nash_oracle(
    const Game& game, const std::vector<SituationProfile>& candidates,
    double tol = kDefaultTolerance);

}  // namespace sgc
