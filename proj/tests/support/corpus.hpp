#pragma once

// Named games and the random desk-scale corpus shared by the unit and
// acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "sgc/game.hpp"
#include "sgc/io.hpp"

namespace sgc_test {

inline sgc::GameDocument prisoners_dilemma() {
  sgc::GameDocument doc;
  doc.title = "Prisoner's Dilemma";
  doc.strategies = {{"C", "D"}, {"C", "D"}};
  doc.payoffs = {3, 3, 0, 5, 5, 0, 1, 1};
  return doc;
}

inline sgc::GameDocument matching_pennies() {
  sgc::GameDocument doc;
  doc.title = "Matching Pennies";
  doc.strategies = {{"H", "T"}, {"H", "T"}};
  doc.payoffs = {1, -1, -1, 1, -1, 1, 1, -1};
  return doc;
}

inline sgc::GameDocument matching_pennies_with_uniform() {
  sgc::GameDocument doc = matching_pennies();
  doc.mixed = {{{1, 0}, {0, 1}, {0.5, 0.5}}, {{1, 0}, {0, 1}, {0.5, 0.5}}};
  return doc;
}

inline sgc::GameDocument coordination_2x2() {
  sgc::GameDocument doc;
  doc.title = "Coordination";
  doc.strategies = {{"A", "B"}, {"A", "B"}};
  doc.payoffs = {2, 2, 0, 0, 0, 0, 1, 1};
  return doc;
}

inline sgc::GameDocument constant_game(double c) {
  sgc::GameDocument doc;
  doc.title = "Constant";
  doc.strategies = {{"a", "b"}, {"a", "b"}};
  doc.payoffs = {c, c, c, c, c, c, c, c};
  return doc;
}

inline sgc::GameDocument rock_paper_scissors(bool with_uniform = false) {
  sgc::GameDocument doc;
  doc.title = "Rock Paper Scissors";
  doc.strategies = {{"R", "P", "S"}, {"R", "P", "S"}};
  // win 1, lose -1, tie 0
  doc.payoffs = {0, 0, -1, 1, 1,  -1, 1, -1, 0, 0, -1, 1,
                 -1, 1, 1, -1, 0, 0};
  const double third = 1.0 / 3.0;
  std::vector<std::vector<double>> deltas = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  doc.mixed = {deltas, deltas};
  if (with_uniform) {
    doc.mixed[0].push_back({third, third, third});
    doc.mixed[1].push_back({third, third, third});
  }
  return doc;
}

struct CorpusGame {
  sgc::Game game;
  std::vector<std::vector<sgc::MixedStrategy>> mixed;
};

inline sgc::MixedStrategy random_distribution(std::mt19937& rng, int player,
                                              int size) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> which(0, 3);
  if (which(rng) == 0) {
    std::uniform_int_distribution<int> pure(0, size - 1);
    return sgc::MixedStrategy::delta(player, pure(rng), size);
  }
  std::vector<double> w(static_cast<std::size_t>(size));
  double sum = 0.0;
  for (double& x : w) {
    x = u(rng) + 1e-3;
    sum += x;
  }
  for (double& x : w) x /= sum;
  return sgc::MixedStrategy(player, std::move(w));
}

/// n in {2,3}, l_i <= 3, m_i <= 4, payoffs uniform in [-10,10], random
/// distributions (distinct within each player's set).
inline CorpusGame random_corpus_game(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick_n(2, 3);
  std::uniform_int_distribution<int> pick_l(2, 3);
  std::uniform_int_distribution<int> pick_m(1, 4);
  std::uniform_real_distribution<double> pay(-10.0, 10.0);

  const int n = pick_n(rng);
  std::vector<std::vector<std::string>> strategies;
  long profiles = 1;
  for (int i = 0; i < n; ++i) {
    const int l = pick_l(rng);
    std::vector<std::string> names;
    for (int s = 0; s < l; ++s) names.push_back("s" + std::to_string(s + 1));
    strategies.push_back(std::move(names));
    profiles *= l;
  }
  std::vector<double> payoffs(static_cast<std::size_t>(profiles * n));
  for (double& v : payoffs) v = pay(rng);

  sgc::Game game(strategies, payoffs);
  std::vector<std::vector<sgc::MixedStrategy>> mixed;
  for (int i = 0; i < n; ++i) {
    const int m = pick_m(rng);
    std::vector<sgc::MixedStrategy> set;
    while (static_cast<int>(set.size()) < m) {
      sgc::MixedStrategy candidate =
          random_distribution(rng, i, game.strategy_count(i));
      bool duplicate = false;
      for (const sgc::MixedStrategy& existing : set)
        duplicate = duplicate || existing.same_distribution(candidate);
      if (!duplicate) set.push_back(std::move(candidate));
    }
    mixed.push_back(std::move(set));
  }
  return CorpusGame{std::move(game), std::move(mixed)};
}

}  // namespace sgc_test
