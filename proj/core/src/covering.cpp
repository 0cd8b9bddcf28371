#include "sgc/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sgc/errors.hpp"

namespace sgc {

namespace {

// Situation with player i's component replaced by the delta at pure_index,
// the rest taken from the star base.
SituationProfile delta_situation(const SituationComplex& k, int player,
                                 int pure_index,
                                 std::span<const int> base_mixed) {
  SituationProfile x;
  std::size_t slot = 0;
  for (int p = 0; p < k.player_count(); ++p) {
    if (p == player) {
      x.components.push_back(MixedStrategy::delta(
          p, pure_index, k.game().strategy_count(p)));
    } else {
      x.components.push_back(k.mixed(p, base_mixed[slot++]));
    }
  }
  return x;
}

// Entering directions at member `at`: strict wins enter, ties enter both.
int entering_count(std::span<const double> payoffs, std::size_t at,
                   double tol) {
  int deg = 0;
  for (std::size_t m = 0; m < payoffs.size(); ++m)
    if (m != at && payoffs[at] >= payoffs[m] - tol) ++deg;
  return deg;
}

// Payoffs of player i's pure deviations against the base tuple of facet
// `label`, followed by the facet's own e_i. Degree of the last member equals
// strategy_count(i) exactly when the facet is a weak best response.
std::vector<double> nash_comparison_payoffs(const SituationComplex& k,
                                            int label, int player) {
  const std::vector<int>& mk = k.facet_mixed_indices(label);
  std::vector<int> base;
  for (int p = 0; p < k.player_count(); ++p)
    if (p != player) base.push_back(mk[static_cast<std::size_t>(p)]);

  std::vector<double> payoffs;
  for (int j = 0; j < k.game().strategy_count(player); ++j)
    payoffs.push_back(expected_payoff(
        k.game(), delta_situation(k, player, j, base), player));
  payoffs.push_back(k.facet_payoff(label, player));
  return payoffs;
}

}  // namespace

PureStar pure_star(const SituationComplex& k, int player, int pure_index) {
  if (player < 0 || player >= k.player_count())
    throw InputError("player index out of range");
  if (pure_index < 0 || pure_index >= k.game().strategy_count(player))
    throw InputError("pure strategy index out of range for player " +
                     std::to_string(player));

  PureStar star;
  star.player = player;
  star.pure_index = pure_index;
  const long stars = star_count(k, player);
  star.entries.reserve(static_cast<std::size_t>(stars));
  std::vector<int> counts(static_cast<std::size_t>(k.player_count()));
  for (int p = 0; p < k.player_count(); ++p)
    counts[static_cast<std::size_t>(p)] = k.game().strategy_count(p);

  for (long s = 0; s < stars; ++s) {
    const std::vector<int> base = star_base(k, player, static_cast<int>(s));
    const SituationProfile x = delta_situation(k, player, pure_index, base);
    PureStarEntry entry;
    entry.star_index = static_cast<int>(s);
    entry.payoff = expected_payoff(k.game(), x, player);
    std::vector<const std::vector<double>*> components;
    for (const MixedStrategy& m : x.components)
      components.push_back(&m.weights());
    entry.barycenter = situation_barycenter_weights(components, counts);
    star.entries.push_back(std::move(entry));
  }
  return star;
}

Neighborhood cross_level_neighborhood(const SituationComplex& k, int player,
                                      int star_index,
                                      std::span<const int> subset) {
  Neighborhood n;
  n.kind = Neighborhood::Kind::cross_level;
  n.player = player;
  n.flow_player = player;
  n.star_index = star_index;
  const std::vector<int> base = star_base(k, player, star_index);

  std::vector<int> members(subset.begin(), subset.end());
  if (members.empty())
    for (int j = 0; j < k.game().strategy_count(player); ++j)
      members.push_back(j);
  for (int j : members) {
    if (j < 0 || j >= k.game().strategy_count(player))
      throw InputError("pure strategy index out of range");
    n.member_pure.push_back(j);
    n.payoffs.push_back(expected_payoff(
        k.game(), delta_situation(k, player, j, base), player));
  }
  return n;
}

Neighborhood same_level_neighborhood(const SituationComplex& k, int player,
                                     int pure_index, int varying_player,
                                     std::span<const int> others) {
  if (varying_player == player)
    throw InputError("same-level neighborhood varies a player other than i");
  if (static_cast<int>(others.size()) != k.player_count() - 2)
    throw InputError("same-level neighborhood needs the remaining " +
                     std::to_string(k.player_count() - 2) + " indices");

  Neighborhood n;
  n.kind = Neighborhood::Kind::same_level;
  n.player = player;
  n.flow_player = varying_player;
  n.pure_index = pure_index;

  for (int m = 0; m < k.mixed_count(varying_player); ++m) {
    // assemble the base tuple X_i^ with player `varying_player` at index m
    std::vector<int> base;
    std::size_t slot = 0;
    for (int p = 0; p < k.player_count(); ++p) {
      if (p == player) continue;
      if (p == varying_player)
        base.push_back(m);
      else
        base.push_back(others[slot++]);
    }
    n.member_star.push_back(star_index_of(k, player, base));
    n.payoffs.push_back(expected_payoff(
        k.game(), delta_situation(k, player, pure_index, base),
        varying_player));
  }
  return n;
}

int degree(const Neighborhood& n, std::size_t at, double tol) {
  if (at >= n.payoffs.size())
    throw InputError("dual point is not a member of the neighborhood");
  return entering_count(n.payoffs, at, tol);
}

int degree_by_edge_count(const Neighborhood& n, std::size_t at, double tol) {
  if (at >= n.payoffs.size())
    throw InputError("dual point is not a member of the neighborhood");
  int deg = 0;
  for (std::size_t p = 0; p < n.payoffs.size(); ++p)
    for (std::size_t q = p + 1; q < n.payoffs.size(); ++q) {
      const double diff = n.payoffs[q] - n.payoffs[p];
      if (std::abs(diff) <= tol) {
        // tie edge enters both endpoints
        if (p == at || q == at) ++deg;
      } else if (diff > 0.0) {
        if (q == at) ++deg;  // p -> q
      } else {
        if (p == at) ++deg;  // q -> p
      }
    }
  return deg;
}

std::vector<int> compute_Z(const SituationComplex& k, int player, double tol) {
  const int l = k.game().strategy_count(player);
  std::set<int> z;
  for (long s = 0; s < star_count(k, player); ++s) {
    const Neighborhood n =
        cross_level_neighborhood(k, player, static_cast<int>(s));
    for (std::size_t j = 0; j < n.payoffs.size(); ++j)
      if (degree(n, j, tol) == l - 1) z.insert(n.member_pure[j]);
  }
  return std::vector<int>(z.begin(), z.end());
}

std::vector<int> compute_A(const SituationComplex& k, int player,
                           int pure_index, std::span<const int> z,
                           double tol) {
  auto it = std::find(z.begin(), z.end(), pure_index);
  if (it == z.end())
    throw InputError("pure strategy " + std::to_string(pure_index) +
                     " is not in Z_" + std::to_string(player));
  const std::size_t at = static_cast<std::size_t>(it - z.begin());

  std::vector<int> a;
  for (long s = 0; s < star_count(k, player); ++s) {
    const Neighborhood n =
        cross_level_neighborhood(k, player, static_cast<int>(s), z);
    if (degree(n, at, tol) == static_cast<int>(z.size()) - 1)
      a.push_back(static_cast<int>(s));
  }
  return a;
}

std::size_t CoveringComplex::simplex_pos(int sheet, SimplexId base) const {
  const std::size_t per_sheet = simplices.size() /
                                static_cast<std::size_t>(sheet_count);
  const std::size_t pos = static_cast<std::size_t>(sheet) * per_sheet +
                          static_cast<std::size_t>(base);
  if (pos >= simplices.size())
    throw InputError("covering simplex index out of range");
  return pos;
}

std::pair<int, double> CoveringComplex::project_join(
    const SituationComplex& k, int label) const {
  const SimplexId base = k.facet_by_label(label);
  double f = 0.0;
  for (int sheet = 0; sheet < sheet_count; ++sheet)
    f += simplices[simplex_pos(sheet, base)].weight;
  return {label, f};
}

CoveringComplex build_covering(const SituationComplex& k, double tol) {
  CoveringComplex c;
  const int n = k.player_count();
  c.sheet_count = n;
  c.base_vertex_count = k.vertex_count();

  for (int sheet = 0; sheet < n; ++sheet) {
    for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplex_count());
         ++id) {
      CoveringSimplex cs;
      cs.sheet = sheet;
      cs.base = id;
      for (int v : k.simplex(id).vertices)
        cs.vertices.push_back(sheet * k.vertex_count() + v);
      const int label = k.label_of(id);
      cs.weight = label >= 0 ? k.facet_payoff(label, sheet) : 0.0;
      c.simplices.push_back(std::move(cs));
    }
  }
  c.vertex_projection.resize(static_cast<std::size_t>(n) *
                             static_cast<std::size_t>(k.vertex_count()));
  for (int sheet = 0; sheet < n; ++sheet)
    for (int v = 0; v < k.vertex_count(); ++v)
      c.vertex_projection[static_cast<std::size_t>(
          sheet * k.vertex_count() + v)] = v;

  c.z.resize(static_cast<std::size_t>(n));
  c.a.resize(static_cast<std::size_t>(n));
  c.open_membership.assign(
      static_cast<std::size_t>(n),
      std::vector<std::vector<int>>(
          static_cast<std::size_t>(k.facet_count())));
  for (int i = 0; i < n; ++i) {
    c.z[static_cast<std::size_t>(i)] = compute_Z(k, i, tol);
    const std::vector<int>& z = c.z[static_cast<std::size_t>(i)];
    for (std::size_t zpos = 0; zpos < z.size(); ++zpos) {
      c.a[static_cast<std::size_t>(i)].push_back(
          compute_A(k, i, z[zpos], z, tol));
    }
    // a facet belongs to the open of s_i^j when its base tuple lies in A_i
    for (int label = 0; label < k.facet_count(); ++label) {
      const std::vector<int>& mk = k.facet_mixed_indices(label);
      std::vector<int> base;
      for (int p = 0; p < n; ++p)
        if (p != i) base.push_back(mk[static_cast<std::size_t>(p)]);
      const int star = star_index_of(k, i, base);
      for (std::size_t zpos = 0; zpos < z.size(); ++zpos) {
        const std::vector<int>& a_set = c.a[static_cast<std::size_t>(i)][zpos];
        if (std::binary_search(a_set.begin(), a_set.end(), star))
          c.open_membership[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(label)]
                               .push_back(static_cast<int>(zpos));
      }
    }
  }
  return c;
}

CoveringReport verify_covering(const CoveringComplex& covering,
                               const SituationComplex& k) {
  CoveringReport report;

  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  // (a) each sheet is closed under taking faces
  {
    std::set<std::pair<int, std::vector<int>>> present;
    for (const CoveringSimplex& cs : covering.simplices)
      present.insert({cs.sheet, sorted(cs.vertices)});
    for (const CoveringSimplex& cs : covering.simplices) {
      if (cs.vertices.size() < 2) continue;
      const std::vector<int> verts = sorted(cs.vertices);
      for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        std::vector<int> face = verts;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        if (!present.count({cs.sheet, face})) {
          report.sheets_simplicial.pass = false;
          report.sheets_simplicial.witness =
              "sheet " + std::to_string(cs.sheet) +
              " misses a face of its copy of base simplex " +
              std::to_string(cs.base);
          break;
        }
      }
      if (!report.sheets_simplicial.pass) break;
    }
  }

  // (b) projected simplices are simplices of the base
  for (const CoveringSimplex& cs : covering.simplices) {
    std::vector<int> image;
    for (int v : cs.vertices) {
      if (v < 0 ||
          v >= static_cast<int>(covering.vertex_projection.size())) {
        report.map_simplicial.pass = false;
        report.map_simplicial.witness =
            "covering vertex " + std::to_string(v) + " has no projection";
        break;
      }
      image.push_back(covering.vertex_projection[static_cast<std::size_t>(v)]);
    }
    if (!report.map_simplicial.pass) break;
    std::sort(image.begin(), image.end());
    const bool degenerate =
        std::adjacent_find(image.begin(), image.end()) != image.end();
    if (degenerate || k.find(image) == kInvalidSimplex) {
      report.map_simplicial.pass = false;
      report.map_simplicial.witness =
          "image of sheet " + std::to_string(cs.sheet) + " copy of simplex " +
          std::to_string(cs.base) + " is not a simplex of the base";
      break;
    }
  }

  // (c) preimages decompose into pairwise disjoint bijective copies
  {
    // group covering simplices by their projected vertex set
    std::map<std::vector<int>, std::vector<std::size_t>> preimage;
    for (std::size_t s = 0; s < covering.simplices.size(); ++s) {
      std::vector<int> image;
      for (int v : covering.simplices[s].vertices)
        if (v >= 0 && v < static_cast<int>(covering.vertex_projection.size()))
          image.push_back(
              covering.vertex_projection[static_cast<std::size_t>(v)]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      preimage[image].push_back(s);
    }
    for (SimplexId id = 0;
         report.preimages_disjoint.pass &&
         id < static_cast<SimplexId>(k.simplex_count());
         ++id) {
      auto it = preimage.find(k.simplex(id).vertices);
      if (it == preimage.end()) continue;
      std::set<int> used;
      for (std::size_t s : it->second) {
        const CoveringSimplex& cs = covering.simplices[s];
        // bijective restriction: as many distinct images as base vertices
        std::set<int> images;
        for (int v : cs.vertices)
          images.insert(
              covering.vertex_projection[static_cast<std::size_t>(v)]);
        if (cs.vertices.size() != k.simplex(id).vertices.size() ||
            images.size() != cs.vertices.size()) {
          report.preimages_disjoint.pass = false;
          report.preimages_disjoint.witness =
              "restriction of p to sheet " + std::to_string(cs.sheet) +
              " copy of simplex " + std::to_string(id) + " is not a bijection";
          break;
        }
        for (int v : cs.vertices) {
          if (used.count(v)) {
            report.preimages_disjoint.pass = false;
            report.preimages_disjoint.witness =
                "preimage components of simplex " + std::to_string(id) +
                " share covering vertex " + std::to_string(v);
            break;
          }
          used.insert(v);
        }
        if (!report.preimages_disjoint.pass) break;
      }
    }
  }
  return report;
}

std::vector<int> best_response(const SituationComplex& k, int player,
                               int star_index, double tol) {
  const ComparableStar star = comparable_star(k, player, star_index);
  std::vector<int> labels;
  for (int label : star.facet_labels) {
    const std::vector<double> cmp = nash_comparison_payoffs(k, label, player);
    if (entering_count(cmp, cmp.size() - 1, tol) ==
        k.game().strategy_count(player))
      labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

std::vector<int> nash_simplices(const SituationComplex& k, double tol) {
  std::vector<int> nash;
  for (int label = 0; label < k.facet_count(); ++label) {
    bool all = true;
    for (int i = 0; i < k.player_count() && all; ++i) {
      const std::vector<double> cmp = nash_comparison_payoffs(k, label, i);
      all = entering_count(cmp, cmp.size() - 1, tol) ==
            k.game().strategy_count(i);
    }
    if (all) nash.push_back(label);
  }
  return nash;
}

std::vector<DegreeReport> degree_table(const SituationComplex& k, double tol) {
  std::vector<DegreeReport> table;
  table.reserve(static_cast<std::size_t>(k.facet_count()));
  for (int label = 0; label < k.facet_count(); ++label) {
    DegreeReport row;
    row.label = label;
    row.nash = true;
    for (int i = 0; i < k.player_count(); ++i) {
      const std::vector<double> cmp = nash_comparison_payoffs(k, label, i);
      const int deg =
          entering_count(cmp, cmp.size() - 1, tol);
      row.degrees.push_back(deg);
      row.required.push_back(k.game().strategy_count(i));
      row.nash = row.nash && deg == k.game().strategy_count(i);
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace sgc
