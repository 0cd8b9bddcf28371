#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgc/complex.hpp"
#include "sgc/nerve.hpp"

namespace sgc {

/// One situation of a pure star: the delta at s_i^j joined with a base tuple
/// X_i^ from the complex's mixed sets.
struct PureStarEntry {
  int star_index;                  // X_i^
  double payoff;                   // e_i of the joined situation
  std::vector<double> barycenter;  // convex weights over the n components
};

/// st(s_i^j): player i's pure strategy j against every X_i^ in P_i^.
struct PureStar {
  int player = -1;
  int pure_index = -1;
  std::vector<PureStarEntry> entries;  // ascending star index
};

PureStar pure_star(const SituationComplex& k, int player, int pure_index);

/// Neighborhood of dual points inside the union of pure stars. Cross-level
/// fixes X_i^ and varies player i's pure strategy (flows use e_i); same-level
/// stays inside st(s_i^r) and varies one other player m (flows use e_m).
struct Neighborhood {
  enum class Kind { cross_level, same_level };
  Kind kind = Kind::cross_level;
  int player = -1;       // i, the pure-star owner
  int flow_player = -1;  // whose payoffs direct the flows
  int star_index = -1;   // cross-level: the fixed X_i^
  int pure_index = -1;   // same-level: the fixed s_i^r
  std::vector<int> member_pure;  // cross-level: pure index per member
  std::vector<int> member_star;  // same-level: star index per member
  std::vector<double> payoffs;   // dual-point weights, one per member
};

/// st_s(X_i^): the l_i situations s_i^j v X_i^. `subset` restricts the pure
/// strategies (used for st_{Z_i}); empty means all of S_i.
Neighborhood cross_level_neighborhood(const SituationComplex& k, int player,
                                      int star_index,
                                      std::span<const int> subset = {});

/// Within st(s_i^r): varies player m's mixed strategy against fixed indices
/// for the remaining players. `others` holds the k-index of every player
/// except i and m, ascending player order.
Neighborhood same_level_neighborhood(const SituationComplex& k, int player,
                                     int pure_index, int varying_player,
                                     std::span<const int> others);

/// Number of flow directions entering member `at`, ties entering both ends.
int degree(const Neighborhood& n, std::size_t at,
           double tol = kDefaultTolerance);

/// Same count obtained by materializing every pairwise flow edge and counting
/// literally; cross-validates `degree`.
int degree_by_edge_count(const Neighborhood& n, std::size_t at,
                         double tol = kDefaultTolerance);

/// Z_i: pure strategies of player i with maximal degree in at least one
/// cross-level neighborhood (weak best response to some X_i^). Sorted.
std::vector<int> compute_Z(const SituationComplex& k, int player,
                           double tol = kDefaultTolerance);

/// A_i(s_i^j): the X_i^ (star indices) against which s_i^j is weakly maximal
/// among Z_i. `pure_index` must belong to Z_i.
std::vector<int> compute_A(const SituationComplex& k, int player,
                           int pure_index, std::span<const int> z,
                           double tol = kDefaultTolerance);

/// One simplex of the covering: a per-sheet copy of a base simplex. Vertex
/// ids live in the disjoint union (sheet * base_vertex_count + v).
struct CoveringSimplex {
  int sheet;
  SimplexId base;
  std::vector<int> vertices;
  double weight;  // e_sheet for facet copies, 0 for proper faces
};

/// Per-player sheets of weighted simplices with the projection onto K*_G.
/// The wedge is a disjoint union tagged by sheet; facet copies additionally
/// record which covering opens A_i(s_i^j) x P_i contain them.
struct CoveringComplex {
  int sheet_count = 0;
  int base_vertex_count = 0;
  std::vector<CoveringSimplex> simplices;  // sheet-major, base id ascending
  std::vector<int> vertex_projection;      // covering vertex -> base vertex
  std::vector<std::vector<int>> z;         // per player
  std::vector<std::vector<std::vector<int>>> a;  // per player, per Z position
  /// open_membership[i][label] = positions into z[i] whose open contains the
  /// sheet-i copy of the facet.
  std::vector<std::vector<std::vector<int>>> open_membership;

  std::size_t simplex_pos(int sheet, SimplexId base) const;
  /// Projection of the join assembled from one facet: (label, f = sum e_i).
  std::pair<int, double> project_join(const SituationComplex& k,
                                      int label) const;
};

CoveringComplex build_covering(const SituationComplex& k,
                               double tol = kDefaultTolerance);

struct CoveringCheck {
  bool pass = true;
  std::string witness;
};

/// Pass/fail per covering-complex condition: (a) sheets are simplicial
/// complexes, (b) the projection is simplicial, (c) preimages are disjoint
/// unions of bijective copies.
struct CoveringReport {
  CoveringCheck sheets_simplicial;
  CoveringCheck map_simplicial;
  CoveringCheck preimages_disjoint;
  bool pass() const {
    return sheets_simplicial.pass && map_simplicial.pass &&
           preimages_disjoint.pass;
  }
};

CoveringReport verify_covering(const CoveringComplex& covering,
                               const SituationComplex& k);

/// B_i(X_i^): facets x_i v X_i^ whose payoff weakly dominates every pure
/// deviation of player i. Sorted facet labels.
std::vector<int> best_response(const SituationComplex& k, int player,
                               int star_index, double tol = kDefaultTolerance);

/// Nash equilibrium facets by the degree criterion: X is Nash iff its dual
/// point has maximal degree in every player's cross-level comparison. Equals
/// the brute-force oracle on the facet set.
std::vector<int> nash_simplices(const SituationComplex& k,
                                double tol = kDefaultTolerance);

/// Per-facet, per-player degree table used by the equilibrium report.
struct DegreeReport {
  int label;
  std::vector<int> degrees;     // entering directions per player
  std::vector<int> required;    // l_i per player
  bool nash;
};

std::vector<DegreeReport> degree_table(const SituationComplex& k,
                                       double tol = kDefaultTolerance);

}  // namespace sgc
