#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sgc/game.hpp"

namespace sgc {

using SimplexId = std::int32_t;
inline constexpr SimplexId kInvalidSimplex = -1;

/// A vertex of the situation complex: one mixed strategy of one player.
struct ComplexVertex {
  int player;
  int index;  // position in the player's mixed set
  MixedStrategy strategy;
};

/// An oriented simplex, stored with canonical vertex order (ascending player).
struct Simplex {
  int dimension;
  std::vector<int> vertices;  // ascending global vertex ids
};

/// A finitely supported real chain of fixed dimension. Coefficients are keyed
/// by interned simplex id; orientation reversals enter with negated sign.
class Chain {
 public:
  explicit Chain(int dimension) : dimension_(dimension) {}

  int dimension() const { return dimension_; }
  bool empty() const { return terms_.empty(); }
  const std::map<SimplexId, double>& terms() const { return terms_; }
  double coefficient(SimplexId id) const;
  void add(SimplexId id, double coeff);

  /// Parity of the permutation taking `vertices` to sorted order, as +-1.
  /// Repeated vertices give 0 (degenerate simplex).
  static int orientation_sign(std::span<const int> vertices);

 private:
  int dimension_;
  std::map<SimplexId, double> terms_;
};

/// Convex weights over the vertices of one simplex.
struct Barycenter {
  SimplexId simplex;
  std::vector<double> weights;  // nonnegative, sum to 1
};

/// One signed flag sigma_t < ... < sigma_{n-1} of the coface lattice; the
/// cell [bc(sigma_t), ..., bc(sigma_{n-1})] of the barycentric subdivision.
struct FlagPiece {
  int sign;
  std::vector<SimplexId> flag;
};

/// Star-dual cell of a t-simplex: the signed union of its coface flags.
struct DualCell {
  SimplexId base;
  std::vector<FlagPiece> pieces;
};

/// The barycentric subdivision, combinatorially: cells[k] lists the strictly
/// increasing (k+1)-chains of the face poset of K_G.
struct Bcsd {
  std::vector<std::vector<std::vector<SimplexId>>> cells;
  int dimension() const { return static_cast<int>(cells.size()) - 1; }
  std::size_t cell_count(int k) const {
    return k >= 0 && k < static_cast<int>(cells.size()) ? cells[k].size() : 0;
  }
};

/// The weighted situation complex K*_G.
///
/// Facets are the product situations [x_1,...,x_n], one vertex per player;
/// every nonempty face is interned exactly once. Facet labels are the
/// player-major mixed-radix index over the per-player mixed-set positions.
/// Immutable once built.
class SituationComplex {
 public:
  static SituationComplex build(const Game& game,
                                std::vector<std::vector<MixedStrategy>> mixed_sets,
                                double tol = kDefaultTolerance);

  const Game& game() const { return *game_; }
  double tolerance() const { return tol_; }
  int player_count() const { return static_cast<int>(mixed_sets_.size()); }
  int mixed_count(int player) const {
    return static_cast<int>(mixed_sets_[static_cast<std::size_t>(player)].size());
  }
  const MixedStrategy& mixed(int player, int k) const {
    return mixed_sets_[static_cast<std::size_t>(player)][static_cast<std::size_t>(k)];
  }
  const std::vector<std::vector<MixedStrategy>>& mixed_sets() const {
    return mixed_sets_;
  }

  // -- vertex table ---------------------------------------------------------
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int vertex_id(int player, int k) const {
    return offsets_[static_cast<std::size_t>(player)] + k;
  }
  const ComplexVertex& vertex(int id) const {
    return vertices_[static_cast<std::size_t>(id)];
  }

  // -- face lattice ---------------------------------------------------------
  int simplex_count() const { return static_cast<int>(simplices_.size()); }
  const Simplex& simplex(SimplexId id) const {
    return simplices_[static_cast<std::size_t>(id)];
  }
  SimplexId find(std::span<const int> sorted_vertices) const;
  const std::vector<SimplexId>& simplices_of_dim(int t) const;
  /// Cofaces of codimension one, ascending id.
  const std::vector<SimplexId>& cofaces(SimplexId id) const {
    return cofaces_[static_cast<std::size_t>(id)];
  }
  int dimension() const { return player_count() - 1; }
  int euler_characteristic() const;

  // -- facets ---------------------------------------------------------------
  int facet_count() const { return static_cast<int>(facet_ids_.size()); }
  SimplexId facet_by_label(int label) const {
    return facet_ids_[static_cast<std::size_t>(label)];
  }
  /// Label of a facet simplex, or -1 when `id` is a proper face.
  int label_of(SimplexId id) const {
    return labels_[static_cast<std::size_t>(id)];
  }
  const std::vector<int>& facet_mixed_indices(int label) const {
    return facet_mixed_[static_cast<std::size_t>(label)];
  }
  double facet_payoff(int label, int player) const {
    return facet_payoffs_[static_cast<std::size_t>(label)]
                         [static_cast<std::size_t>(player)];
  }
  const std::vector<double>& facet_payoffs(int label) const {
    return facet_payoffs_[static_cast<std::size_t>(label)];
  }
  SituationProfile facet_profile(int label) const;

  /// Eq.-(08) weight f_t: summed expected payoffs of the zero-extended
  /// situation. Proper faces carry weight 0 (the zero extension annihilates
  /// every product term); facets carry sum_i e_i.
  double weight(SimplexId id) const {
    return weights_[static_cast<std::size_t>(id)];
  }

  // -- operations -----------------------------------------------------------
  /// Adds the simplex given by `vertices` in any order: the coefficient is
  /// signed by the permutation parity, so reversed orientations cancel.
  void add_to_chain(Chain& chain, std::span<const int> vertices,
                    double coeff) const;
  Chain boundary(const Chain& c) const;
  /// Signed incidence matrix of the boundary operator, rows = (t-1)-simplices,
  /// columns = t-simplices, both in `simplices_of_dim` order.
  Eigen::SparseMatrix<double> boundary_matrix(int t) const;

  /// Convex barycenter weights of any simplex (facet or zero-extended face).
  Barycenter barycenter(SimplexId id) const;

  DualCell star_dual(SimplexId id) const;

  Bcsd barycentric_subdivision() const;

 private:
  SituationComplex() = default;

  const Game* game_ = nullptr;
  double tol_ = kDefaultTolerance;
  std::vector<std::vector<MixedStrategy>> mixed_sets_;
  std::vector<int> offsets_;
  std::vector<ComplexVertex> vertices_;

  std::vector<Simplex> simplices_;
  std::map<std::vector<int>, SimplexId> index_;  // sorted vertices -> id
  std::vector<std::vector<SimplexId>> by_dim_;
  std::vector<std::vector<SimplexId>> cofaces_;
  std::vector<double> weights_;
  std::vector<int> labels_;  // simplex id -> facet label or -1

  std::vector<SimplexId> facet_ids_;          // label -> simplex id
  std::vector<std::vector<int>> facet_mixed_;  // label -> per-player k index
  std::vector<std::vector<double>> facet_payoffs_;
};

/// Eq.-(07) barycenter of an arbitrary situation, as convex weights over the
/// component vertices. Shared by facets, zero-extended faces and pure stars.
/// `components[j]` may be null: that player enters as the zero function.
std::vector<double> situation_barycenter_weights(
    std::span<const std::vector<double>* const> components,
    std::span<const int> strategy_counts);

/// Discrete metric on weighted simplices: 0 iff the simplices coincide as
/// mixed-strategy tuples and their weights agree within `tol`, else 1.
int weighted_metric(const SituationComplex& a, SimplexId sa,
                    const SituationComplex& b, SimplexId sb,
                    double tol = kDefaultTolerance);

}  // namespace sgc
