#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgc/complex.hpp"

namespace sgc {

/// The star st(X_i^) of player i: the m_i facets x_{i,k} v X_i^ obtained by
/// varying player i's mixed strategy against a fixed opponent tuple.
struct ComparableStar {
  int player = -1;
  int star_index = -1;            // player-major mixed radix over players != i
  std::vector<int> base_mixed;    // k-index per player != i, ascending player
  std::vector<int> facet_labels;  // m_i facets, ordered by k
  std::vector<double> payoffs;    // e_i per facet
};

/// Flow edge between dual points of two comparable facets. Directed from the
/// smaller payoff to the larger; weight is the absolute difference. Tie edges
/// (|difference| <= tol) keep ascending-label endpoints and count as entering
/// both endpoints for degree purposes.
struct DualFlowEdge {
  int source = -1;  // facet label
  int target = -1;  // facet label
  double weight = 0.0;
  bool tie = false;
  int player = -1;
  int star_index = -1;
};

enum class NerveKind { local, global };

struct NerveVertex {
  int label = -1;
  double weight = 0.0;              // f(X)
  std::vector<int> mixed_indices;   // facet payload; empty means missing
  std::vector<double> payoffs;      // e_i(X)
};

/// Flow graph on dual points: one comparable star (local) or the label-glued
/// union over all stars (global). The edge set is the full pairwise flow
/// digraph; `spanning_tree` marks the deterministic maximum-weight tree of
/// each star (ties broken by label order).
struct Nerve {
  NerveKind kind = NerveKind::local;
  int star_player = -1;  // local only
  int star_index = -1;   // local only
  std::vector<NerveVertex> vertices;       // ascending label
  std::vector<DualFlowEdge> edges;
  std::vector<std::size_t> spanning_tree;  // indices into `edges`
  /// Per-player mixed strategy tables, copied for reconstruction.
  std::vector<std::vector<std::vector<double>>> mixed_sets;

  std::size_t vertex_pos(int label) const;
  bool has_vertex(int label) const;
};

/// Sum over players of the star count prod_{k != i} m_k.
long star_count(const SituationComplex& k);
/// Star count of one player.
long star_count(const SituationComplex& k, int player);

/// Decode a star index into the per-player base indices (players != i).
std::vector<int> star_base(const SituationComplex& k, int player,
                           int star_index);
int star_index_of(const SituationComplex& k, int player,
                  std::span<const int> base_mixed);

ComparableStar comparable_star(const SituationComplex& k, int player,
                               int star_index);
ComparableStar comparable_star(const SituationComplex& k, int player,
                               std::span<const int> base_mixed);

/// Flow edge between two facets of one star; empty when the pair is not
/// comparable within the star (or equal).
std::optional<DualFlowEdge> dual_flow(const ComparableStar& star, int label_a,
                                      int label_b,
                                      double tol = kDefaultTolerance);

Nerve local_nerve(const SituationComplex& k, const ComparableStar& star);

/// All local nerves in (player, star_index) order. `threads` caps the worker
/// count; results are identical for any thread count.
std::vector<Nerve> all_local_nerves(const SituationComplex& k,
                                    int threads = 1);

Nerve global_nerve(const SituationComplex& k,
                   const std::vector<Nerve>& locals);

/// Algorithm's reconstruction loop: breadth-first traversal of the global
/// nerve from the lowest label of each component, re-embedding every facet
/// with its summed-payoff weight. The result equals the directly built
/// complex as a labeled weighted complex.
SituationComplex reconstruct_complex(const Nerve& global, const Game& game,
                                     double tol = kDefaultTolerance);

/// Deterministic DOT text; tie edges are dashed and undirected.
std::string export_nerve_dot(const Nerve& nerve);

}  // namespace sgc
