#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "sgc/complex.hpp"
#include "sgc/nerve.hpp"

namespace sgc {

/// Oriented edge of the flow complex: comparable facet pair, ascending label.
struct FlowEdge {
  int a, b;        // facet labels, a < b
  int player;      // the star both facets belong to
  int star_index;
};

/// Comparable triple within one star, ascending labels.
struct FlowTriangle {
  int a, b, c;
  int player;
  int star_index;
};

/// The domain of the decomposition: facet dual points, same-star pairs and
/// same-star triples. The edge set equals the global nerve's underlying
/// undirected edges.
class FlowComplex {
 public:
  static FlowComplex build(const SituationComplex& k, const Nerve& global);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  const std::vector<FlowTriangle>& triangles() const { return triangles_; }
  /// Index of the undirected edge {a,b}, or -1.
  int edge_index(int a, int b) const;

  /// Signed incidence matrices: boundary_matrix(1) maps edges to vertices,
  /// boundary_matrix(2) maps triangles to edges.
  const Eigen::SparseMatrix<double>& boundary_matrix(int t) const;
  /// Adjoint of the boundary under the unweighted cochain inner product:
  /// coboundary(0) = boundary_matrix(1)^T, coboundary(1) = boundary_matrix(2)^T.
  Eigen::SparseMatrix<double> coboundary(int t) const;
  /// Laplace-Beltrami operator on t-cochains, t in {0,1,2}.
  Eigen::SparseMatrix<double> laplacian(int t) const;

  int component_count() const { return component_count_; }
  int component_of(int vertex) const {
    return components_[static_cast<std::size_t>(vertex)];
  }

 private:
  int vertex_count_ = 0;
  std::vector<FlowEdge> edges_;
  std::vector<FlowTriangle> triangles_;
  Eigen::SparseMatrix<double> b1_;  // vertices x edges
  Eigen::SparseMatrix<double> b2_;  // edges x triangles
  std::vector<int> components_;
  int component_count_ = 0;
  std::vector<std::pair<std::pair<int, int>, int>> edge_lookup_;
};

/// A real cochain over the canonical cells of one dimension; values on
/// reversed orientations are the negated stored values.
struct Cochain {
  int dimension = 1;
  Eigen::VectorXd values;

  /// Value on the oriented edge a->b (any order of a, b).
  double edge_value(const FlowComplex& fc, int a, int b) const;
};

/// The weighted dual flow as a signed 1-cochain: w(a->b) = e_i(b) - e_i(a)
/// with i the player of the shared star and a < b by label.
Cochain game_flow(const SituationComplex& k, const FlowComplex& fc);

struct SolverOptions {
  double residual_tol = 1e-10;     // relative residual bound for solves
  int direct_edge_limit = 10000;   // above this, use conjugate gradients
  double check_tol = 1e-8;         // post-hoc decomposition invariants
};

/// Orthogonal decomposition of a 1-cochain into gradient, harmonic and curl
/// components plus the recovered potential.
struct FlowDecomposition {
  Cochain flow, gradient, harmonic, curl;
  Cochain potential;  // 0-cochain, mean zero per component
  double flow_norm = 0, gradient_norm = 0, harmonic_norm = 0, curl_norm = 0;
  double reconstruction_error = 0;   // ||g+h+c-w|| / max(1, ||w||)
  double max_cross_inner = 0;        // max pairwise |<.,.>| / max(1, ||w||^2)
  double harmonic_residual = 0;      // ||Delta_1 h|| / max(1, ||w||)
  double potential_residual = 0;     // ||delta_0 phi - w||
};

FlowDecomposition decompose(const FlowComplex& fc, const Cochain& w,
                            const SolverOptions& opts = {});

struct PotentialFit {
  Eigen::VectorXd phi;  // mean zero per component
  double residual;      // ||delta_0 phi - w||
};

/// Least-squares potential; residual below ~1e-8 certifies a potential game.
PotentialFit potential_function(const FlowComplex& fc, const Cochain& w,
                                const SolverOptions& opts = {});

enum class GameClass { potential, harmonic, nonstrategic, mixed };
const char* to_string(GameClass c);

/// Classification thresholds are fixed: nonstrategic when ||w|| < 1e-12,
/// otherwise component norms are compared at 1e-8 relative.
inline constexpr double kClassifyRelTol = 1e-8;
inline constexpr double kNonstrategicTol = 1e-12;

struct Classification {
  GameClass kind = GameClass::mixed;
  double flow_norm = 0, gradient_norm = 0, harmonic_norm = 0, curl_norm = 0;
  double potential_residual = 0;
  double laplacian1_flow_residual = 0;  // ||Delta_1 w|| / max(1, ||w||)
};

Classification classify(const FlowComplex& fc, const Cochain& w,
                        const FlowDecomposition& d);

/// Convenience: build the nerve pipeline and classify a whole complex.
Classification classify(const SituationComplex& k,
                        const SolverOptions& opts = {});

/// Coordinate-triplet text form of a sparse matrix (row col value lines,
/// column-major sorted), used by the matrix exports.
std::string export_matrix_triplets(const Eigen::SparseMatrix<double>& m);

}  // namespace sgc
