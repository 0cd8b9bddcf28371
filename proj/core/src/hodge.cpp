#include "sgc/hodge.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sgc/errors.hpp"
#include "sgc/format.hpp"

namespace sgc {

FlowComplex FlowComplex::build(const SituationComplex& k, const Nerve& global) {
  if (global.kind != NerveKind::global)
    throw InputError("flow complex is built over the global nerve");

  FlowComplex fc;
  fc.vertex_count_ = k.facet_count();
  if (static_cast<int>(global.vertices.size()) != fc.vertex_count_)
    throw DataError("global nerve does not cover every facet");

  // undirected edge set with star annotations; a pair of distinct facets is
  // comparable through exactly one star
  std::map<std::pair<int, int>, std::pair<int, int>> pairs;
  for (const DualFlowEdge& e : global.edges) {
    const std::pair<int, int> key{std::min(e.source, e.target),
                                  std::max(e.source, e.target)};
    const std::pair<int, int> star{e.player, e.star_index};
    auto [it, inserted] = pairs.try_emplace(key, star);
    if (!inserted && it->second != star)
      throw InvariantError(
          "facets " + std::to_string(key.first) + "," +
          std::to_string(key.second) + " are comparable through two stars");
  }
  for (const auto& [key, star] : pairs)
    fc.edges_.push_back(FlowEdge{key.first, key.second, star.first,
                                 star.second});

  // same-star triples
  std::map<std::pair<int, int>, std::set<int>> star_members;
  for (const FlowEdge& e : fc.edges_) {
    star_members[{e.player, e.star_index}].insert(e.a);
    star_members[{e.player, e.star_index}].insert(e.b);
  }
  for (const auto& [star, members] : star_members) {
    const std::vector<int> m(members.begin(), members.end());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        for (std::size_t l = j + 1; l < m.size(); ++l)
          fc.triangles_.push_back(
              FlowTriangle{m[i], m[j], m[l], star.first, star.second});
  }
  std::sort(fc.triangles_.begin(), fc.triangles_.end(),
            [](const FlowTriangle& x, const FlowTriangle& y) {
              return std::tuple(x.a, x.b, x.c) < std::tuple(y.a, y.b, y.c);
            });

  for (std::size_t e = 0; e < fc.edges_.size(); ++e)
    fc.edge_lookup_.push_back(
        {{fc.edges_[e].a, fc.edges_[e].b}, static_cast<int>(e)});

  // incidence matrices
  {
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t e = 0; e < fc.edges_.size(); ++e) {
      trips.emplace_back(fc.edges_[e].a, static_cast<int>(e), -1.0);
      trips.emplace_back(fc.edges_[e].b, static_cast<int>(e), 1.0);
    }
    fc.b1_.resize(fc.vertex_count_, static_cast<int>(fc.edges_.size()));
    fc.b1_.setFromTriplets(trips.begin(), trips.end());
    fc.b1_.makeCompressed();
  }
  {
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t t = 0; t < fc.triangles_.size(); ++t) {
      const FlowTriangle& tri = fc.triangles_[t];
      trips.emplace_back(fc.edge_index(tri.b, tri.c), static_cast<int>(t), 1.0);
      trips.emplace_back(fc.edge_index(tri.a, tri.c), static_cast<int>(t), -1.0);
      trips.emplace_back(fc.edge_index(tri.a, tri.b), static_cast<int>(t), 1.0);
    }
    fc.b2_.resize(static_cast<int>(fc.edges_.size()),
                  static_cast<int>(fc.triangles_.size()));
    fc.b2_.setFromTriplets(trips.begin(), trips.end());
    fc.b2_.makeCompressed();
  }

  // connected components of the 1-skeleton
  fc.components_.resize(static_cast<std::size_t>(fc.vertex_count_));
  std::iota(fc.components_.begin(), fc.components_.end(), 0);
  std::vector<int>& parent = fc.components_;
  auto find_root = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const FlowEdge& e : fc.edges_) {
    const int ra = find_root(e.a), rb = find_root(e.b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] =
        std::min(ra, rb);
  }
  std::map<int, int> roots;
  for (int v = 0; v < fc.vertex_count_; ++v) {
    const int r = find_root(v);
    roots.try_emplace(r, static_cast<int>(roots.size()));
  }
  for (int v = 0; v < fc.vertex_count_; ++v)
    fc.components_[static_cast<std::size_t>(v)] = roots[find_root(v)];
  fc.component_count_ = static_cast<int>(roots.size());
  return fc;
}

int FlowComplex::edge_index(int a, int b) const {
  const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(
      edge_lookup_.begin(), edge_lookup_.end(), key,
      [](const auto& entry, const std::pair<int, int>& k) {
        return entry.first < k;
      });
  if (it == edge_lookup_.end() || it->first != key) return -1;
  return it->second;
}

const Eigen::SparseMatrix<double>& FlowComplex::boundary_matrix(int t) const {
  if (t == 1) return b1_;
  if (t == 2) return b2_;
  throw InputError("boundary matrix defined for t in {1,2}");
}

Eigen::SparseMatrix<double> FlowComplex::coboundary(int t) const {
  if (t == 0) return Eigen::SparseMatrix<double>(b1_.transpose());
  if (t == 1) return Eigen::SparseMatrix<double>(b2_.transpose());
  throw InputError("coboundary defined for t in {0,1}");
}

Eigen::SparseMatrix<double> FlowComplex::laplacian(int t) const {
  if (t == 0) return b1_ * Eigen::SparseMatrix<double>(b1_.transpose());
  if (t == 1) {
    Eigen::SparseMatrix<double> down =
        Eigen::SparseMatrix<double>(b1_.transpose()) * b1_;
    Eigen::SparseMatrix<double> up =
        b2_ * Eigen::SparseMatrix<double>(b2_.transpose());
    return down + up;
  }
  if (t == 2) return Eigen::SparseMatrix<double>(b2_.transpose()) * b2_;
  throw InputError("laplacian defined for t in {0,1,2}");
}

double Cochain::edge_value(const FlowComplex& fc, int a, int b) const {
  if (dimension != 1)
    throw InputError("edge_value needs a 1-cochain");
  if (a == b) return 0.0;
  const int e = fc.edge_index(a, b);
  if (e < 0) return 0.0;  // non-comparable pair
  const double v = values[e];
  return a < b ? v : -v;
}

Cochain game_flow(const SituationComplex& k, const FlowComplex& fc) {
  Cochain w;
  w.dimension = 1;
  w.values.resize(fc.edge_count());
  const auto& edges = fc.edges();
  for (int e = 0; e < fc.edge_count(); ++e)
    w.values[e] = k.facet_payoff(edges[static_cast<std::size_t>(e)].b,
                                 edges[static_cast<std::size_t>(e)].player) -
                  k.facet_payoff(edges[static_cast<std::size_t>(e)].a,
                                 edges[static_cast<std::size_t>(e)].player);
  return w;
}

namespace {

Eigen::VectorXd solve_phi(const FlowComplex& fc, const Eigen::VectorXd& w,
                          const SolverOptions& opts) {
  const int v_count = fc.vertex_count();
  const Eigen::SparseMatrix<double>& b1 = fc.boundary_matrix(1);
  const Eigen::VectorXd div = b1 * w;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(v_count);
  if (v_count == 0) return phi;

  const Eigen::SparseMatrix<double> lap = fc.laplacian(0);
  if (fc.edge_count() <= opts.direct_edge_limit) {
    // ground one vertex per component and factor the reduced SPD system
    std::vector<int> anchor(static_cast<std::size_t>(fc.component_count()), -1);
    for (int v = 0; v < v_count; ++v) {
      int& a = anchor[static_cast<std::size_t>(fc.component_of(v))];
      if (a < 0) a = v;
    }
    std::vector<int> reduced(static_cast<std::size_t>(v_count), -1);
    int next = 0;
    for (int v = 0; v < v_count; ++v) {
      const bool is_anchor =
          anchor[static_cast<std::size_t>(fc.component_of(v))] == v;
      if (!is_anchor) reduced[static_cast<std::size_t>(v)] = next++;
    }
    if (next > 0) {
      std::vector<Eigen::Triplet<double>> trips;
      for (int col = 0; col < lap.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(lap, col); it;
             ++it) {
          const int r = reduced[static_cast<std::size_t>(it.row())];
          const int c = reduced[static_cast<std::size_t>(it.col())];
          if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
        }
      Eigen::SparseMatrix<double> lap_red(next, next);
      lap_red.setFromTriplets(trips.begin(), trips.end());
      Eigen::VectorXd rhs(next);
      for (int v = 0; v < v_count; ++v)
        if (reduced[static_cast<std::size_t>(v)] >= 0)
          rhs[reduced[static_cast<std::size_t>(v)]] = div[v];
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(lap_red);
      if (ldlt.info() != Eigen::Success)
        throw NumericalError("Laplacian factorization failed");
      const Eigen::VectorXd sol = ldlt.solve(rhs);
      for (int v = 0; v < v_count; ++v)
        if (reduced[static_cast<std::size_t>(v)] >= 0)
          phi[v] = sol[reduced[static_cast<std::size_t>(v)]];
    }
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                             Eigen::Lower | Eigen::Upper>
        cg(lap);
    cg.setTolerance(opts.residual_tol);
    phi = cg.solve(div);
  }

  // gauge: mean zero per connected component
  std::vector<double> mean(static_cast<std::size_t>(fc.component_count()), 0);
  std::vector<int> size(static_cast<std::size_t>(fc.component_count()), 0);
  for (int v = 0; v < v_count; ++v) {
    mean[static_cast<std::size_t>(fc.component_of(v))] += phi[v];
    ++size[static_cast<std::size_t>(fc.component_of(v))];
  }
  for (int v = 0; v < v_count; ++v)
    phi[v] -= mean[static_cast<std::size_t>(fc.component_of(v))] /
              size[static_cast<std::size_t>(fc.component_of(v))];

  const double res = (lap * phi - div).norm();
  if (res > opts.residual_tol * std::max(1.0, div.norm()))
    throw NumericalError("potential solve residual " + format_double(res) +
                         " exceeds bound");
  return phi;
}

// Projection onto im(boundary_2). Edges partition by star and every triangle
// stays inside one star, so the triangle boundary is block diagonal with one
// block per star; each block spans the cycle space of a complete graph, whose
// Laplacian pseudo-inverse is closed form (phi = div / m). The projection is
// therefore exact per star, no iterative solve involved.
Eigen::VectorXd solve_curl(const FlowComplex& fc, const Eigen::VectorXd& w,
                           const SolverOptions& opts) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(fc.edge_count());
  if (fc.triangle_count() == 0) return c;

  std::map<std::pair<int, int>, std::vector<int>> star_edges;
  for (int e = 0; e < fc.edge_count(); ++e) {
    const FlowEdge& fe = fc.edges()[static_cast<std::size_t>(e)];
    star_edges[{fe.player, fe.star_index}].push_back(e);
  }
  for (const auto& [star, edge_list] : star_edges) {
    std::map<int, double> divergence;
    for (int e : edge_list) {
      const FlowEdge& fe = fc.edges()[static_cast<std::size_t>(e)];
      divergence[fe.a] -= w[e];
      divergence[fe.b] += w[e];
    }
    const double m = static_cast<double>(divergence.size());
    for (int e : edge_list) {
      const FlowEdge& fe = fc.edges()[static_cast<std::size_t>(e)];
      // subtract the star-local gradient part; the remainder is cyclic
      c[e] = w[e] - (divergence[fe.b] - divergence[fe.a]) / m;
    }
  }

  // the defect must be boundary_2-orthogonal for c to be the projection
  const Eigen::SparseMatrix<double>& b2 = fc.boundary_matrix(2);
  const Eigen::VectorXd defect =
      Eigen::SparseMatrix<double>(b2.transpose()) * (w - c);
  const double scale =
      std::max(1.0, (Eigen::VectorXd(b2.transpose() * w)).norm());
  if (defect.norm() > opts.residual_tol * scale)
    throw NumericalError("curl projection defect " +
                         format_double(defect.norm()) + " exceeds bound");
  return c;
}

}  // namespace

FlowDecomposition decompose(const FlowComplex& fc, const Cochain& w,
                            const SolverOptions& opts) {
  if (w.dimension != 1 || w.values.size() != fc.edge_count())
    throw InputError("decompose expects a 1-cochain over the flow complex");

  FlowDecomposition d;
  d.flow = w;

  const Eigen::VectorXd phi = solve_phi(fc, w.values, opts);
  const Eigen::VectorXd g =
      Eigen::SparseMatrix<double>(fc.boundary_matrix(1).transpose()) * phi;
  const Eigen::VectorXd c = solve_curl(fc, w.values, opts);
  const Eigen::VectorXd h = w.values - g - c;

  d.potential = Cochain{0, phi};
  d.gradient = Cochain{1, g};
  d.curl = Cochain{1, c};
  d.harmonic = Cochain{1, h};

  d.flow_norm = w.values.norm();
  d.gradient_norm = g.norm();
  d.curl_norm = c.norm();
  d.harmonic_norm = h.norm();
  d.potential_residual = (g - w.values).norm();

  const double scale = std::max(1.0, d.flow_norm);
  d.reconstruction_error = (g + h + c - w.values).norm() / scale;
  const double scale2 = std::max(1.0, d.flow_norm * d.flow_norm);
  d.max_cross_inner =
      std::max({std::abs(g.dot(h)), std::abs(g.dot(c)), std::abs(h.dot(c))}) /
      scale2;
  d.harmonic_residual = (fc.laplacian(1) * h).norm() / scale;

  if (d.reconstruction_error > opts.check_tol ||
      d.max_cross_inner > opts.check_tol ||
      d.harmonic_residual > opts.check_tol)
    throw NumericalError(
        "decomposition invariants violated: reconstruction " +
        format_double(d.reconstruction_error) + ", cross " +
        format_double(d.max_cross_inner) + ", harmonic " +
        format_double(d.harmonic_residual));
  return d;
}

PotentialFit potential_function(const FlowComplex& fc, const Cochain& w,
                                const SolverOptions& opts) {
  if (w.dimension != 1 || w.values.size() != fc.edge_count())
    throw InputError("potential_function expects a 1-cochain");
  PotentialFit fit;
  fit.phi = solve_phi(fc, w.values, opts);
  fit.residual =
      (Eigen::SparseMatrix<double>(fc.boundary_matrix(1).transpose()) *
           fit.phi -
       w.values)
          .norm();
  return fit;
}

const char* to_string(GameClass c) {
  switch (c) {
    case GameClass::potential: return "potential";
    case GameClass::harmonic: return "harmonic";
    case GameClass::nonstrategic: return "nonstrategic";
    case GameClass::mixed: return "mixed";
  }
  return "mixed";
}

Classification classify(const FlowComplex& fc, const Cochain& w,
                        const FlowDecomposition& d) {
  Classification out;
  out.flow_norm = d.flow_norm;
  out.gradient_norm = d.gradient_norm;
  out.harmonic_norm = d.harmonic_norm;
  out.curl_norm = d.curl_norm;
  out.potential_residual = d.potential_residual;
  const double scale = std::max(1.0, d.flow_norm);
  out.laplacian1_flow_residual = (fc.laplacian(1) * w.values).norm() / scale;

  const double bound = kClassifyRelTol * scale;
  if (d.flow_norm < kNonstrategicTol) {
    out.kind = GameClass::nonstrategic;
  } else if (d.harmonic_norm + d.curl_norm < bound) {
    out.kind = GameClass::potential;
  } else if (d.gradient_norm + d.curl_norm < bound &&
             out.laplacian1_flow_residual < kClassifyRelTol) {
    out.kind = GameClass::harmonic;
  } else {
    out.kind = GameClass::mixed;
  }
  return out;
}

Classification classify(const SituationComplex& k, const SolverOptions& opts) {
  const std::vector<Nerve> locals = all_local_nerves(k);
  const Nerve global = global_nerve(k, locals);
  const FlowComplex fc = FlowComplex::build(k, global);
  const Cochain w = game_flow(k, fc);
  const FlowDecomposition d = decompose(fc, w, opts);
  return classify(fc, w, d);
}

std::string export_matrix_triplets(const Eigen::SparseMatrix<double>& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) +
                    " " + std::to_string(m.nonZeros()) + "\n";
  for (int col = 0; col < m.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it)
      out += std::to_string(it.row()) + " " + std::to_string(it.col()) + " " +
             format_double(it.value()) + "\n";
  return out;
}

}  // namespace sgc
