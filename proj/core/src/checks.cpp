#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "sgc/errors.hpp"
#include "sgc/format.hpp"
#include "sgc/io.hpp"

namespace sgc {

namespace {

double sparse_max_abs(const Eigen::SparseMatrix<double>& m) {
  double max_abs = 0.0;
  for (int col = 0; col < m.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it)
      max_abs = std::max(max_abs, std::abs(it.value()));
  return max_abs;
}

}  // namespace

std::vector<CheckItem> run_invariant_suite(const GameDocument& doc,
                                           const RunConfig& cfg) {
  std::vector<CheckItem> items;
  auto push = [&items](const std::string& name, bool pass,
                       const std::string& detail = "") {
    items.push_back(CheckItem{name, pass, pass ? "" : detail});
  };

  const double tol = cfg.tolerance_overridden
                         ? cfg.tolerance
                         : doc.tolerance.value_or(cfg.tolerance);
  const Game game = doc.to_game();
  const SituationComplex k =
      SituationComplex::build(game, doc.mixed_sets(tol), tol);
  const int n = k.player_count();

  // boundary of boundary vanishes on K_G and on the flow complex
  {
    double worst = 0.0;
    for (int t = 2; t <= k.dimension(); ++t) {
      const Eigen::SparseMatrix<double> prod =
          k.boundary_matrix(t - 1) * k.boundary_matrix(t);
      worst = std::max(worst, sparse_max_abs(prod));
    }
    push("boundary_squared_zero", worst == 0.0,
         "max |entry| = " + format_double(worst));
  }

  // barycenters are convex combinations
  {
    bool ok = true;
    std::string detail;
    for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplex_count());
         ++id) {
      const Barycenter b = k.barycenter(id);
      double sum = 0.0;
      for (double w : b.weights) {
        if (w < -1e-12) ok = false;
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-9) ok = false;
      if (!ok) {
        detail = "simplex " + std::to_string(id) + " sum " +
                 format_double(sum);
        break;
      }
    }
    push("barycenter_convexity", ok, detail);
  }

  // facet count is the full product
  {
    long expect = 1;
    for (int i = 0; i < n; ++i) expect *= k.mixed_count(i);
    push("facet_product_count", k.facet_count() == expect,
         std::to_string(k.facet_count()) + " != " + std::to_string(expect));
  }

  // comparable facets share the stored (n-2)-face and appear as its cofaces
  if (n >= 2) {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < k.facet_count() && ok; ++a)
      for (int b = a + 1; b < k.facet_count() && ok; ++b) {
        const std::vector<int>&ma = k.facet_mixed_indices(a),
              &mb = k.facet_mixed_indices(b);
        int differing = 0;
        for (int i = 0; i < n; ++i)
          if (ma[static_cast<std::size_t>(i)] != mb[static_cast<std::size_t>(i)])
            ++differing;
        if (differing != 1) continue;
        std::vector<int> shared;
        for (int i = 0; i < n; ++i)
          if (ma[static_cast<std::size_t>(i)] == mb[static_cast<std::size_t>(i)])
            shared.push_back(k.vertex_id(i, ma[static_cast<std::size_t>(i)]));
        const SimplexId face = k.find(shared);
        if (face == kInvalidSimplex) {
          ok = false;
          detail = "shared face of facets " + std::to_string(a) + "," +
                   std::to_string(b) + " missing";
          break;
        }
        const auto& cof = k.cofaces(face);
        if (!std::count(cof.begin(), cof.end(), k.facet_by_label(a)) ||
            !std::count(cof.begin(), cof.end(), k.facet_by_label(b))) {
          ok = false;
          detail = "coface lists of the shared face are incomplete";
        }
      }
    push("comparable_face_sharing", ok, detail);
  }

  // dual points and dual cells
  {
    bool ok = true;
    std::string detail;
    std::set<std::vector<SimplexId>> seen;
    for (int label = 0; label < k.facet_count(); ++label) {
      const DualCell cell = k.star_dual(k.facet_by_label(label));
      if (cell.pieces.size() != 1 ||
          cell.pieces[0].flag !=
              std::vector<SimplexId>{k.facet_by_label(label)}) {
        ok = false;
        detail = "facet dual of label " + std::to_string(label) +
                 " is not its barycenter";
        break;
      }
      if (!seen.insert(cell.pieces[0].flag).second) {
        ok = false;
        detail = "duplicate dual point";
        break;
      }
    }
    if (ok && n >= 2) {
      // (n-2)-cells of distinct bases share flag entries only at facets
      const auto& mid = k.simplices_of_dim(n - 2);
      for (std::size_t x = 0; x < mid.size() && ok; ++x)
        for (std::size_t y = x + 1; y < mid.size() && ok; ++y) {
          std::set<SimplexId> ids;
          for (const FlagPiece& p : k.star_dual(mid[x]).pieces)
            ids.insert(p.flag.begin(), p.flag.end());
          for (const FlagPiece& p : k.star_dual(mid[y]).pieces)
            for (SimplexId id : p.flag)
              if (ids.count(id) && k.label_of(id) < 0) {
                ok = false;
                detail = "dual cells share a non-facet flag entry";
              }
        }
    }
    push("dual_points_distinct", ok, detail);
  }

  // discrete metric axioms on the weighted complex
  {
    bool ok = true;
    for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplex_count());
         ++id)
      ok = ok && weighted_metric(k, id, k, id, tol) == 0;
    for (SimplexId a = 0;
         ok && a < std::min<SimplexId>(16, k.simplex_count()); ++a)
      for (SimplexId b = 0; b < std::min<SimplexId>(16, k.simplex_count());
           ++b) {
        const int d1 = weighted_metric(k, a, k, b, tol);
        const int d2 = weighted_metric(k, b, k, a, tol);
        ok = ok && d1 == d2 && (d1 == 0 || d1 == 1) && (a != b || d1 == 0);
      }
    push("metric_discrete", ok, "metric axioms violated");
  }

  const std::vector<Nerve> locals = all_local_nerves(k, cfg.threads);
  const Nerve global = global_nerve(k, locals);

  // each star carries the full pairwise tournament and a spanning tree
  {
    bool ok = true;
    std::string detail;
    for (const Nerve& local : locals) {
      const std::size_t m = local.vertices.size();
      if (local.edges.size() != m * (m - 1) / 2) {
        ok = false;
        detail = "star of player " + std::to_string(local.star_player) +
                 " has " + std::to_string(local.edges.size()) + " edges";
        break;
      }
      if (local.spanning_tree.size() != m - 1) {
        ok = false;
        detail = "spanning tree size " +
                 std::to_string(local.spanning_tree.size()) + " for " +
                 std::to_string(m) + " vertices";
        break;
      }
    }
    push("star_tournament_and_tree", ok, detail);
  }

  // global nerve adjacency == comparability (shared (n-2)-face)
  {
    std::set<std::pair<int, int>> nerve_pairs;
    for (const DualFlowEdge& e : global.edges)
      nerve_pairs.insert({std::min(e.source, e.target),
                          std::max(e.source, e.target)});
    std::set<std::pair<int, int>> comparable;
    for (int a = 0; a < k.facet_count(); ++a)
      for (int b = a + 1; b < k.facet_count(); ++b) {
        int differing = 0;
        for (int i = 0; i < n; ++i)
          if (k.facet_mixed_indices(a)[static_cast<std::size_t>(i)] !=
              k.facet_mixed_indices(b)[static_cast<std::size_t>(i)])
            ++differing;
        if (differing == 1) comparable.insert({a, b});
      }
    push("nerve_adjacency_is_comparability", nerve_pairs == comparable,
         std::to_string(nerve_pairs.size()) + " nerve pairs vs " +
             std::to_string(comparable.size()) + " comparable pairs");
  }

  // reconstruction round-trip
  {
    bool ok = true;
    std::string detail;
    try {
      const SituationComplex rebuilt = reconstruct_complex(global, game, tol);
      ok = rebuilt.facet_count() == k.facet_count() &&
           rebuilt.simplex_count() == k.simplex_count();
      for (int label = 0; ok && label < k.facet_count(); ++label) {
        ok = rebuilt.facet_mixed_indices(label) ==
                 k.facet_mixed_indices(label) &&
             rebuilt.weight(rebuilt.facet_by_label(label)) ==
                 k.weight(k.facet_by_label(label));
      }
      if (!ok) detail = "rebuilt complex differs";
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    push("reconstruct_roundtrip", ok, detail);
  }

  // covering axioms
  {
    const CoveringComplex covering = build_covering(k, tol);
    const CoveringReport report = verify_covering(covering, k);
    push("covering_axioms", report.pass(),
         report.sheets_simplicial.witness + report.map_simplicial.witness +
             report.preimages_disjoint.witness);

    // the opens cover all of P_i^
    bool covered = true;
    for (int i = 0; i < n && covered; ++i) {
      std::set<int> in_a;
      for (const auto& a_set : covering.a[static_cast<std::size_t>(i)])
        in_a.insert(a_set.begin(), a_set.end());
      covered = static_cast<long>(in_a.size()) == star_count(k, i);
    }
    push("cover_exhausts_base", covered, "union of A_i misses a base tuple");
  }

  // degree criterion equals weak payoff maximality, by literal edge count
  {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (long s = 0; s < star_count(k, i) && ok; ++s) {
        const Neighborhood nb =
            cross_level_neighborhood(k, i, static_cast<int>(s));
        for (std::size_t at = 0; at < nb.payoffs.size() && ok; ++at)
          ok = degree(nb, at, tol) == degree_by_edge_count(nb, at, tol);
      }
    push("degree_cross_validation", ok,
         "comparison degree != edge-count degree");
  }

  // oracle equivalence on the facet set
  {
    std::vector<SituationProfile> candidates;
    for (int label = 0; label < k.facet_count(); ++label)
      candidates.push_back(k.facet_profile(label));
    const std::vector<std::size_t> oracle =
        nash_oracle_indices(game, candidates, tol);
    const std::vector<int> degree_route = nash_simplices(k, tol);
    bool equal = oracle.size() == degree_route.size();
    for (std::size_t i = 0; equal && i < oracle.size(); ++i)
      equal = static_cast<int>(oracle[i]) == degree_route[i];
    push("oracle_equivalence", equal,
         "degree criterion disagrees with the brute-force oracle");
  }

  // flow complex identities
  {
    const FlowComplex fc = FlowComplex::build(k, global);
    const Cochain w = game_flow(k, fc);

    const double bb = sparse_max_abs(fc.boundary_matrix(1) *
                                     fc.boundary_matrix(2));
    push("flow_boundary_squared_zero", bb == 0.0,
         "max |entry| = " + format_double(bb));

    const Eigen::SparseMatrix<double> dd =
        fc.coboundary(1) * fc.coboundary(0);
    push("coboundary_squared_zero", sparse_max_abs(dd) == 0.0, "delta1*delta0 != 0");

    // adjointness of coboundary and boundary under the cochain inner product
    {
      std::mt19937 rng(12345);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      double worst = 0.0;
      for (int round = 0; round < 16; ++round) {
        Eigen::VectorXd f(fc.vertex_count()), c(fc.edge_count());
        for (int v = 0; v < fc.vertex_count(); ++v) f[v] = u(rng);
        for (int e = 0; e < fc.edge_count(); ++e) c[e] = u(rng);
        const double lhs = (fc.coboundary(0) * f).dot(c);
        const double rhs = f.dot(fc.boundary_matrix(1) * c);
        worst = std::max(worst, std::abs(lhs - rhs));
        if (fc.triangle_count() > 0) {
          Eigen::VectorXd t(fc.triangle_count());
          for (int x = 0; x < fc.triangle_count(); ++x) t[x] = u(rng);
          const double lhs2 = (fc.coboundary(1) * c).dot(t);
          const double rhs2 = c.dot(fc.boundary_matrix(2) * t);
          worst = std::max(worst, std::abs(lhs2 - rhs2));
        }
      }
      push("adjointness", worst < 1e-12, "deviation " + format_double(worst));
    }

    // Laplacians are symmetric positive semidefinite
    {
      bool ok = true;
      std::string detail;
      for (int t = 0; t <= 2 && ok; ++t) {
        const Eigen::SparseMatrix<double> lap = fc.laplacian(t);
        const Eigen::SparseMatrix<double> lap_t = lap.transpose();
        const Eigen::SparseMatrix<double> diff = lap - lap_t;
        if (sparse_max_abs(diff) != 0.0) {
          ok = false;
          detail = "laplacian " + std::to_string(t) + " not symmetric";
          break;
        }
        if (lap.rows() > 0 && lap.rows() <= 400) {
          const Eigen::MatrixXd dense(lap);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
          if (eig.eigenvalues().minCoeff() < -1e-10) {
            ok = false;
            detail = "laplacian " + std::to_string(t) +
                     " has eigenvalue " +
                     format_double(eig.eigenvalues().minCoeff());
          }
        }
      }
      push("laplacian_psd", ok, detail);
    }

    // decomposition invariants and the dimension identity
    {
      bool ok = true;
      std::string detail;
      try {
        SolverOptions solver;
        solver.residual_tol = cfg.solver_residual;
        const FlowDecomposition d = decompose(fc, w, solver);
        ok = d.reconstruction_error <= 1e-8 && d.max_cross_inner <= 1e-8 &&
             d.harmonic_residual <= 1e-8;
        if (!ok)
          detail = "residuals " + format_double(d.reconstruction_error) + "/" +
                   format_double(d.max_cross_inner) + "/" +
                   format_double(d.harmonic_residual);
        if (ok && fc.edge_count() > 0 && fc.edge_count() <= 200) {
          const Eigen::MatrixXd b1(fc.boundary_matrix(1));
          const Eigen::MatrixXd b2(fc.boundary_matrix(2));
          const auto rank = [](const Eigen::MatrixXd& m) {
            if (m.rows() == 0 || m.cols() == 0) return Eigen::Index(0);
            return Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(m).rank();
          };
          const Eigen::Index grad_dim = rank(b1.transpose());
          const Eigen::Index curl_dim = rank(b2);
          const Eigen::MatrixXd lap1(fc.laplacian(1));
          Eigen::Index harm_dim = fc.edge_count() -
                                  rank(lap1);
          if (grad_dim + harm_dim + curl_dim != fc.edge_count()) {
            ok = false;
            detail = "dimension identity fails: " + std::to_string(grad_dim) +
                     "+" + std::to_string(harm_dim) + "+" +
                     std::to_string(curl_dim) +
                     " != " + std::to_string(fc.edge_count());
          }
        }
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
      push("decomposition_invariants", ok, detail);
    }
  }

  // payoff shifts move no flow direction and no equilibrium
  {
    std::vector<double> shifted = game.payoff_tensor();
    for (int p = 0; p < game.profile_count(); ++p)
      for (int i = 0; i < n; ++i)
        shifted[static_cast<std::size_t>(p * n + i)] +=
            1.0 + 2.5 * static_cast<double>(i);
    const Game shifted_game(game.strategy_names(), shifted, game.title(),
                            game.player_names());
    const SituationComplex k2 =
        SituationComplex::build(shifted_game, doc.mixed_sets(tol), tol);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (long s = 0; s < star_count(k, i) && ok; ++s) {
        const ComparableStar star_a = comparable_star(k, i, static_cast<int>(s));
        const ComparableStar star_b = comparable_star(k2, i, static_cast<int>(s));
        for (std::size_t p = 0; p < star_a.facet_labels.size() && ok; ++p)
          for (std::size_t q = p + 1; q < star_a.facet_labels.size(); ++q) {
            const auto ea = dual_flow(star_a, star_a.facet_labels[p],
                                      star_a.facet_labels[q], tol);
            const auto eb = dual_flow(star_b, star_b.facet_labels[p],
                                      star_b.facet_labels[q], tol);
            if (ea->source != eb->source || ea->target != eb->target ||
                ea->tie != eb->tie) {
              ok = false;
              break;
            }
          }
      }
    ok = ok && nash_simplices(k, tol) == nash_simplices(k2, tol);
    push("shift_invariance", ok,
         "payoff shift changed a flow direction or the Nash set");
  }

  return items;
}

}  // namespace sgc
