// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sgc/covering.hpp"
#include "sgc/hodge.hpp"
#include "sgc/io.hpp"
#include "support/corpus.hpp"
#include "support/dense_hodge.hpp"

using namespace sgc;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " - ", detail.c_str());
  if (!pass) ++g_failures;
}

struct Built {
  SituationComplex k;
  std::vector<Nerve> locals;
  Nerve global;
  FlowComplex fc;
  Cochain w;
};

Built build_all(const Game& game,
                const std::vector<std::vector<MixedStrategy>>& mixed) {
  SituationComplex k = SituationComplex::build(game, mixed);
  std::vector<Nerve> locals = all_local_nerves(k);
  Nerve global = global_nerve(k, locals);
  FlowComplex fc = FlowComplex::build(k, global);
  Cochain w = game_flow(k, fc);
  return Built{std::move(k), std::move(locals), std::move(global),
               std::move(fc), std::move(w)};
}

std::vector<sgc_test::CorpusGame> make_corpus(std::size_t size) {
  std::mt19937 rng(20240901);
  std::vector<sgc_test::CorpusGame> corpus;
  corpus.reserve(size);
  for (std::size_t i = 0; i < size; ++i)
    corpus.push_back(sgc_test::random_corpus_game(rng));
  return corpus;
}

// --- criterion 1: the worked nine-facet example ---------------------------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const GameDocument doc = sgc_test::rock_paper_scissors();
  const Game game = doc.to_game();
  const Built b = build_all(game, doc.mixed_sets(kDefaultTolerance));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::string detail;
  bool pass = true;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  };
  expect(b.k.facet_count() == 9, "facets != 9");
  expect(b.k.simplices_of_dim(0).size() == 6, "vertices != 6");
  expect(b.k.simplices_of_dim(1).size() == 9, "edges != 9");
  expect(b.k.euler_characteristic() == -3, "chi != -3");
  expect(b.locals.size() == 6, "local nerves != 6");
  expect(b.global.vertices.size() == 9, "global vertices != 9");
  expect(b.global.edges.size() == 18, "global flow edges != 18");
  expect(seconds < 1.0, "runtime >= 1s");
  report(1, "nine-facet example reproduction", pass, detail);
}

// --- criterion 2: degree criterion == brute-force test --------------------

void criterion_2(const std::vector<sgc_test::CorpusGame>& corpus) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t disagreements = 0;
  for (const sgc_test::CorpusGame& cg : corpus) {
    const SituationComplex k = SituationComplex::build(cg.game, cg.mixed);
    std::vector<SituationProfile> candidates;
    for (int label = 0; label < k.facet_count(); ++label)
      candidates.push_back(k.facet_profile(label));
    const std::vector<std::size_t> oracle =
        nash_oracle_indices(cg.game, candidates);
    const std::vector<int> degree_route = nash_simplices(k);
    bool equal = oracle.size() == degree_route.size();
    for (std::size_t i = 0; equal && i < oracle.size(); ++i)
      equal = static_cast<int>(oracle[i]) == degree_route[i];
    if (!equal) ++disagreements;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(2, "equilibrium criterion equals the brute-force test",
         disagreements == 0 && seconds < 60.0,
         std::to_string(corpus.size()) + " games, " +
             std::to_string(disagreements) + " disagreements, " +
             std::to_string(seconds) + "s");
}

// --- criterion 3: covering verification ------------------------------------

void criterion_3(const std::vector<sgc_test::CorpusGame>& corpus) {
  std::size_t failures = 0;
  for (const sgc_test::CorpusGame& cg : corpus) {
    const SituationComplex k = SituationComplex::build(cg.game, cg.mixed);
    const CoveringComplex covering = build_covering(k);
    if (!verify_covering(covering, k).pass()) ++failures;
  }

  // injected fault: duplicate one sheet copy so two preimages overlap
  const GameDocument doc = sgc_test::prisoners_dilemma();
  const Game game = doc.to_game();
  const SituationComplex k =
      SituationComplex::build(game, doc.mixed_sets(kDefaultTolerance));
  CoveringComplex corrupted = build_covering(k);
  corrupted.simplices.push_back(corrupted.simplices[0]);
  const CoveringReport faulty = verify_covering(corrupted, k);
  const bool fault_detected =
      !faulty.preimages_disjoint.pass && !faulty.preimages_disjoint.witness.empty();

  report(3, "covering axioms on the corpus plus injected fault",
         failures == 0 && fault_detected,
         std::to_string(failures) + " verification failures; witness: " +
             faulty.preimages_disjoint.witness);
}

// --- criterion 4: decomposition correctness --------------------------------

void criterion_4(const std::vector<sgc_test::CorpusGame>& corpus) {
  std::size_t residual_failures = 0, dim_failures = 0, dim_checked = 0;
  for (const sgc_test::CorpusGame& cg : corpus) {
    const Built b = build_all(cg.game, cg.mixed);
    try {
      const FlowDecomposition d = decompose(b.fc, b.w);
      if (d.reconstruction_error > 1e-8 || d.max_cross_inner > 1e-8 ||
          d.harmonic_residual > 1e-8)
        ++residual_failures;
      if (b.fc.edge_count() <= 200) {
        ++dim_checked;
        const sgc_test::SubspaceDims dims = sgc_test::dense_subspace_dims(b.fc);
        const Eigen::MatrixXd lap1(b.fc.laplacian(1));
        const Eigen::Index harmonic_kernel =
            b.fc.edge_count() - sgc_test::dense_rank(lap1);
        if (dims.gradient + dims.harmonic + dims.curl != b.fc.edge_count() ||
            harmonic_kernel != dims.harmonic)
          ++dim_failures;
      }
    } catch (const std::exception&) {
      ++residual_failures;
    }
  }
  report(4, "orthogonal decomposition invariants and dimensions",
         residual_failures == 0 && dim_failures == 0,
         std::to_string(residual_failures) + " residual failures, " +
             std::to_string(dim_failures) + " dimension failures over " +
             std::to_string(dim_checked) + " rank checks");
}

// --- criterion 5: known-game classification --------------------------------

void criterion_5() {
  bool pass = true;
  std::string detail;
  auto classify_doc = [&](const GameDocument& doc, GameClass expected,
                          const char* name) {
    const Game game = doc.to_game();
    const Built b = build_all(game, doc.mixed_sets(kDefaultTolerance));
    const FlowDecomposition d = decompose(b.fc, b.w);
    const Classification cls = classify(b.fc, b.w, d);

    // independent dense projections must tell the same story
    const sgc_test::DenseDecomposition oracle =
        sgc_test::dense_decompose(b.fc, b.w.values);
    bool ok = cls.kind == expected;
    switch (expected) {
      case GameClass::potential:
        ok = ok && d.potential_residual < 1e-8 &&
             oracle.harmonic.norm() + oracle.curl.norm() < 1e-8;
        break;
      case GameClass::harmonic:
        ok = ok && d.gradient_norm < 1e-8 && oracle.gradient.norm() < 1e-8;
        break;
      case GameClass::nonstrategic:
        ok = ok && b.w.values.norm() < 1e-12;
        break;
      case GameClass::mixed:
        break;
    }
    if (!ok) {
      pass = false;
      detail += std::string(detail.empty() ? "" : "; ") + name + " -> " +
                to_string(cls.kind);
    }
  };
  classify_doc(sgc_test::coordination_2x2(), GameClass::potential,
               "coordination");
  classify_doc(sgc_test::prisoners_dilemma(), GameClass::potential,
               "prisoners-dilemma");
  classify_doc(sgc_test::matching_pennies(), GameClass::harmonic,
               "matching-pennies");
  classify_doc(sgc_test::constant_game(3.5), GameClass::nonstrategic,
               "constant");
  report(5, "known-game classification against the dense oracle", pass,
         detail);
}

// --- criterion 6: structural invariants -------------------------------------

void criterion_6(const std::vector<sgc_test::CorpusGame>& corpus) {
  bool pass = true;
  std::string detail;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  };

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::size_t barycenters_checked = 0;
  std::size_t roundtrips = 0;

  for (std::size_t g = 0; g < corpus.size(); ++g) {
    const sgc_test::CorpusGame& cg = corpus[g];
    const Built b = build_all(cg.game, cg.mixed);

    // boundary of boundary as matrices
    for (int t = 2; t <= b.k.dimension(); ++t) {
      const Eigen::SparseMatrix<double> prod =
          b.k.boundary_matrix(t - 1) * b.k.boundary_matrix(t);
      expect(prod.norm() == 0.0, "K_G boundary^2 != 0");
    }
    expect((b.fc.boundary_matrix(1) * b.fc.boundary_matrix(2)).norm() == 0.0,
           "flow boundary^2 != 0");

    // adjointness to 1e-12
    Eigen::VectorXd f(b.fc.vertex_count()), c(b.fc.edge_count());
    for (int i = 0; i < f.size(); ++i) f[i] = u(rng);
    for (int i = 0; i < c.size(); ++i) c[i] = u(rng);
    expect(std::abs((b.fc.coboundary(0) * f).dot(c) -
                    f.dot(b.fc.boundary_matrix(1) * c)) < 1e-12,
           "adjointness > 1e-12");

    // barycenter convex sums on every simplex of the corpus
    for (SimplexId id = 0; id < static_cast<SimplexId>(b.k.simplex_count());
         ++id) {
      const Barycenter bc = b.k.barycenter(id);
      double sum = 0.0;
      for (double w : bc.weights) sum += w;
      expect(std::abs(sum - 1.0) <= 1e-9, "barycenter sum off by > 1e-9");
      ++barycenters_checked;
    }

    // exact labeled round trip through the nerve
    const SituationComplex rebuilt =
        reconstruct_complex(b.global, cg.game);
    expect(rebuilt.facet_count() == b.k.facet_count(), "facet count changed");
    expect(rebuilt.simplex_count() == b.k.simplex_count(),
           "simplex count changed");
    for (int label = 0; label < b.k.facet_count(); ++label) {
      expect(rebuilt.facet_mixed_indices(label) ==
                 b.k.facet_mixed_indices(label),
             "facet payload changed");
      expect(rebuilt.weight(rebuilt.facet_by_label(label)) ==
                 b.k.weight(b.k.facet_by_label(label)),
             "facet weight changed");
    }
    ++roundtrips;
  }
  expect(barycenters_checked >= 10000, "fewer than 10^4 barycenters checked");
  report(6, "structural invariants", pass,
         pass ? std::to_string(barycenters_checked) + " barycenters, " +
                    std::to_string(roundtrips) + " exact round trips"
              : detail);
}

// --- criterion 7: shift and scaling invariance ------------------------------

void criterion_7(const std::vector<sgc_test::CorpusGame>& corpus) {
  bool pass = true;
  std::string detail;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  };

  const std::size_t cases = std::min<std::size_t>(corpus.size(), 100);
  for (std::size_t g = 0; g < cases; ++g) {
    const sgc_test::CorpusGame& cg = corpus[g];
    const int n = cg.game.player_count();
    const SituationComplex k = SituationComplex::build(cg.game, cg.mixed);
    const Nerve global = global_nerve(k, all_local_nerves(k));
    const FlowComplex fc = FlowComplex::build(k, global);
    const Cochain w = game_flow(k, fc);

    // shift u_i by per-player constants
    std::vector<double> shifted = cg.game.payoff_tensor();
    for (int p = 0; p < cg.game.profile_count(); ++p)
      for (int i = 0; i < n; ++i)
        shifted[static_cast<std::size_t>(p * n + i)] += 4.0 - 1.5 * i;
    const Game shifted_game(cg.game.strategy_names(), shifted);
    const SituationComplex ks = SituationComplex::build(shifted_game, cg.mixed);
    const Nerve globals = global_nerve(ks, all_local_nerves(ks));
    const FlowComplex fcs = FlowComplex::build(ks, globals);
    const Cochain wsh = game_flow(ks, fcs);

    expect((wsh.values - w.values).lpNorm<Eigen::Infinity>() <= 1e-9,
           "shift changed a flow value");
    expect(global.edges.size() == globals.edges.size(),
           "shift changed the edge count");
    for (std::size_t e = 0; e < global.edges.size(); ++e) {
      expect(global.edges[e].source == globals.edges[e].source &&
                 global.edges[e].target == globals.edges[e].target &&
                 global.edges[e].tie == globals.edges[e].tie,
             "shift changed a nerve direction");
    }
    expect(nash_simplices(k) == nash_simplices(ks),
           "shift changed the Nash set");

    // positive scaling
    std::vector<double> scaled = cg.game.payoff_tensor();
    for (double& v : scaled) v *= 2.75;
    const Game scaled_game(cg.game.strategy_names(), scaled);
    const SituationComplex kc = SituationComplex::build(scaled_game, cg.mixed);
    const Nerve globalc = global_nerve(kc, all_local_nerves(kc));
    for (std::size_t e = 0; e < global.edges.size(); ++e) {
      expect(global.edges[e].source == globalc.edges[e].source &&
                 global.edges[e].target == globalc.edges[e].target &&
                 global.edges[e].tie == globalc.edges[e].tie,
             "scaling changed an edge direction");
    }
    expect(nash_simplices(k) == nash_simplices(kc),
           "scaling changed the Nash set");
  }
  report(7, "payoff shift and positive-scaling invariance", pass,
         pass ? std::to_string(cases) + " games" : detail);
}

}  // namespace

int main() {
  const std::vector<sgc_test::CorpusGame> corpus = make_corpus(500);
  criterion_1();
  criterion_2(corpus);
  criterion_3(corpus);
  criterion_4(corpus);
  criterion_5();
  criterion_6(corpus);
  criterion_7(corpus);
  if (g_failures == 0)
    std::printf("acceptance: all 7 criteria pass\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
