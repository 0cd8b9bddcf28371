#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "sgc/complex.hpp"
#include "sgc/errors.hpp"
#include "support/corpus.hpp"

using namespace sgc;

namespace {

SituationComplex build_doc(const GameDocument& doc) {
  static std::vector<Game> keep_alive;  // complexes reference their game
  keep_alive.push_back(doc.to_game());
  return SituationComplex::build(keep_alive.back(),
                                 doc.mixed_sets(kDefaultTolerance));
}

std::vector<std::vector<MixedStrategy>> uniform_sets(const Game& game,
                                                     int per_player) {
  std::vector<std::vector<MixedStrategy>> sets;
  for (int i = 0; i < game.player_count(); ++i) {
    std::vector<double> w(static_cast<std::size_t>(game.strategy_count(i)),
                          1.0 / game.strategy_count(i));
    std::vector<MixedStrategy> set;
    for (int m = 0; m < per_player; ++m) set.emplace_back(i, w);
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace

TEST_CASE("rock-paper-scissors complex is the bipartite 1-complex") {
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  CHECK(k.facet_count() == 9);
  CHECK(k.vertex_count() == 6);
  CHECK(k.simplices_of_dim(0).size() == 6);
  CHECK(k.simplices_of_dim(1).size() == 9);
  CHECK(k.euler_characteristic() == -3);
}

TEST_CASE("one-player complexes are point clouds") {
  const Game game({{"a", "b", "c"}}, {1, 2, 3});
  std::mt19937 rng(3);
  std::vector<std::vector<MixedStrategy>> sets(1);
  for (int m = 0; m < 4; ++m)
    sets[0].push_back(sgc_test::random_distribution(rng, 0, 3));
  const SituationComplex k = SituationComplex::build(game, sets);
  CHECK(k.facet_count() == 4);
  CHECK(k.simplex_count() == 4);
  for (int label = 0; label < 4; ++label)
    CHECK(k.simplex(k.facet_by_label(label)).dimension == 0);
}

TEST_CASE("three-player 2x2x2 complex counts") {
  std::vector<double> payoffs(static_cast<std::size_t>(8 * 3), 0.0);
  const Game game({{"a", "b"}, {"a", "b"}, {"a", "b"}}, payoffs);
  std::vector<std::vector<MixedStrategy>> sets;
  for (int i = 0; i < 3; ++i) {
    std::vector<MixedStrategy> set;
    set.push_back(MixedStrategy::delta(i, 0, 2));
    set.push_back(MixedStrategy::delta(i, 1, 2));
    sets.push_back(std::move(set));
  }
  const SituationComplex k = SituationComplex::build(game, sets);
  CHECK(k.facet_count() == 8);
  CHECK(k.simplices_of_dim(0).size() == 6);
  CHECK(k.simplices_of_dim(1).size() == 12);
  CHECK(k.simplices_of_dim(2).size() == 8);
}

TEST_CASE("empty mixed set is rejected") {
  const Game game = sgc_test::matching_pennies().to_game();
  std::vector<std::vector<MixedStrategy>> sets(2);
  sets[0].push_back(MixedStrategy::delta(0, 0, 2));
  CHECK_THROWS_AS(SituationComplex::build(game, sets), InputError);
}

TEST_CASE("boundary operator") {
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  const SimplexId edge = k.facet_by_label(0);
  const Simplex& s = k.simplex(edge);

  Chain c(1);
  c.add(edge, 1.0);
  const Chain b = k.boundary(c);
  std::vector<int> va{s.vertices[0]}, vb{s.vertices[1]};
  CHECK(b.coefficient(k.find(va)) == -1.0);
  CHECK(b.coefficient(k.find(vb)) == 1.0);

  // boundary of points is the zero chain
  Chain point(0);
  point.add(k.find(va), 1.0);
  CHECK(k.boundary(point).empty());
}

TEST_CASE("boundary of boundary vanishes") {
  std::vector<double> payoffs(static_cast<std::size_t>(8 * 3), 1.0);
  const Game game({{"a", "b"}, {"a", "b"}, {"a", "b"}}, payoffs);
  std::vector<std::vector<MixedStrategy>> sets;
  for (int i = 0; i < 3; ++i)
    sets.push_back({MixedStrategy::delta(i, 0, 2),
                    MixedStrategy::delta(i, 1, 2)});
  const SituationComplex k = SituationComplex::build(game, sets);

  // definition at p = 2: alternating signs over the omitted vertex
  const SimplexId tri = k.facet_by_label(0);
  const Simplex& ts = k.simplex(tri);
  Chain c(2);
  c.add(tri, 1.0);
  const Chain b = k.boundary(c);
  CHECK(b.terms().size() == 3);
  std::vector<int> bc{ts.vertices[1], ts.vertices[2]};
  std::vector<int> ac{ts.vertices[0], ts.vertices[2]};
  std::vector<int> ab{ts.vertices[0], ts.vertices[1]};
  CHECK(b.coefficient(k.find(bc)) == 1.0);
  CHECK(b.coefficient(k.find(ac)) == -1.0);
  CHECK(b.coefficient(k.find(ab)) == 1.0);
  CHECK(k.boundary(b).empty());

  // as matrices
  for (int t = 2; t <= k.dimension(); ++t) {
    const Eigen::SparseMatrix<double> prod =
        k.boundary_matrix(t - 1) * k.boundary_matrix(t);
    CHECK(prod.norm() == 0.0);
  }
}

TEST_CASE("orientation sign is the permutation parity") {
  const std::vector<int> even{1, 2, 3};
  const std::vector<int> odd{2, 1, 3};
  const std::vector<int> degenerate{1, 1, 2};
  CHECK(Chain::orientation_sign(even) == 1);
  CHECK(Chain::orientation_sign(odd) == -1);
  CHECK(Chain::orientation_sign(degenerate) == 0);

  // a reversed-orientation simplex enters a chain with negated coefficient
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  const Simplex& s = k.simplex(k.facet_by_label(0));
  Chain chain(1);
  k.add_to_chain(chain, s.vertices, 1.0);
  const std::vector<int> reversed{s.vertices[1], s.vertices[0]};
  k.add_to_chain(chain, reversed, 1.0);
  CHECK(chain.empty());
  CHECK_THROWS_AS(k.add_to_chain(chain, std::vector<int>{0, 1}, 1.0),
                  InputError);  // two vertices of one player
}

TEST_CASE("facet barycenter of uniform components") {
  // l = (2,3), both uniform: weights proportional to (1/2, 1/3)
  std::vector<double> payoffs(static_cast<std::size_t>(6 * 2), 0.0);
  const Game game({{"a", "b"}, {"x", "y", "z"}}, payoffs);
  const SituationComplex k =
      SituationComplex::build(game, uniform_sets(game, 1));
  const Barycenter b = k.barycenter(k.facet_by_label(0));
  CHECK(b.weights[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(b.weights[1] == doctest::Approx(0.4).epsilon(1e-12));

  // independent direct evaluation of the defining sum
  const MixedStrategy& x = k.mixed(0, 0);
  const MixedStrategy& y = k.mixed(1, 0);
  double acc0 = 0.0, acc1 = 0.0;
  long count = 0;
  for (int s0 = 0; s0 < 2; ++s0)
    for (int s1 = 0; s1 < 3; ++s1) {
      const double denom = x(s0) + y(s1);
      if (denom <= 0) continue;
      acc0 += x(s0) / denom;
      acc1 += y(s1) / denom;
      ++count;
    }
  CHECK(b.weights[0] == doctest::Approx(acc0 / count).epsilon(1e-12));
  CHECK(b.weights[1] == doctest::Approx(acc1 / count).epsilon(1e-12));
}

TEST_CASE("profiles with empty inner denominator are skipped") {
  // facet [delta_R, delta_P]: profiles giving both components probability
  // zero contribute nothing; five profiles remain and split evenly
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  const Barycenter b = k.barycenter(k.facet_by_label(1));  // (R, P)
  REQUIRE(b.weights.size() == 2);
  CHECK(b.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("barycenters are convex on random facets") {
  std::mt19937 rng(17);
  int facets_checked = 0;
  while (facets_checked < 100) {
    const sgc_test::CorpusGame cg = sgc_test::random_corpus_game(rng);
    const SituationComplex k = SituationComplex::build(cg.game, cg.mixed);
    for (int label = 0; label < k.facet_count() && facets_checked < 100;
         ++label, ++facets_checked) {
      const Barycenter b = k.barycenter(k.facet_by_label(label));
      double sum = 0.0;
      for (double w : b.weights) {
        CHECK(w >= -1e-12);
        sum += w;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("face barycenters: zero extension and renormalization") {
  // a vertex gets weight one
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  const SimplexId facet = k.facet_by_label(4);
  std::vector<int> single{k.simplex(facet).vertices[0]};
  const Barycenter bv = k.barycenter(k.find(single));
  REQUIRE(bv.weights.size() == 1);
  CHECK(bv.weights[0] == doctest::Approx(1.0).epsilon(1e-12));

  // an edge of a 3-player complex with uniform endpoints splits evenly
  std::vector<double> payoffs(static_cast<std::size_t>(8 * 3), 0.0);
  const Game game3({{"a", "b"}, {"a", "b"}, {"a", "b"}}, payoffs);
  const SituationComplex k3 =
      SituationComplex::build(game3, uniform_sets(game3, 1));
  std::vector<int> edge{k3.vertex_id(0, 0), k3.vertex_id(1, 0)};
  const Barycenter be = k3.barycenter(k3.find(edge));
  REQUIRE(be.weights.size() == 2);
  CHECK(be.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(be.weights[1] == doctest::Approx(0.5).epsilon(1e-12));

  // every face barycenter renormalizes to one
  for (SimplexId id = 0; id < static_cast<SimplexId>(k3.simplex_count());
       ++id) {
    const Barycenter b = k3.barycenter(id);
    double sum = 0.0;
    for (double w : b.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("face weights") {
  // zero-sum game: every facet weight vanishes
  const SituationComplex mp = build_doc(sgc_test::matching_pennies());
  for (int label = 0; label < mp.facet_count(); ++label)
    CHECK(mp.weight(mp.facet_by_label(label)) ==
          doctest::Approx(0.0).epsilon(1e-12));

  // prisoner's dilemma at (D,D): 1 + 1
  const SituationComplex pd = build_doc(sgc_test::prisoners_dilemma());
  CHECK(pd.weight(pd.facet_by_label(3)) == doctest::Approx(2.0));

  // constant game: every facet weight is n*c
  const SituationComplex cg = build_doc(sgc_test::constant_game(2.5));
  for (int label = 0; label < cg.facet_count(); ++label)
    CHECK(cg.weight(cg.facet_by_label(label)) == doctest::Approx(5.0));

  // proper faces carry weight zero (zero extension kills every term)
  for (SimplexId id = 0; id < static_cast<SimplexId>(pd.simplex_count());
       ++id)
    if (pd.label_of(id) < 0) CHECK(pd.weight(id) == 0.0);
}

TEST_CASE("star duality") {
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());

  // a facet's dual is its barycenter point
  const DualCell facet_cell = k.star_dual(k.facet_by_label(2));
  REQUIRE(facet_cell.pieces.size() == 1);
  CHECK(facet_cell.pieces[0].flag ==
        std::vector<SimplexId>{k.facet_by_label(2)});
  CHECK(facet_cell.pieces[0].sign == 1);

  // an interior vertex of the bipartite complex meets three facets
  std::vector<int> vertex{k.vertex_id(1, 0)};
  const DualCell vertex_cell = k.star_dual(k.find(vertex));
  CHECK(vertex_cell.pieces.size() == 3);
  for (const FlagPiece& piece : vertex_cell.pieces) {
    CHECK(piece.flag.size() == 2);
    CHECK(std::abs(piece.sign) == 1);
  }

  // a boundary (n-2)-simplex with a single cofacet gives one signed segment
  std::vector<double> payoffs(static_cast<std::size_t>(2 * 2), 0.0);
  const Game thin({{"a", "b"}, {"x"}}, {0, 0, 0, 0});
  std::vector<std::vector<MixedStrategy>> sets(2);
  sets[0] = {MixedStrategy::delta(0, 0, 2)};
  sets[1] = {MixedStrategy::delta(1, 0, 1)};
  const SituationComplex kt = SituationComplex::build(thin, sets);
  std::vector<int> v0{kt.vertex_id(1, 0)};
  const DualCell segment = kt.star_dual(kt.find(v0));
  CHECK(segment.pieces.size() == 1);
  CHECK(segment.pieces[0].flag.size() == 2);
}

TEST_CASE("discrete metric on weighted simplices") {
  const GameDocument doc = sgc_test::prisoners_dilemma();
  GameDocument shifted = doc;
  for (std::size_t i = 0; i < shifted.payoffs.size(); i += 2)
    shifted.payoffs[i] += 1.0;  // change player 0's payoffs only

  const Game g1 = doc.to_game();
  const Game g2 = shifted.to_game();
  const SituationComplex k1 =
      SituationComplex::build(g1, doc.mixed_sets(kDefaultTolerance));
  const SituationComplex k2 =
      SituationComplex::build(g2, shifted.mixed_sets(kDefaultTolerance));

  const SimplexId f = k1.facet_by_label(0);
  CHECK(weighted_metric(k1, f, k1, f) == 0);
  CHECK(weighted_metric(k1, f, k2, f) == 1);  // same simplex, changed weight
  CHECK(weighted_metric(k1, f, k1, k1.facet_by_label(1)) == 1);
  CHECK(weighted_metric(k1, f, k1, k1.facet_by_label(1)) ==
        weighted_metric(k1, k1.facet_by_label(1), k1, f));
}

TEST_CASE("barycentric subdivision counts") {
  // a single edge: three vertices, two edges
  const Game thin({{"a"}, {"x"}}, {0, 0});
  std::vector<std::vector<MixedStrategy>> sets(2);
  sets[0] = {MixedStrategy::delta(0, 0, 1)};
  sets[1] = {MixedStrategy::delta(1, 0, 1)};
  const SituationComplex edge = SituationComplex::build(thin, sets);
  const Bcsd bs = edge.barycentric_subdivision();
  CHECK(bs.cell_count(0) == 3);
  CHECK(bs.cell_count(1) == 2);

  // the worked 9-facet complex: 15 vertices, 18 edges
  const SituationComplex k = build_doc(sgc_test::rock_paper_scissors());
  const Bcsd bk = k.barycentric_subdivision();
  CHECK(bk.cell_count(0) == 15);
  CHECK(bk.cell_count(1) == 18);

  // flag-count identity against an independent chain counter
  std::vector<std::vector<SimplexId>> chains_by_len(
      static_cast<std::size_t>(k.player_count()) + 1);
  long chains1 = k.simplex_count();
  long chains2 = 0;
  for (SimplexId a = 0; a < static_cast<SimplexId>(k.simplex_count()); ++a)
    for (SimplexId b = 0; b < static_cast<SimplexId>(k.simplex_count()); ++b) {
      if (a == b) continue;
      const auto& va = k.simplex(a).vertices;
      const auto& vb = k.simplex(b).vertices;
      if (va.size() >= vb.size()) continue;
      CHECK(std::is_sorted(vb.begin(), vb.end()));
      if (std::includes(vb.begin(), vb.end(), va.begin(), va.end()))
        ++chains2;
    }
  CHECK(static_cast<long>(bk.cell_count(0)) == chains1);
  CHECK(static_cast<long>(bk.cell_count(1)) == chains2);
}

TEST_CASE("facets sharing a codimension-two face are one-player apart") {
  std::mt19937 rng(29);
  const sgc_test::CorpusGame cg = sgc_test::random_corpus_game(rng);
  const SituationComplex k = SituationComplex::build(cg.game, cg.mixed);
  const int n = k.player_count();
  if (n < 2) return;
  for (int a = 0; a < k.facet_count(); ++a)
    for (int b = a + 1; b < k.facet_count(); ++b) {
      int differing = 0;
      for (int i = 0; i < n; ++i)
        if (k.facet_mixed_indices(a)[static_cast<std::size_t>(i)] !=
            k.facet_mixed_indices(b)[static_cast<std::size_t>(i)])
          ++differing;
      // shared (n-2)-face <=> exactly one differing player
      std::vector<int> shared;
      for (int i = 0; i < n; ++i)
        if (k.facet_mixed_indices(a)[static_cast<std::size_t>(i)] ==
            k.facet_mixed_indices(b)[static_cast<std::size_t>(i)])
          shared.push_back(
              k.vertex_id(i, k.facet_mixed_indices(a)[static_cast<std::size_t>(i)]));
      if (differing == 1) {
        const SimplexId face = k.find(shared);
        REQUIRE(face != kInvalidSimplex);
        const auto& cof = k.cofaces(face);
        CHECK(std::count(cof.begin(), cof.end(), k.facet_by_label(a)) == 1);
        CHECK(std::count(cof.begin(), cof.end(), k.facet_by_label(b)) == 1);
      }
    }
}
