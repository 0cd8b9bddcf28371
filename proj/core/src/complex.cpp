#include "sgc/complex.hpp"

#include <algorithm>
#include <cmath>

#include "sgc/errors.hpp"

namespace sgc {

double Chain::coefficient(SimplexId id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? 0.0 : it->second;
}

void Chain::add(SimplexId id, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(id, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Chain::orientation_sign(std::span<const int> vertices) {
  int sign = 1;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j]) return 0;
      if (vertices[i] > vertices[j]) sign = -sign;
    }
  return sign;
}

std::vector<double> situation_barycenter_weights(
    std::span<const std::vector<double>* const> components,
    std::span<const int> strategy_counts) {
  const std::size_t n = components.size();
  std::vector<double> acc(n, 0.0);
  std::vector<int> s(n, 0);
  long contributing = 0;
  bool done = false;
  while (!done) {
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (components[j]) denom += (*components[j])[static_cast<std::size_t>(s[j])];
    if (denom > 0.0) {
      for (std::size_t j = 0; j < n; ++j)
        if (components[j])
          acc[j] += (*components[j])[static_cast<std::size_t>(s[j])] / denom;
      ++contributing;
    }
    // odometer over the full pure-profile product
    done = true;
    for (std::size_t j = n; j-- > 0;) {
      if (++s[j] < strategy_counts[j]) {
        done = false;
        break;
      }
      s[j] = 0;
    }
  }
  if (contributing == 0)
    throw InvariantError("no pure profile contributes to the barycenter");
  for (double& w : acc) w /= static_cast<double>(contributing);
  return acc;
}

SituationComplex SituationComplex::build(
    const Game& game, std::vector<std::vector<MixedStrategy>> mixed_sets,
    double tol) {
  const int n = game.player_count();
  if (static_cast<int>(mixed_sets.size()) != n)
    throw InputError("mixed sets for " + std::to_string(mixed_sets.size()) +
                     " players, game has " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (mixed_sets[static_cast<std::size_t>(i)].empty())
      throw InputError("empty mixed set for player " + std::to_string(i));
    for (const MixedStrategy& m : mixed_sets[static_cast<std::size_t>(i)]) {
      if (m.player() != i)
        throw InputError("mixed strategy tagged for player " +
                         std::to_string(m.player()) + " in set of player " +
                         std::to_string(i));
      if (m.size() != game.strategy_count(i))
        throw InputError("mixed strategy length mismatch for player " +
                         std::to_string(i));
    }
  }

  SituationComplex k;
  k.game_ = &game;
  k.tol_ = tol;
  k.mixed_sets_ = std::move(mixed_sets);
  k.offsets_.resize(static_cast<std::size_t>(n));
  int vcount = 0;
  for (int i = 0; i < n; ++i) {
    k.offsets_[static_cast<std::size_t>(i)] = vcount;
    vcount += k.mixed_count(i);
  }
  k.vertices_.reserve(static_cast<std::size_t>(vcount));
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < k.mixed_count(i); ++m)
      k.vertices_.push_back(ComplexVertex{i, m, k.mixed(i, m)});

  long facet_total = 1;
  for (int i = 0; i < n; ++i) facet_total *= k.mixed_count(i);

  auto intern = [&k](std::vector<int> verts) -> SimplexId {
    auto it = k.index_.find(verts);
    if (it != k.index_.end()) return it->second;
    const SimplexId id = static_cast<SimplexId>(k.simplices_.size());
    const int dim = static_cast<int>(verts.size()) - 1;
    k.index_.emplace(verts, id);
    k.simplices_.push_back(Simplex{dim, std::move(verts)});
    k.weights_.push_back(0.0);
    k.labels_.push_back(-1);
    return id;
  };

  std::vector<int> mk(static_cast<std::size_t>(n), 0);
  k.facet_ids_.resize(static_cast<std::size_t>(facet_total));
  k.facet_mixed_.resize(static_cast<std::size_t>(facet_total));
  k.facet_payoffs_.resize(static_cast<std::size_t>(facet_total));
  for (long label = 0; label < facet_total; ++label) {
    // decode the player-major mixed-radix label
    long rest = label;
    for (int i = n - 1; i >= 0; --i) {
      mk[static_cast<std::size_t>(i)] = static_cast<int>(rest % k.mixed_count(i));
      rest /= k.mixed_count(i);
    }
    // intern every nonempty face of the facet; the full mask is the facet
    SimplexId facet_id = kInvalidSimplex;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> verts;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i))
          verts.push_back(k.vertex_id(i, mk[static_cast<std::size_t>(i)]));
      const SimplexId id = intern(std::move(verts));
      if (mask == (1u << n) - 1) facet_id = id;
    }
    SituationProfile profile;
    for (int i = 0; i < n; ++i)
      profile.components.push_back(k.mixed(i, mk[static_cast<std::size_t>(i)]));
    std::vector<double> payoffs(static_cast<std::size_t>(n));
    double f = 0.0;
    for (int i = 0; i < n; ++i) {
      payoffs[static_cast<std::size_t>(i)] = expected_payoff(game, profile, i);
      f += payoffs[static_cast<std::size_t>(i)];
    }
    k.facet_ids_[static_cast<std::size_t>(label)] = facet_id;
    k.facet_mixed_[static_cast<std::size_t>(label)] = mk;
    k.facet_payoffs_[static_cast<std::size_t>(label)] = std::move(payoffs);
    k.weights_[static_cast<std::size_t>(facet_id)] = f;
    k.labels_[static_cast<std::size_t>(facet_id)] = static_cast<int>(label);
  }

  k.by_dim_.assign(static_cast<std::size_t>(n), {});
  for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplices_.size()); ++id)
    k.by_dim_[static_cast<std::size_t>(k.simplices_[static_cast<std::size_t>(id)].dimension)]
        .push_back(id);

  k.cofaces_.assign(k.simplices_.size(), {});
  for (SimplexId id = 0; id < static_cast<SimplexId>(k.simplices_.size()); ++id) {
    const Simplex& s = k.simplices_[static_cast<std::size_t>(id)];
    if (s.dimension == 0) continue;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      const SimplexId fid = k.find(face);
      k.cofaces_[static_cast<std::size_t>(fid)].push_back(id);
    }
  }
  for (auto& list : k.cofaces_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return k;
}

SimplexId SituationComplex::find(std::span<const int> sorted_vertices) const {
  std::vector<int> key(sorted_vertices.begin(), sorted_vertices.end());
  auto it = index_.find(key);
  return it == index_.end() ? kInvalidSimplex : it->second;
}

const std::vector<SimplexId>& SituationComplex::simplices_of_dim(int t) const {
  static const std::vector<SimplexId> empty;
  if (t < 0 || t >= static_cast<int>(by_dim_.size())) return empty;
  return by_dim_[static_cast<std::size_t>(t)];
}

int SituationComplex::euler_characteristic() const {
  int chi = 0;
  for (int t = 0; t < static_cast<int>(by_dim_.size()); ++t) {
    const int count = static_cast<int>(by_dim_[static_cast<std::size_t>(t)].size());
    chi += (t % 2 == 0) ? count : -count;
  }
  return chi;
}

SituationProfile SituationComplex::facet_profile(int label) const {
  SituationProfile p;
  const std::vector<int>& mk = facet_mixed_[static_cast<std::size_t>(label)];
  for (int i = 0; i < player_count(); ++i)
    p.components.push_back(mixed(i, mk[static_cast<std::size_t>(i)]));
  return p;
}

void SituationComplex::add_to_chain(Chain& chain,
                                    std::span<const int> vertices,
                                    double coeff) const {
  const int sign = Chain::orientation_sign(vertices);
  if (sign == 0) return;  // degenerate
  std::vector<int> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  const SimplexId id = find(sorted);
  if (id == kInvalidSimplex)
    throw InputError("simplex is not part of the complex");
  chain.add(id, coeff * sign);
}

Chain SituationComplex::boundary(const Chain& c) const {
  Chain out(c.dimension() - 1);
  for (const auto& [id, coeff] : c.terms()) {
    const Simplex& s = simplex(id);
    if (s.dimension == 0) continue;  // boundary of points is the zero chain
    double sign = 1.0;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      out.add(find(face), coeff * sign);
      sign = -sign;
    }
  }
  return out;
}

Eigen::SparseMatrix<double> SituationComplex::boundary_matrix(int t) const {
  const auto& rows_list = simplices_of_dim(t - 1);
  const auto& cols_list = simplices_of_dim(t);
  std::vector<int> row_pos(simplices_.size(), -1);
  for (std::size_t r = 0; r < rows_list.size(); ++r)
    row_pos[static_cast<std::size_t>(rows_list[r])] = static_cast<int>(r);

  Eigen::SparseMatrix<double> m(static_cast<int>(rows_list.size()),
                                static_cast<int>(cols_list.size()));
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t c = 0; c < cols_list.size(); ++c) {
    const Simplex& s = simplex(cols_list[c]);
    double sign = 1.0;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      const SimplexId fid = find(face);
      trips.emplace_back(row_pos[static_cast<std::size_t>(fid)],
                         static_cast<int>(c), sign);
      sign = -sign;
    }
  }
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Barycenter SituationComplex::barycenter(SimplexId id) const {
  const Simplex& s = simplex(id);
  const int n = player_count();
  std::vector<const std::vector<double>*> components(
      static_cast<std::size_t>(n), nullptr);
  std::vector<int> counts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) counts[static_cast<std::size_t>(i)] = game_->strategy_count(i);
  for (int v : s.vertices)
    components[static_cast<std::size_t>(vertex(v).player)] =
        &vertex(v).strategy.weights();
  const std::vector<double> full =
      situation_barycenter_weights(components, counts);
  Barycenter b{id, {}};
  b.weights.reserve(s.vertices.size());
  for (int v : s.vertices)
    b.weights.push_back(full[static_cast<std::size_t>(vertex(v).player)]);
  return b;
}

namespace {

// Sign of the orientation a codimension-one face inherits from its coface:
// (-1)^p where p is the position of the omitted vertex.
int induced_sign(const Simplex& face, const Simplex& coface) {
  std::size_t p = 0;
  for (std::size_t i = 0, j = 0; i < coface.vertices.size(); ++i) {
    if (j < face.vertices.size() && coface.vertices[i] == face.vertices[j]) {
      ++j;
    } else {
      p = i;
    }
  }
  return p % 2 == 0 ? 1 : -1;
}

}  // namespace

DualCell SituationComplex::star_dual(SimplexId id) const {
  DualCell cell{id, {}};
  std::vector<SimplexId> flag{id};
  const int top = dimension();

  auto dfs = [&](auto&& self, SimplexId cur, int sign) -> void {
    if (simplex(cur).dimension == top) {
      cell.pieces.push_back(FlagPiece{sign, flag});
      return;
    }
    for (SimplexId up : cofaces(cur)) {
      flag.push_back(up);
      self(self, up, sign * induced_sign(simplex(cur), simplex(up)));
      flag.pop_back();
    }
  };
  dfs(dfs, id, 1);
  return cell;
}

Bcsd SituationComplex::barycentric_subdivision() const {
  // superfaces of every simplex, any codimension
  std::vector<std::vector<SimplexId>> superfaces(simplices_.size());
  for (SimplexId id = 0; id < static_cast<SimplexId>(simplices_.size()); ++id) {
    const Simplex& s = simplices_[static_cast<std::size_t>(id)];
    const unsigned full = (1u << s.vertices.size()) - 1;
    for (unsigned mask = 1; mask < full; ++mask) {
      std::vector<int> verts;
      for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (mask & (1u << i)) verts.push_back(s.vertices[i]);
      superfaces[static_cast<std::size_t>(find(verts))].push_back(id);
    }
  }
  for (auto& list : superfaces) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  Bcsd out;
  out.cells.resize(static_cast<std::size_t>(player_count()));
  std::vector<SimplexId> chain;
  auto dfs = [&](auto&& self, SimplexId cur) -> void {
    chain.push_back(cur);
    out.cells[chain.size() - 1].push_back(chain);
    for (SimplexId up : superfaces[static_cast<std::size_t>(cur)])
      self(self, up);
    chain.pop_back();
  };
  for (SimplexId id = 0; id < static_cast<SimplexId>(simplices_.size()); ++id)
    dfs(dfs, id);
  return out;
}

int weighted_metric(const SituationComplex& a, SimplexId sa,
                    const SituationComplex& b, SimplexId sb, double tol) {
  const Simplex& x = a.simplex(sa);
  const Simplex& y = b.simplex(sb);
  if (x.vertices.size() != y.vertices.size()) return 1;
  for (std::size_t i = 0; i < x.vertices.size(); ++i) {
    const ComplexVertex& va = a.vertex(x.vertices[i]);
    const ComplexVertex& vb = b.vertex(y.vertices[i]);
    if (va.player != vb.player) return 1;
    if (!va.strategy.same_distribution(vb.strategy)) return 1;
  }
  return std::abs(a.weight(sa) - b.weight(sb)) <= tol ? 0 : 1;
}

}  // namespace sgc
