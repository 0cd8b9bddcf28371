#include "sgc/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <thread>

#include "sgc/errors.hpp"
#include "sgc/format.hpp"

namespace sgc {

std::size_t Nerve::vertex_pos(int label) const {
  auto it = std::lower_bound(
      vertices.begin(), vertices.end(), label,
      [](const NerveVertex& v, int l) { return v.label < l; });
  if (it == vertices.end() || it->label != label)
    throw DataError("nerve has no vertex with label " + std::to_string(label));
  return static_cast<std::size_t>(it - vertices.begin());
}

bool Nerve::has_vertex(int label) const {
  auto it = std::lower_bound(
      vertices.begin(), vertices.end(), label,
      [](const NerveVertex& v, int l) { return v.label < l; });
  return it != vertices.end() && it->label == label;
}

long star_count(const SituationComplex& k, int player) {
  long count = 1;
  for (int i = 0; i < k.player_count(); ++i)
    if (i != player) count *= k.mixed_count(i);
  return count;
}

long star_count(const SituationComplex& k) {
  long total = 0;
  for (int i = 0; i < k.player_count(); ++i) total += star_count(k, i);
  return total;
}

std::vector<int> star_base(const SituationComplex& k, int player,
                           int star_index) {
  if (player < 0 || player >= k.player_count())
    throw InputError("player index out of range");
  if (star_index < 0 || star_index >= star_count(k, player))
    throw InputError("star index out of range for player " +
                     std::to_string(player));
  std::vector<int> base(static_cast<std::size_t>(k.player_count() - 1));
  long rest = star_index;
  int slot = k.player_count() - 2;
  for (int i = k.player_count() - 1; i >= 0; --i) {
    if (i == player) continue;
    base[static_cast<std::size_t>(slot)] =
        static_cast<int>(rest % k.mixed_count(i));
    rest /= k.mixed_count(i);
    --slot;
  }
  return base;
}

int star_index_of(const SituationComplex& k, int player,
                  std::span<const int> base_mixed) {
  if (static_cast<int>(base_mixed.size()) != k.player_count() - 1)
    throw InputError("star base has wrong arity");
  long index = 0;
  std::size_t slot = 0;
  for (int i = 0; i < k.player_count(); ++i) {
    if (i == player) continue;
    const int m = base_mixed[slot++];
    if (m < 0 || m >= k.mixed_count(i))
      throw InputError("star base index out of range for player " +
                       std::to_string(i));
    index = index * k.mixed_count(i) + m;
  }
  return static_cast<int>(index);
}

ComparableStar comparable_star(const SituationComplex& k, int player,
                               int star_index) {
  ComparableStar star;
  star.player = player;
  star.star_index = star_index;
  star.base_mixed = star_base(k, player, star_index);

  std::vector<int> mk(static_cast<std::size_t>(k.player_count()));
  std::size_t slot = 0;
  for (int i = 0; i < k.player_count(); ++i)
    if (i != player) mk[static_cast<std::size_t>(i)] = star.base_mixed[slot++];

  star.facet_labels.reserve(static_cast<std::size_t>(k.mixed_count(player)));
  star.payoffs.reserve(static_cast<std::size_t>(k.mixed_count(player)));
  for (int m = 0; m < k.mixed_count(player); ++m) {
    mk[static_cast<std::size_t>(player)] = m;
    long label = 0;
    for (int i = 0; i < k.player_count(); ++i)
      label = label * k.mixed_count(i) + mk[static_cast<std::size_t>(i)];
    star.facet_labels.push_back(static_cast<int>(label));
    star.payoffs.push_back(k.facet_payoff(static_cast<int>(label), player));
  }
  return star;
}

ComparableStar comparable_star(const SituationComplex& k, int player,
                               std::span<const int> base_mixed) {
  return comparable_star(k, player, star_index_of(k, player, base_mixed));
}

std::optional<DualFlowEdge> dual_flow(const ComparableStar& star, int label_a,
                                      int label_b, double tol) {
  auto it_a =
      std::find(star.facet_labels.begin(), star.facet_labels.end(), label_a);
  auto it_b =
      std::find(star.facet_labels.begin(), star.facet_labels.end(), label_b);
  if (it_a == star.facet_labels.end() || it_b == star.facet_labels.end() ||
      label_a == label_b)
    return std::nullopt;  // not comparable within this star: omega = 0

  const double ea =
      star.payoffs[static_cast<std::size_t>(it_a - star.facet_labels.begin())];
  const double eb =
      star.payoffs[static_cast<std::size_t>(it_b - star.facet_labels.begin())];

  DualFlowEdge edge;
  edge.player = star.player;
  edge.star_index = star.star_index;
  edge.weight = std::abs(eb - ea);
  if (std::abs(eb - ea) <= tol) {
    edge.tie = true;
    edge.source = std::min(label_a, label_b);
    edge.target = std::max(label_a, label_b);
  } else if (eb > ea) {
    edge.source = label_a;
    edge.target = label_b;
  } else {
    edge.source = label_b;
    edge.target = label_a;
  }
  return edge;
}

Nerve local_nerve(const SituationComplex& k, const ComparableStar& star) {
  Nerve nerve;
  nerve.kind = NerveKind::local;
  nerve.star_player = star.player;
  nerve.star_index = star.star_index;

  for (int label : star.facet_labels) {
    NerveVertex v;
    v.label = label;
    v.weight = k.weight(k.facet_by_label(label));
    v.mixed_indices = k.facet_mixed_indices(label);
    v.payoffs = k.facet_payoffs(label);
    nerve.vertices.push_back(std::move(v));
  }
  std::sort(nerve.vertices.begin(), nerve.vertices.end(),
            [](const NerveVertex& a, const NerveVertex& b) {
              return a.label < b.label;
            });

  const std::size_t m = star.facet_labels.size();
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p + 1; q < m; ++q) {
      auto edge = dual_flow(star, star.facet_labels[p], star.facet_labels[q],
                            k.tolerance());
      if (edge) nerve.edges.push_back(*edge);
    }

  // Maximum-weight spanning tree, Kruskal with (weight desc, labels asc).
  std::vector<std::size_t> order(nerve.edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t e) {
    const DualFlowEdge& d = nerve.edges[e];
    return std::tuple<double, int, int>(-d.weight,
                                        std::min(d.source, d.target),
                                        std::max(d.source, d.target));
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  std::map<int, int> parent;
  for (const NerveVertex& v : nerve.vertices) parent[v.label] = v.label;
  auto find_root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e : order) {
    const int ra = find_root(nerve.edges[e].source);
    const int rb = find_root(nerve.edges[e].target);
    if (ra != rb) {
      parent[ra] = rb;
      nerve.spanning_tree.push_back(e);
    }
  }
  std::sort(nerve.spanning_tree.begin(), nerve.spanning_tree.end());
  return nerve;
}

std::vector<Nerve> all_local_nerves(const SituationComplex& k, int threads) {
  struct StarRef {
    int player;
    int index;
  };
  std::vector<StarRef> stars;
  for (int i = 0; i < k.player_count(); ++i)
    for (long s = 0; s < star_count(k, i); ++s)
      stars.push_back(StarRef{i, static_cast<int>(s)});

  std::vector<Nerve> out(stars.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s)
      out[s] = local_nerve(k, comparable_star(k, stars[s].player,
                                              stars[s].index));
  };

  const std::size_t workers = std::min<std::size_t>(
      std::max(threads, 1), std::max<std::size_t>(stars.size(), 1));
  if (workers <= 1) {
    work(0, stars.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (stars.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(stars.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

Nerve global_nerve(const SituationComplex& k,
                   const std::vector<Nerve>& locals) {
  Nerve nerve;
  nerve.kind = NerveKind::global;

  std::map<int, NerveVertex> merged;
  std::map<int, int> seen_count;
  for (const Nerve& local : locals) {
    if (local.kind != NerveKind::local)
      throw InputError("global_nerve expects local nerves");
    for (const NerveVertex& v : local.vertices) {
      auto [it, inserted] = merged.try_emplace(v.label, v);
      ++seen_count[v.label];
      if (!inserted && it->second.mixed_indices != v.mixed_indices)
        throw DataError("label " + std::to_string(v.label) +
                        " carried by two distinct facets");
    }
  }
  for (const auto& [label, count] : seen_count)
    if (count != k.player_count())
      throw DataError("facet label " + std::to_string(label) + " appears in " +
                      std::to_string(count) + " local nerves, expected " +
                      std::to_string(k.player_count()));

  for (auto& [label, v] : merged) nerve.vertices.push_back(std::move(v));

  for (const Nerve& local : locals) {
    const std::size_t offset = nerve.edges.size();
    nerve.edges.insert(nerve.edges.end(), local.edges.begin(),
                       local.edges.end());
    for (std::size_t e : local.spanning_tree)
      nerve.spanning_tree.push_back(offset + e);
  }

  nerve.mixed_sets.resize(static_cast<std::size_t>(k.player_count()));
  for (int i = 0; i < k.player_count(); ++i)
    for (int m = 0; m < k.mixed_count(i); ++m)
      nerve.mixed_sets[static_cast<std::size_t>(i)].push_back(
          k.mixed(i, m).weights());
  return nerve;
}

SituationComplex reconstruct_complex(const Nerve& global, const Game& game,
                                     double tol) {
  if (global.vertices.empty())
    throw DataError("cannot reconstruct from an empty nerve");
  if (global.mixed_sets.empty())
    throw DataError("nerve carries no mixed-strategy tables");

  // adjacency by label, neighbors ascending
  std::map<int, std::vector<int>> adjacency;
  for (const NerveVertex& v : global.vertices) adjacency[v.label];
  for (const DualFlowEdge& e : global.edges) {
    adjacency[e.source].push_back(e.target);
    adjacency[e.target].push_back(e.source);
  }
  for (auto& [label, nbrs] : adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  // breadth-first emission, lowest unvisited label first
  std::vector<int> emitted;
  std::map<int, bool> visited;
  for (const auto& [label, _] : adjacency) visited[label] = false;
  for (const auto& [start, _] : adjacency) {
    if (visited[start]) continue;
    std::deque<int> queue{start};
    visited[start] = true;
    while (!queue.empty()) {
      const int label = queue.front();
      queue.pop_front();
      emitted.push_back(label);
      for (int nbr : adjacency[label]) {
        if (!visited[nbr]) {
          visited[nbr] = true;
          queue.push_back(nbr);
        }
      }
    }
  }

  // recover the mixed sets and rebuild; the tables are already normalized
  std::vector<std::vector<MixedStrategy>> mixed_sets;
  for (std::size_t i = 0; i < global.mixed_sets.size(); ++i) {
    std::vector<MixedStrategy> set;
    for (const auto& weights : global.mixed_sets[i])
      set.push_back(
          MixedStrategy::from_normalized(static_cast<int>(i), weights, tol));
    mixed_sets.push_back(std::move(set));
  }
  SituationComplex rebuilt = SituationComplex::build(game, std::move(mixed_sets), tol);

  if (static_cast<int>(emitted.size()) != rebuilt.facet_count())
    throw DataError("nerve does not cover the full situation product: " +
                    std::to_string(emitted.size()) + " of " +
                    std::to_string(rebuilt.facet_count()) + " facets");
  for (int label : emitted) {
    const NerveVertex& v = global.vertices[global.vertex_pos(label)];
    if (v.mixed_indices.empty())
      throw DataError("nerve vertex " + std::to_string(label) +
                      " has no facet payload");
    if (v.mixed_indices != rebuilt.facet_mixed_indices(label))
      throw DataError("facet payload of label " + std::to_string(label) +
                      " is inconsistent with its label");
    const double f = rebuilt.weight(rebuilt.facet_by_label(label));
    if (std::abs(f - v.weight) > tol)
      throw DataError("weight of facet " + std::to_string(label) +
                      " changed in reconstruction");
  }
  return rebuilt;
}

std::string export_nerve_dot(const Nerve& nerve) {
  std::string name = "sgc_nerve_global";
  if (nerve.kind == NerveKind::local)
    name = "sgc_nerve_local_p" + std::to_string(nerve.star_player) + "_s" +
           std::to_string(nerve.star_index);
  std::string out = "digraph " + name + " {\n";
  for (const NerveVertex& v : nerve.vertices)
    out += "  n" + std::to_string(v.label) + " [label=\"" +
           std::to_string(v.label) + " f=" + format_double(v.weight) + "\"];\n";

  // edges in stored order (stars in player-major order, pairs ascending)
  for (const DualFlowEdge& e : nerve.edges) {
    out += "  n" + std::to_string(e.source) + " -> n" +
           std::to_string(e.target) + " [label=\"" + format_double(e.weight) +
           "\"";
    if (e.tie) out += ", dir=none, style=dashed";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace sgc
