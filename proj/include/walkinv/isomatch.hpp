#pragma once

// Certificate-seeded isomorphism search. Vertices are split into classes by
// walk invariants, off-diagonal profiles and neighbor-sum refinement; a
// backtracking search then maps class to class, growing the partial map along
// edges and pruning on adjacency with everything mapped so far. Every
// Isomorphic verdict is re-verified before it is returned.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "graph.hpp"
#include "invariants.hpp"

namespace walkinv {

/// True iff g1.adjacent(i, j) == g2.adjacent(p(i), p(j)) for all i, j, i.e.
/// G1 = P G2 P^T with P[i][p(i)] = 1. p maps g1's vertices onto g2's.
inline bool verify_isomorphism(const Graph& g1, const Graph& g2, const Permutation& p) {
  if (g1.size() != g2.size() || p.size() != g1.size())
    throw std::invalid_argument("verify_isomorphism: size mismatch");
  if (g1.edge_count() != g2.edge_count()) return false;
  for (Vertex i = 0; i < g1.size(); ++i) {
    if (g1.degree(i) != g2.degree(p[i])) return false;
    for (Vertex j : g1.neighbors(i))
      if (!g2.adjacent(p[i], p[j])) return false;
  }
  return true;
}

inline constexpr std::size_t brute_force_limit = 10;

/// Tries all n! maps in lexicographic order; the first verifying one wins.
inline std::optional<Permutation> brute_force_isomorphism(const Graph& g1, const Graph& g2) {
  if (g1.size() > brute_force_limit || g2.size() > brute_force_limit)
    throw std::invalid_argument("brute_force_isomorphism: refusing graphs with more than 10 vertices");
  if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  const std::size_t n = g1.size();
  const std::size_t d0 = g1.degree(0);
  std::vector<Vertex> map(n);
  std::iota(map.begin(), map.end(), Vertex{0});
  do {
    if (g2.degree(map[0]) != d0) continue;
    bool ok = true;
    for (Vertex i = 0; i < n && ok; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (g1.adjacent(i, j) != g2.adjacent(map[i], map[j])) {
          ok = false;
          break;
        }
    if (ok) return Permutation(map);
  } while (std::next_permutation(map.begin(), map.end()));
  return std::nullopt;
}

enum class Verdict { Isomorphic, NotIsomorphic, Inconclusive };

enum class Witness {
  None,
  SizeMismatch,
  CertificateMismatch,
  ModularCertificateMismatch,
  ClassMismatch,
  ComponentMismatch,
  ExhaustedSearch,
  BudgetExceeded,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Isomorphic: return "Isomorphic";
    case Verdict::NotIsomorphic: return "NotIsomorphic";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

inline const char* to_string(Witness w) {
  switch (w) {
    case Witness::None: return "none";
    case Witness::SizeMismatch: return "size_mismatch";
    case Witness::CertificateMismatch: return "certificate_mismatch";
    case Witness::ModularCertificateMismatch: return "modular_certificate_mismatch";
    case Witness::ClassMismatch: return "class_mismatch";
    case Witness::ComponentMismatch: return "component_mismatch";
    case Witness::ExhaustedSearch: return "exhausted_search";
    case Witness::BudgetExceeded: return "budget_exceeded";
  }
  return "none";
}

inline constexpr std::uint64_t default_node_budget = 10'000'000;

struct IsoConfig {
  /// Defaults to n.
  std::optional<std::size_t> kmax;
  std::size_t rounds = default_refinement_rounds;
  std::uint64_t node_budget = default_node_budget;
  /// When set, modular certificates screen the pair before the exact ones.
  std::optional<std::uint64_t> modulus;
};

struct IsoStats {
  std::uint64_t nodes = 0;
  std::size_t classes = 0;
  double seconds = 0.0;
};

struct IsoResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Maps g1 vertices to g2 vertices when Isomorphic.
  std::optional<Permutation> permutation;
  Witness witness = Witness::None;
  /// First differing certificate position for the mismatch witnesses.
  CertificateComparison position;
  IsoStats stats;
};

/// Class index per vertex, shared numbering across the two graphs.
struct VertexClasses {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  /// Class sizes (equal for both graphs when the partition is compatible).
  std::vector<std::size_t> sizes;
  bool compatible = true;
};

namespace detail {

using ClassKey = std::tuple<std::vector<BigInt>, std::vector<std::vector<BigInt>>>;

inline std::vector<ClassKey> class_keys(const Graph& g, std::size_t kmax, std::size_t rounds) {
  auto profile = extended_profile(g, kmax);
  std::vector<std::vector<BigInt>> seeds;
  seeds.reserve(g.size());
  for (auto& vp : profile.vertices) seeds.push_back(vp.diagonal);
  auto refined = neighbor_sum_refinement(g, std::move(seeds), rounds);
  std::vector<ClassKey> keys;
  keys.reserve(g.size());
  for (Vertex v = 0; v < g.size(); ++v)
    keys.emplace_back(std::move(refined[v]), std::move(profile.vertices[v].tuples));
  return keys;
}

}  // namespace detail

/// Vertices with equal (refined walk vector, off-diagonal profile) share a
/// class; classes are numbered in ascending key order.
inline VertexClasses vertex_classes(const Graph& g1, const Graph& g2, std::size_t kmax,
                                    std::size_t rounds = default_refinement_rounds) {
  auto k1 = detail::class_keys(g1, kmax, rounds);
  auto k2 = detail::class_keys(g2, kmax, rounds);
  std::map<detail::ClassKey, std::pair<std::size_t, std::size_t>> counts;
  for (auto& k : k1) ++counts[k].first;
  for (auto& k : k2) ++counts[k].second;

  VertexClasses out;
  for (auto& [key, c] : counts) {
    out.sizes.push_back(c.first);
    if (c.first != c.second) out.compatible = false;
  }
  auto lookup = [&](const detail::ClassKey& k) {
    return static_cast<std::size_t>(std::distance(counts.begin(), counts.find(k)));
  };
  for (auto& k : k1) out.first.push_back(lookup(k));
  for (auto& k : k2) out.second.push_back(lookup(k));
  return out;
}

namespace detail {

class Matcher {
 public:
  Matcher(const Graph& g1, const Graph& g2, const VertexClasses& classes,
          const std::vector<Vertex>& cert_rank, std::uint64_t budget)
      : g1_(g1), g2_(g2), classes_(classes), budget_(budget), n_(g1.size()),
        map_(n_, unmapped), used_(n_, false) {
    order_ = search_order(cert_rank);
    for (std::size_t c = 0; c < classes.sizes.size(); ++c) members_.emplace_back();
    for (Vertex w = 0; w < n_; ++w) members_[classes.second[w]].push_back(w);
  }

  /// Returns true if a full map was found, false if the space was exhausted.
  /// Throws BudgetExceeded when the node budget runs out.
  bool run() { return extend(0); }

  struct BudgetExceeded {};

  std::uint64_t nodes() const noexcept { return nodes_; }
  Permutation permutation() const { return Permutation(map_); }

 private:
  static constexpr Vertex unmapped = static_cast<Vertex>(-1);

  // Smallest class first; afterwards prefer vertices adjacent to what is
  // already placed, then smaller class, then more placed neighbors, then
  // certificate order.
  std::vector<Vertex> search_order(const std::vector<Vertex>& cert_rank) const {
    std::vector<Vertex> order;
    std::vector<bool> placed(n_, false);
    std::vector<std::size_t> placed_neighbors(n_, 0);
    for (std::size_t step = 0; step < n_; ++step) {
      Vertex best = unmapped;
      auto better = [&](Vertex a, Vertex b) {
        bool ta = placed_neighbors[a] > 0, tb = placed_neighbors[b] > 0;
        if (ta != tb) return ta;
        std::size_t sa = classes_.sizes[classes_.first[a]], sb = classes_.sizes[classes_.first[b]];
        if (sa != sb) return sa < sb;
        if (placed_neighbors[a] != placed_neighbors[b]) return placed_neighbors[a] > placed_neighbors[b];
        return cert_rank[a] < cert_rank[b];
      };
      for (Vertex v = 0; v < n_; ++v)
        if (!placed[v] && (best == unmapped || better(v, best))) best = v;
      placed[best] = true;
      order.push_back(best);
      for (Vertex u : g1_.neighbors(best)) ++placed_neighbors[u];
    }
    return order;
  }

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const Vertex u = order_[depth];
    for (Vertex w : members_[classes_.first[u]]) {
      if (used_[w]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        Vertex prev = order_[d];
        ok = g1_.adjacent(u, prev) == g2_.adjacent(w, map_[prev]);
      }
      if (!ok) continue;
      if (++nodes_ > budget_) throw BudgetExceeded{};
      map_[u] = w;
      used_[w] = true;
      if (extend(depth + 1)) return true;
      used_[w] = false;
      map_[u] = unmapped;
    }
    return false;
  }

  const Graph& g1_;
  const Graph& g2_;
  const VertexClasses& classes_;
  std::uint64_t budget_;
  std::size_t n_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<Vertex> map_;
  std::vector<bool> used_;
  std::uint64_t nodes_ = 0;
};

inline IsoResult search_connected(const Graph& g1, const Graph& g2, const IsoConfig& config,
                                  std::uint64_t budget, const Certificate& c1) {
  IsoResult out;
  const std::size_t kmax = config.kmax.value_or(g1.size());
  auto classes = vertex_classes(g1, g2, kmax, config.rounds);
  out.stats.classes = classes.sizes.size();
  if (!classes.compatible) {
    out.verdict = Verdict::NotIsomorphic;
    out.witness = Witness::ClassMismatch;
    return out;
  }
  std::vector<Vertex> rank(g1.size());
  for (std::size_t s = 0; s < c1.order.size(); ++s) rank[c1.order[s]] = s;
  Matcher m(g1, g2, classes, rank, budget);
  try {
    bool found = m.run();
    out.stats.nodes = m.nodes();
    if (found) {
      auto p = m.permutation();
      if (!verify_isomorphism(g1, g2, p)) throw std::logic_error("isomorphism search produced an invalid map");
      out.verdict = Verdict::Isomorphic;
      out.permutation = std::move(p);
    } else {
      out.verdict = Verdict::NotIsomorphic;
      out.witness = Witness::ExhaustedSearch;
    }
  } catch (const Matcher::BudgetExceeded&) {
    out.stats.nodes = budget;
    out.verdict = Verdict::Inconclusive;
    out.witness = Witness::BudgetExceeded;
  }
  return out;
}

struct Component {
  std::vector<Vertex> vertices;
  Graph graph;
  Certificate cert;
};

inline std::vector<Component> components_of(const Graph& g, const std::optional<std::size_t>& kmax) {
  auto label = connected_components(g);
  std::size_t count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Component> out(count);
  for (Vertex v = 0; v < g.size(); ++v) out[label[v]].vertices.push_back(v);
  for (auto& c : out) {
    c.graph = induced_subgraph(g, c.vertices);
    c.cert = certificate(walk_diagonal_table(c.graph, kmax.value_or(c.graph.size())));
  }
  std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.cert.rows < b.cert.rows;
  });
  return out;
}

inline IsoResult search_components(const Graph& g1, const Graph& g2, const IsoConfig& config) {
  IsoResult out;
  auto comps1 = components_of(g1, config.kmax);
  auto comps2 = components_of(g2, config.kmax);
  bool same_keys = comps1.size() == comps2.size();
  for (std::size_t c = 0; same_keys && c < comps1.size(); ++c)
    same_keys = comps1[c].vertices.size() == comps2[c].vertices.size() &&
                comps1[c].cert.rows == comps2[c].cert.rows;
  if (!same_keys) {
    out.verdict = Verdict::NotIsomorphic;
    out.witness = Witness::ComponentMismatch;
    return out;
  }

  std::vector<Vertex> map(g1.size(), 0);
  std::vector<bool> taken(comps2.size(), false);
  std::uint64_t remaining = config.node_budget;
  for (std::size_t a = 0; a < comps1.size(); ++a) {
    bool matched = false, inconclusive = false;
    for (std::size_t b = 0; b < comps2.size() && !matched; ++b) {
      if (taken[b] || comps2[b].vertices.size() != comps1[a].vertices.size() ||
          comps2[b].cert.rows != comps1[a].cert.rows)
        continue;
      auto r = search_connected(comps1[a].graph, comps2[b].graph, config, remaining, comps1[a].cert);
      out.stats.nodes += r.stats.nodes;
      out.stats.classes += r.stats.classes;
      remaining -= std::min(remaining, r.stats.nodes);
      if (r.verdict == Verdict::Isomorphic) {
        matched = true;
        taken[b] = true;
        for (std::size_t x = 0; x < comps1[a].vertices.size(); ++x)
          map[comps1[a].vertices[x]] = comps2[b].vertices[(*r.permutation)[x]];
      } else if (r.verdict == Verdict::Inconclusive) {
        inconclusive = true;
      }
    }
    if (!matched) {
      out.verdict = inconclusive ? Verdict::Inconclusive : Verdict::NotIsomorphic;
      out.witness = inconclusive ? Witness::BudgetExceeded : Witness::ExhaustedSearch;
      return out;
    }
  }
  Permutation p(std::move(map));
  if (!verify_isomorphism(g1, g2, p)) throw std::logic_error("component matching produced an invalid map");
  out.verdict = Verdict::Isomorphic;
  out.permutation = std::move(p);
  return out;
}

}  // namespace detail

inline IsoResult find_isomorphism(const Graph& g1, const Graph& g2, const IsoConfig& config = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](IsoResult r) {
    r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  IsoResult out;
  if (g1.size() != g2.size()) {
    out.verdict = Verdict::NotIsomorphic;
    out.witness = Witness::SizeMismatch;
    out.position = {false, CertificateComparison::shape_mismatch, CertificateComparison::shape_mismatch};
    return finish(out);
  }
  const std::size_t kmax = config.kmax.value_or(g1.size());

  if (config.modulus) {
    auto m1 = certificate(walk_diagonal_table_mod(g1, kmax, *config.modulus));
    auto m2 = certificate(walk_diagonal_table_mod(g2, kmax, *config.modulus));
    if (auto cmp = compare_certificates(m1, m2); !cmp) {
      out.verdict = Verdict::NotIsomorphic;
      out.witness = Witness::ModularCertificateMismatch;
      out.position = cmp;
      return finish(out);
    }
  }

  auto c1 = certificate(walk_diagonal_table(g1, kmax));
  auto c2 = certificate(walk_diagonal_table(g2, kmax));
  if (auto cmp = compare_certificates(c1, c2); !cmp) {
    out.verdict = Verdict::NotIsomorphic;
    out.witness = Witness::CertificateMismatch;
    out.position = cmp;
    return finish(out);
  }

  if (is_connected(g1) && is_connected(g2))
    return finish(detail::search_connected(g1, g2, config, config.node_budget, c1));
  return finish(detail::search_components(g1, g2, config));
}

}  // namespace walkinv
