#pragma once

// Per-vertex walk-count invariants: diagonals of adjacency powers (exact and
// modular), sorted certificates, off-diagonal profiles and neighbor-sum
// refinement.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graph.hpp"

namespace walkinv {

using BigInt = boost::multiprecision::cpp_int;

/// 2^61 - 1, the default modulus for modular screening.
inline constexpr std::uint64_t mersenne61 = (std::uint64_t{1} << 61) - 1;

namespace detail {

struct ExactArithmetic {
  using value_type = BigInt;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  void add_to(value_type& acc, const value_type& x) const { acc += x; }
};

struct ModularArithmetic {
  using value_type = std::uint64_t;
  std::uint64_t modulus;
  value_type zero() const { return 0; }
  value_type one() const { return 1 % modulus; }
  void add_to(value_type& acc, value_type x) const {
    // acc, x < modulus; the wrapped sum is corrected when it overflowed.
    value_type s = acc + x;
    if (s < acc || s >= modulus) s -= modulus;
    acc = s;
  }
};

/// Successive powers A, A^2, ... of a 0/1 symmetric matrix. A^k is symmetric,
/// so only the upper triangle is kept. Multiplying by a 0/1 matrix reduces the
/// inner products of the classical cubic product to neighbor-list sums:
/// (A^{k+1})_ij = sum over l adjacent to j of (A^k)_il.
template <class Arithmetic>
class PowerSequence {
 public:
  using value_type = typename Arithmetic::value_type;

  PowerSequence(const Graph& g, Arithmetic arith)
      : arith_(std::move(arith)), n_(g.size()), current_(n_ * (n_ + 1) / 2, arith_.zero()),
        next_(current_.size(), arith_.zero()) {
    neighbors_.reserve(n_);
    for (Vertex v = 0; v < n_; ++v) neighbors_.push_back(g.neighbors(v));
    for (Vertex i = 0; i < n_; ++i)
      for (Vertex j : neighbors_[i])
        if (i < j) current_[index(i, j)] = arith_.one();
  }

  std::size_t power() const noexcept { return power_; }

  const value_type& at(Vertex i, Vertex j) const { return current_[index(i, j)]; }

  void step() {
    for (Vertex i = 0; i < n_; ++i) {
      for (Vertex j = i; j < n_; ++j) {
        auto& acc = next_[index(i, j)];
        acc = arith_.zero();
        for (Vertex l : neighbors_[j]) arith_.add_to(acc, current_[index(i, l)]);
      }
    }
    std::swap(current_, next_);
    ++power_;
  }

 private:
  std::size_t index(Vertex i, Vertex j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  Arithmetic arith_;
  std::size_t n_;
  std::size_t power_ = 1;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<value_type> current_;
  std::vector<value_type> next_;
};

template <class Arithmetic>
std::vector<std::vector<typename Arithmetic::value_type>> diagonal_table(const Graph& g,
                                                                          std::size_t kmax,
                                                                          Arithmetic arith) {
  if (kmax < 1) throw std::invalid_argument("walk table: kmax must be at least 1");
  std::vector<std::vector<typename Arithmetic::value_type>> d;
  d.reserve(kmax);
  PowerSequence<Arithmetic> powers(g, arith);
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > 1) powers.step();
    auto& row = d.emplace_back();
    row.reserve(g.size());
    for (Vertex i = 0; i < g.size(); ++i) row.push_back(powers.at(i, i));
  }
  return d;
}

}  // namespace detail

/// d(k, i) = (A^k)_ii, the number of closed walks of length k at i.
class InvariantTable {
 public:
  InvariantTable() = default;

  /// rows[k-1][i] holds d(k, i).
  InvariantTable(std::size_t n, std::vector<std::vector<BigInt>> rows)
      : n_(n), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != n_) throw std::invalid_argument("InvariantTable: ragged rows");
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t kmax() const noexcept { return rows_.size(); }

  /// d(0, i) = 1 by the A^0 = I convention.
  BigInt at(std::size_t k, Vertex i) const {
    if (k == 0) return 1;
    return rows_.at(k - 1).at(i);
  }

  const std::vector<BigInt>& power_row(std::size_t k) const { return rows_.at(k - 1); }

  /// (d(1, i), ..., d(kmax, i)).
  std::vector<BigInt> vertex_vector(Vertex i) const {
    std::vector<BigInt> v;
    v.reserve(kmax());
    for (const auto& r : rows_) v.push_back(r.at(i));
    return v;
  }

  friend bool operator==(const InvariantTable&, const InvariantTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<BigInt>> rows_;
};

struct ModularTable {
  std::uint64_t modulus = mersenne61;
  std::size_t n = 0;
  /// rows[k-1][i] = d(k, i) mod modulus.
  std::vector<std::vector<std::uint64_t>> rows;

  std::size_t kmax() const noexcept { return rows.size(); }
  std::uint64_t at(std::size_t k, Vertex i) const { return rows.at(k - 1).at(i); }

  friend bool operator==(const ModularTable&, const ModularTable&) = default;
};

inline InvariantTable walk_diagonal_table(const Graph& g, std::size_t kmax) {
  return InvariantTable(g.size(), detail::diagonal_table(g, kmax, detail::ExactArithmetic{}));
}

inline InvariantTable walk_diagonal_table(const Graph& g) { return walk_diagonal_table(g, g.size()); }

inline ModularTable walk_diagonal_table_mod(const Graph& g, std::size_t kmax, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("walk_diagonal_table_mod: modulus must be at least 2");
  return ModularTable{modulus, g.size(),
                      detail::diagonal_table(g, kmax, detail::ModularArithmetic{modulus})};
}

inline ModularTable reduce(const InvariantTable& t, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("reduce: modulus must be at least 2");
  ModularTable out{modulus, t.size(), {}};
  const BigInt m = modulus;
  for (std::size_t k = 1; k <= t.kmax(); ++k) {
    auto& row = out.rows.emplace_back();
    for (const auto& x : t.power_row(k)) row.push_back(static_cast<std::uint64_t>(x % m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// certificates

template <class T>
struct BasicCertificate {
  /// Per-vertex vectors (d(1, i), ..., d(kmax, i)) in ascending lexicographic order.
  std::vector<std::vector<T>> rows;
  /// order[s] is the original vertex that landed at sorted position s.
  Permutation order;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t kmax() const noexcept { return rows.empty() ? 0 : rows.front().size(); }
};

using Certificate = BasicCertificate<BigInt>;
using ModularCertificate = BasicCertificate<std::uint64_t>;

namespace detail {

template <class T>
BasicCertificate<T> sorted_certificate(std::vector<std::vector<T>> vectors) {
  std::vector<Vertex> order(vectors.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return vectors[a] < vectors[b]; });
  BasicCertificate<T> c;
  c.rows.reserve(vectors.size());
  for (Vertex v : order) c.rows.push_back(std::move(vectors[v]));
  c.order = Permutation(std::move(order));
  return c;
}

}  // namespace detail

inline Certificate certificate(const InvariantTable& t) {
  std::vector<std::vector<BigInt>> vectors;
  vectors.reserve(t.size());
  for (Vertex i = 0; i < t.size(); ++i) vectors.push_back(t.vertex_vector(i));
  return detail::sorted_certificate(std::move(vectors));
}

/// Residue rows sort differently from the exact rows, so `order` here is only
/// a hint; use the rows for equality screening.
inline ModularCertificate certificate(const ModularTable& t) {
  std::vector<std::vector<std::uint64_t>> vectors(t.n);
  for (Vertex i = 0; i < t.n; ++i)
    for (std::size_t k = 1; k <= t.kmax(); ++k) vectors[i].push_back(t.at(k, i));
  return detail::sorted_certificate(std::move(vectors));
}

struct CertificateComparison {
  static constexpr std::size_t shape_mismatch = std::numeric_limits<std::size_t>::max();

  bool equal = true;
  /// First differing sorted position and power index (0-based, k - 1);
  /// both are shape_mismatch when n or kmax differ.
  std::size_t row = 0;
  std::size_t column = 0;

  explicit operator bool() const noexcept { return equal; }
};

template <class T>
CertificateComparison compare_certificates(const BasicCertificate<T>& a, const BasicCertificate<T>& b) {
  if (a.size() != b.size() || a.kmax() != b.kmax())
    return {false, CertificateComparison::shape_mismatch, CertificateComparison::shape_mismatch};
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.rows[r].size(); ++c)
      if (a.rows[r][c] != b.rows[r][c]) return {false, r, c};
  return {true, 0, 0};
}

// ---------------------------------------------------------------------------
// extended profiles

/// For vertex i: its diagonal vector and, for every other vertex j, the tuple
/// ((A)_ij, (A^2)_ij, ..., (A^kmax)_ij). Each tuple stays attached to one j
/// across all powers; only the list of tuples is sorted.
struct VertexProfile {
  std::vector<BigInt> diagonal;
  std::vector<std::vector<BigInt>> tuples;

  friend bool operator==(const VertexProfile&, const VertexProfile&) = default;
  friend bool operator<(const VertexProfile& a, const VertexProfile& b) {
    return std::tie(a.diagonal, a.tuples) < std::tie(b.diagonal, b.tuples);
  }
};

struct ExtendedProfile {
  std::size_t kmax = 0;
  std::vector<VertexProfile> vertices;

  /// Vertex profiles in sorted order, comparable across graphs.
  std::vector<VertexProfile> sorted() const {
    auto s = vertices;
    std::sort(s.begin(), s.end());
    return s;
  }
};

inline ExtendedProfile extended_profile(const Graph& g, std::size_t kmax) {
  if (kmax < 1) throw std::invalid_argument("extended_profile: kmax must be at least 1");
  const std::size_t n = g.size();
  ExtendedProfile out;
  out.kmax = kmax;
  out.vertices.resize(n);
  for (auto& vp : out.vertices) vp.tuples.assign(n, {});

  detail::PowerSequence<detail::ExactArithmetic> powers(g, {});
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > 1) powers.step();
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j) {
        if (i == j)
          out.vertices[i].diagonal.push_back(powers.at(i, i));
        else
          out.vertices[i].tuples[j].push_back(powers.at(i, j));
      }
  }
  for (Vertex i = 0; i < n; ++i) {
    auto& tuples = out.vertices[i].tuples;
    tuples.erase(tuples.begin() + static_cast<std::ptrdiff_t>(i));
    std::sort(tuples.begin(), tuples.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// neighbor-sum refinement

inline constexpr std::size_t default_refinement_rounds = 2;

/// Each round replaces a vertex's vector by its own vector followed by the
/// componentwise sum of its neighbors' vectors. Vector lengths double per
/// round. All input vectors must have equal length.
template <class T>
std::vector<std::vector<T>> neighbor_sum_refinement(const Graph& g, std::vector<std::vector<T>> colors,
                                                    std::size_t rounds = default_refinement_rounds) {
  if (colors.size() != g.size())
    throw std::invalid_argument("neighbor_sum_refinement: one vector per vertex required");
  for (const auto& c : colors)
    if (c.size() != colors.front().size())
      throw std::invalid_argument("neighbor_sum_refinement: vectors must have equal length");

  std::vector<std::vector<Vertex>> nb(g.size());
  for (Vertex v = 0; v < g.size(); ++v) nb[v] = g.neighbors(v);

  for (std::size_t r = 0; r < rounds; ++r) {
    const std::size_t width = colors.empty() ? 0 : colors.front().size();
    std::vector<std::vector<T>> next(g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      auto& out = next[v];
      out.reserve(2 * width);
      out = colors[v];
      out.resize(2 * width, T{0});
      for (Vertex u : nb[v])
        for (std::size_t c = 0; c < width; ++c) out[width + c] += colors[u][c];
    }
    colors = std::move(next);
  }
  return colors;
}

/// Per-vertex walk vectors of a table, in original vertex order.
inline std::vector<std::vector<BigInt>> vertex_vectors(const InvariantTable& t) {
  std::vector<std::vector<BigInt>> out;
  out.reserve(t.size());
  for (Vertex i = 0; i < t.size(); ++i) out.push_back(t.vertex_vector(i));
  return out;
}

}  // namespace walkinv
