#pragma once

// Simple undirected graphs as bit-packed symmetric adjacency matrices,
// plus permutations, graph6 / edge-list I/O, a seeded generator and the
// algebraic counterexample fixtures.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace walkinv {

using Vertex = std::size_t;

inline constexpr std::size_t max_vertices = std::size_t{1} << 16;

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {
    if (n == 0 || n > max_vertices)
      throw std::invalid_argument("Graph: vertex count must be in [1, 65536]");
  }

  std::size_t size() const noexcept { return n_; }

  bool adjacent(Vertex i, Vertex j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }

  void add_edge(Vertex i, Vertex j) {
    check_pair(i, j);
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  void remove_edge(Vertex i, Vertex j) {
    check_pair(i, j);
    bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
    bits_[j * words_ + i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::size_t degree(Vertex i) const noexcept {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(bits_[i * words_ + w]);
    return d;
  }

  std::vector<Vertex> neighbors(Vertex i) const {
    std::vector<Vertex> out;
    out.reserve(degree(i));
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = bits_[i * words_ + w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (auto w : bits_) twice += std::popcount(w);
    return twice / 2;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_);
    for (Vertex i = 0; i < n_; ++i) d[i] = degree(i);
    return d;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(Vertex i, Vertex j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("Graph: vertex index out of range");
    if (i == j) throw std::invalid_argument("Graph: self-loops are not allowed");
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A bijection on {0..n-1}; map[v] is the image of v.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Vertex> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v])
        throw std::invalid_argument("Permutation: not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Vertex> m(n);
    std::iota(m.begin(), m.end(), Vertex{0});
    return Permutation(std::move(m));
  }

  std::size_t size() const noexcept { return map_.size(); }
  Vertex operator()(Vertex v) const { return map_.at(v); }
  Vertex operator[](Vertex v) const noexcept { return map_[v]; }
  const std::vector<Vertex>& map() const noexcept { return map_; }

  Permutation inverse() const {
    std::vector<Vertex> inv(map_.size());
    for (Vertex v = 0; v < map_.size(); ++v) inv[map_[v]] = v;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> map_;
};

/// result.adjacent(perm(i), perm(j)) == g.adjacent(i, j).
inline Graph apply_permutation(const Graph& g, const Permutation& perm) {
  if (perm.size() != g.size())
    throw std::invalid_argument("apply_permutation: permutation length does not match graph");
  Graph out(g.size());
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j : g.neighbors(i))
      if (i < j) out.add_edge(perm[i], perm[j]);
  return out;
}

inline bool is_connected(const Graph& g) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == g.size();
}

/// Component label per vertex, labels numbered by smallest member.
inline std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.size(), unset);
  std::size_t next = 0;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (label[s] != unset) continue;
    std::vector<Vertex> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : g.neighbors(v))
        if (label[u] == unset) {
          label[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return label;
}

/// Subgraph induced by `vertices`, relabelled 0..k-1 in the given order.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Graph out(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (g.adjacent(vertices[a], vertices[b])) out.add_edge(a, b);
  return out;
}

/// Subgraph induced by the neighbors of v. An isolated v has no neighbors
/// and so no subgraph; that case throws since Graph needs n >= 1.
inline Graph neighborhood_subgraph(const Graph& g, Vertex v) {
  if (v >= g.size()) throw std::out_of_range("neighborhood_subgraph: vertex index out of range");
  auto nb = g.neighbors(v);
  if (nb.empty()) throw std::invalid_argument("neighborhood_subgraph: vertex has no neighbors");
  return induced_subgraph(g, nb);
}

inline bool has_triangle(const Graph& g) {
  for (Vertex i = 0; i < g.size(); ++i) {
    auto nb = g.neighbors(i);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (g.adjacent(nb[a], nb[b])) return true;
  }
  return false;
}

inline Graph remove_vertex(const Graph& g, Vertex v) {
  if (g.size() < 2) throw std::invalid_argument("remove_vertex: graph too small");
  std::vector<Vertex> keep;
  for (Vertex i = 0; i < g.size(); ++i)
    if (i != v) keep.push_back(i);
  return induced_subgraph(g, keep);
}

// ---------------------------------------------------------------------------
// graph6

namespace detail {

inline void g6_push_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
}

}  // namespace detail

/// Canonical minimal-length graph6 line (no trailing newline).
inline std::string write_graph6(const Graph& g) {
  std::string out;
  detail::g6_push_size(out, g.size());
  unsigned chunk = 0;
  int filled = 0;
  for (Vertex j = 1; j < g.size(); ++j) {
    for (Vertex i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  return out;
}

inline Graph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t pos = 0;
  if (text.starts_with(header)) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto value_at = [&](std::size_t at) -> unsigned {
    if (at >= text.size()) throw parse_error("graph6: truncated input", at);
    auto c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw parse_error("graph6: byte outside 63..126", at);
    return c - 63u;
  };

  std::size_t n = 0;
  if (pos >= text.size()) throw parse_error("graph6: empty input", pos);
  if (value_at(pos) != 63) {
    n = value_at(pos);
    pos += 1;
  } else if (pos + 1 < text.size() && value_at(pos + 1) == 63) {
    for (std::size_t k = 0; k < 6; ++k) n = (n << 6) | value_at(pos + 2 + k);
    pos += 8;
  } else {
    for (std::size_t k = 0; k < 3; ++k) n = (n << 6) | value_at(pos + 1 + k);
    pos += 4;
  }
  if (n == 0) throw parse_error("graph6: zero-vertex graphs are not supported", 0);
  if (n > max_vertices) throw parse_error("graph6: vertex count exceeds 65536", 0);

  const std::size_t bit_count = n * (n - 1) / 2;
  const std::size_t byte_count = (bit_count + 5) / 6;
  if (text.size() - pos != byte_count)
    throw parse_error("graph6: expected " + std::to_string(byte_count) + " data bytes, found " +
                          std::to_string(text.size() - pos),
                      std::min(text.size(), pos + byte_count));

  Graph g(n);
  std::size_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      unsigned v = value_at(pos + bit / 6);
      if ((v >> (5 - bit % 6)) & 1u) g.add_edge(i, j);
    }
  }
  if (bit_count % 6 != 0) {
    std::size_t last = pos + byte_count - 1;
    unsigned pad_mask = (1u << (6 - bit_count % 6)) - 1u;
    if (value_at(last) & pad_mask) throw parse_error("graph6: nonzero padding bits", last);
  }
  return g;
}

// ---------------------------------------------------------------------------
// edge list: "n m" header followed by m lines "u v", 0-indexed

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.size() << ' ' << g.edge_count() << '\n';
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j : g.neighbors(i))
      if (i < j) os << i << ' ' << j << '\n';
  return os.str();
}

inline Graph parse_edge_list(std::string_view text) {
  std::size_t pos = 0;
  auto next_number = [&]() -> std::size_t {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) throw parse_error("edge list: unexpected end of input", pos);
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw parse_error("edge list: expected a nonnegative integer", pos);
    std::size_t value = 0;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
      if (value > (std::size_t{1} << 40)) throw parse_error("edge list: number too large", start);
      ++pos;
    }
    return value;
  };

  std::size_t n = next_number();
  std::size_t header_end = pos;
  if (n == 0 || n > max_vertices) throw parse_error("edge list: vertex count must be in [1, 65536]", 0);
  std::size_t m = next_number();
  if (m > n * (n - 1) / 2) throw parse_error("edge list: more edges than a simple graph allows", header_end);
  Graph g(n);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t at = pos;
    std::size_t u = next_number();
    std::size_t v = next_number();
    if (u >= n || v >= n) throw parse_error("edge list: vertex index out of range", at);
    if (u == v) throw parse_error("edge list: self-loop", at);
    if (g.adjacent(u, v)) throw parse_error("edge list: duplicate edge", at);
    g.add_edge(u, v);
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw parse_error("edge list: trailing content", pos);
  return g;
}

/// Edge list if the first non-blank byte is a digit, graph6 otherwise.
/// Digits never occur in graph6 (its alphabet is bytes 63..126).
inline Graph parse_graph(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    return parse_edge_list(text);
  text.remove_prefix(pos);
  auto eol = text.find_first_of("\r\n");
  auto line = text.substr(0, eol);
  if (eol != std::string_view::npos) {
    auto rest = text.substr(eol);
    if (rest.find_first_not_of(" \t\r\n") != std::string_view::npos)
      throw parse_error("graph6: multiple graphs in input", pos + eol);
  }
  return parse_graph6(line);
}

// ---------------------------------------------------------------------------
// generation
//
// All randomness comes from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. Raw outputs are mapped to decisions by hand (the std
// distributions are implementation-defined): a pair (i < j), visited in
// row-major order, is an edge iff (draw >> 11) * 2^-53 < p.

using Rng = std::mt19937_64;

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_graph: p must be in [0, 1]");
  Graph g(n);
  Rng rng(seed);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) g.add_edge(i, j);
    }
  return g;
}

/// Fisher-Yates with j = draw mod (i + 1).
inline Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> m(n);
  std::iota(m.begin(), m.end(), Vertex{0});
  for (std::size_t i = n; i-- > 1;) std::swap(m[i], m[rng() % (i + 1)]);
  return Permutation(std::move(m));
}

inline Permutation random_permutation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_permutation(n, rng);
}

namespace fixtures {

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: needs at least 3 vertices");
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
/// vertex (a, b) is 4a + b.
inline Graph shrikhande() {
  Graph g(16);
  const int steps[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (auto& s : steps) {
        int c = (a + s[0]) % 4, d = (b + s[1]) % 4;
        g.add_edge(static_cast<Vertex>(4 * a + b), static_cast<Vertex>(4 * c + d));
      }
  return g;
}

/// K4 □ K4: (a, b) ~ (c, d) iff exactly one coordinate agrees.
inline Graph rook44() {
  Graph g(16);
  for (Vertex u = 0; u < 16; ++u)
    for (Vertex v = u + 1; v < 16; ++v)
      if ((u / 4 == v / 4) != (u % 4 == v % 4)) g.add_edge(u, v);
  return g;
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5.
inline Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, i + 5);
  }
  return g;
}

/// Names: shrikhande, rook44, petersen, kN, pathN, cycleN.
inline Graph by_name(std::string_view name) {
  auto numeric_suffix = [&](std::string_view prefix) -> std::size_t {
    auto digits = name.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos ||
        digits.size() > 6)
      throw std::invalid_argument("unknown fixture name: " + std::string(name));
    return static_cast<std::size_t>(std::stoul(std::string(digits)));
  };
  if (name == "shrikhande") return shrikhande();
  if (name == "rook44") return rook44();
  if (name == "petersen") return petersen();
  if (name.starts_with("path")) return path(numeric_suffix("path"));
  if (name.starts_with("cycle")) return cycle(numeric_suffix("cycle"));
  if (name.starts_with("k")) return complete(numeric_suffix("k"));
  throw std::invalid_argument("unknown fixture name: " + std::string(name));
}

}  // namespace fixtures

}  // namespace walkinv
