#pragma once

// Integer characteristic polynomials p(x) = det(xI - A): from power traces via
// Newton's identities, directly via the division-free Berkowitz recurrence,
// and the vertex-deleted polynomials p_i(x) obtained from the diagonal walk
// table through the adjugate expansion of (xI - A)^{-1} p(x).

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "invariants.hpp"

namespace walkinv {

class integrity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer polynomial, coefficients constant term first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree) {
    std::vector<BigInt> c(degree + 1, 0);
    c.back() = 1;
    return Polynomial(std::move(c));
  }

  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  Polynomial derivative() const {
    std::vector<BigInt> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * k);
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Human form, e.g. "x^3 - 3x - 2".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const BigInt& c = coeffs_[k];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (mag != 1 || k == 0) os << mag;
      if (k >= 1) os << 'x';
      if (k >= 2) os << '^' << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// t[k-1] = Tr A^k.
struct TraceSequence {
  std::vector<BigInt> t;

  std::size_t size() const noexcept { return t.size(); }
  const BigInt& at(std::size_t k) const { return t.at(k - 1); }
};

inline TraceSequence power_traces(const InvariantTable& table) {
  TraceSequence out;
  for (std::size_t k = 1; k <= table.kmax(); ++k) {
    BigInt sum = 0;
    for (const auto& x : table.power_row(k)) sum += x;
    out.t.push_back(std::move(sum));
  }
  return out;
}

/// Newton's identities k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} P_i, with
/// a_{n-k} = (-1)^k e_k. Every division by k is exact for integer traces of
/// an integer matrix; a remainder means the traces are not such a sequence.
inline Polynomial charpoly_from_traces(const TraceSequence& traces, std::size_t n) {
  if (traces.size() < n)
    throw std::invalid_argument("charpoly_from_traces: need at least n power traces");
  std::vector<BigInt> e(n + 1, 0);
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      BigInt term = e[k - i] * traces.at(i);
      if (i % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    if (acc % k != 0)
      throw integrity_error("charpoly_from_traces: non-exact division at k = " + std::to_string(k));
    e[k] = acc / k;
  }
  std::vector<BigInt> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) coeffs[n - k] = (k % 2 == 0) ? e[k] : BigInt(-e[k]);
  return Polynomial(std::move(coeffs));
}

/// Berkowitz: with A_{r+1} = [[A_r, S], [R, a]], the coefficient vector (from
/// the leading term down) satisfies c_{r+1} = T c_r where T is the lower
/// triangular Toeplitz matrix with first column (1, -a, -RS, -RA_rS, ...,
/// -RA_r^{r-1}S). No divisions anywhere.
template <class Matrix>
Polynomial berkowitz_charpoly(const Matrix& a, std::size_t n) {
  std::vector<BigInt> c{1};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<BigInt> column;
    column.reserve(r + 2);
    column.push_back(1);
    column.push_back(-BigInt(a(r, r)));
    // v = A_r^j S, starting at j = 0
    std::vector<BigInt> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t j = 0; j < r; ++j) {
      BigInt rv = 0;
      for (std::size_t i = 0; i < r; ++i) rv += BigInt(a(r, i)) * v[i];
      column.push_back(-rv);
      if (j + 1 < r) {
        std::vector<BigInt> w(r, 0);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t l = 0; l < r; ++l)
            if (a(i, l) != 0) w[i] += BigInt(a(i, l)) * v[l];
        v = std::move(w);
      }
    }
    std::vector<BigInt> next(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) next[i] += column[i - j] * c[j];
    c = std::move(next);
  }
  std::vector<BigInt> coeffs(c.rbegin(), c.rend());
  return Polynomial(std::move(coeffs));
}

inline Polynomial charpoly_direct(const Graph& g) {
  auto entry = [&](std::size_t i, std::size_t j) -> int { return g.adjacent(i, j) ? 1 : 0; };
  return berkowitz_charpoly(entry, g.size());
}

/// p_i(x) for i = 0..n-1, each the characteristic polynomial of A with row
/// and column i removed.
struct DeletedCharPolys {
  std::vector<Polynomial> polys;

  std::size_t size() const noexcept { return polys.size(); }
  const Polynomial& operator[](std::size_t i) const { return polys[i]; }
  friend bool operator==(const DeletedCharPolys&, const DeletedCharPolys&) = default;
};

/// Coefficient of x^{n-1-m} in p_i is sum_{r=0..m} a_{n-r} d(m-r, i), with
/// a_n = 1 and d(0, i) = 1; m runs over 0..n-1.
inline DeletedCharPolys vertex_deleted_charpolys(const InvariantTable& table, const Polynomial& p) {
  const std::size_t n = table.size();
  if (p.degree() != n || !p.is_monic())
    throw std::invalid_argument("vertex_deleted_charpolys: p must be monic of degree n");
  if (table.kmax() + 1 < n)
    throw std::invalid_argument("vertex_deleted_charpolys: table needs kmax >= n - 1");
  DeletedCharPolys out;
  out.polys.reserve(n);
  for (Vertex i = 0; i < n; ++i) {
    std::vector<BigInt> coeffs(n, 0);
    for (std::size_t m = 0; m < n; ++m) {
      BigInt c = 0;
      for (std::size_t r = 0; r <= m; ++r) c += p.coeff(n - r) * table.at(m - r, i);
      coeffs[n - 1 - m] = std::move(c);
    }
    out.polys.emplace_back(std::move(coeffs));
  }
  return out;
}

inline bool check_derivative_identity(const DeletedCharPolys& deleted, const Polynomial& p) {
  Polynomial sum;
  for (const auto& q : deleted.polys) sum += q;
  return sum == p.derivative();
}

struct RecoveredInvariants {
  /// d(k, i) for k = 1..n-1.
  InvariantTable table;
  /// a_1..a_{n-1}; lower[j-1] = a_j. The determinant a_0 is not recoverable.
  std::vector<BigInt> lower;

  const BigInt& a(std::size_t j) const { return lower.at(j - 1); }
};

/// Inverse of vertex_deleted_charpolys. Summing gives p' so its x^{n-1-m}
/// coefficient is (n - m) a_{n-m}; the triangular expansion is then solved
/// for d(m, i) one power at a time.
inline RecoveredInvariants invariants_from_deleted_charpolys(const DeletedCharPolys& deleted) {
  const std::size_t n = deleted.size();
  if (n == 0) throw std::invalid_argument("invariants_from_deleted_charpolys: empty input");
  for (const auto& q : deleted.polys)
    if (q.degree() != n - 1 || !q.is_monic())
      throw integrity_error("invariants_from_deleted_charpolys: each p_i must be monic of degree n - 1");

  Polynomial sum;
  for (const auto& q : deleted.polys) sum += q;
  // a_hi[r] = a_{n-r}, r = 0..n-1
  std::vector<BigInt> a_hi(n, 0);
  a_hi[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    const BigInt s = sum.coeff(n - 1 - m);
    if (s % (n - m) != 0)
      throw integrity_error("invariants_from_deleted_charpolys: sum of p_i is not a derivative (x^" +
                            std::to_string(n - 1 - m) + " coefficient)");
    a_hi[m] = s / (n - m);
  }

  std::vector<std::vector<BigInt>> rows(n - 1, std::vector<BigInt>(n, 0));
  for (Vertex i = 0; i < n; ++i) {
    // d[m] for this vertex, d[0] = 1
    std::vector<BigInt> d(n, 0);
    d[0] = 1;
    for (std::size_t m = 1; m < n; ++m) {
      BigInt v = deleted[i].coeff(n - 1 - m);
      for (std::size_t r = 1; r <= m; ++r) v -= a_hi[r] * d[m - r];
      d[m] = v;
      rows[m - 1][i] = std::move(v);
    }
  }

  RecoveredInvariants out{InvariantTable(n, std::move(rows)), {}};
  for (std::size_t j = 1; j < n; ++j) out.lower.push_back(a_hi[n - j]);
  return out;
}

// ---------------------------------------------------------------------------
// squarefreeness over Z

namespace detail {

inline BigInt content(const std::vector<BigInt>& c) {
  BigInt g = 0;
  for (const auto& x : c) g = boost::multiprecision::gcd(g, x);
  return g;
}

inline std::vector<BigInt> primitive(std::vector<BigInt> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  BigInt g = content(c);
  if (g > 1)
    for (auto& x : c) x /= g;
  if (!c.empty() && c.back() < 0)
    for (auto& x : c) x = -x;
  return c;
}

/// lc(b)^{deg a - deg b + 1} a mod b, computed without divisions.
inline std::vector<BigInt> pseudo_remainder(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const BigInt lead = b.back();
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const BigInt top = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& x : a) x *= lead;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= top * b[k];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace detail

/// Degree of gcd(p, q) over Q, by the primitive polynomial remainder sequence.
inline std::size_t gcd_degree(const Polynomial& p, const Polynomial& q) {
  auto a = detail::primitive(p.coeffs());
  auto b = detail::primitive(q.coeffs());
  if (a.empty()) return b.empty() ? 0 : b.size() - 1;
  if (b.empty()) return a.size() - 1;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    auto r = detail::primitive(detail::pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() - 1;
}

/// True iff p has no repeated complex root.
inline bool is_squarefree(const Polynomial& p) { return gcd_degree(p, p.derivative()) == 0; }

}  // namespace walkinv
