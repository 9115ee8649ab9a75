#pragma once

// Rebuilding the adjacency matrix from its vertex-indexed walk table.
//
// With A = V D V^T, d(k, i) = sum_j lambda_j^k (V_ij)^2 for every k, so once the
// spectrum is known each vertex gives a Vandermonde system for its squared
// eigenvector entries. Signs are then fixed one column anchor at a time and
// the rest chosen by backtracking against orthogonality and the requirement
// that V D V^T be a 0/1 matrix. Only simple spectra are handled; repeated
// eigenvalues are reported, never solved.
//
// Vertices with equal walk vectors can be exchanged without changing the
// table, so the graph is determined only up to such relabelings. Survivors
// that are isomorphic to each other count as one solution.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "charpoly.hpp"
#include "graph.hpp"
#include "isomatch.hpp"
#include "invariants.hpp"

namespace walkinv {

struct Tolerances {
  /// Eigenvalue gaps below gap * max(1, max |lambda|) count as repeated.
  double gap = 1e-8;
  /// Squared entries at or below this are treated as zero (sign anchors skip them).
  double zero_square = 1e-10;
  /// Negative weights down to -clamp are rounded to zero; below that the solve failed.
  double clamp = 1e-8;
  /// Relative residual allowed in each Vandermonde solve.
  double residual = 1e-6;
  /// |<row_r, row_i>| allowed while choosing signs, and max |V^T V - I| on success.
  double orthogonality = 1e-6;
  /// Every entry of V D V^T must lie this close to 0 or 1.
  double rounding = 0.1;
  /// Sign search stops after this many complete assignments.
  std::size_t max_survivors = 64;
};

struct Spectrum {
  /// Descending.
  std::vector<double> eigenvalues;
  /// gaps[j] = eigenvalues[j] - eigenvalues[j + 1].
  std::vector<double> gaps;
  double min_gap = 0.0;
  bool degenerate = false;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

namespace detail {

inline Spectrum make_spectrum(std::vector<double> eigenvalues, const Tolerances& tol) {
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  Spectrum s;
  s.eigenvalues = std::move(eigenvalues);
  double largest = 1.0;
  for (double l : s.eigenvalues) largest = std::max(largest, std::abs(l));
  s.min_gap = s.eigenvalues.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t j = 0; j + 1 < s.eigenvalues.size(); ++j) {
    s.gaps.push_back(s.eigenvalues[j] - s.eigenvalues[j + 1]);
    s.min_gap = std::min(s.min_gap, s.gaps.back());
  }
  s.degenerate = s.eigenvalues.size() > 1 && s.min_gap < tol.gap * largest;
  return s;
}

}  // namespace detail

inline Spectrum compute_spectrum(const Graph& g, const Tolerances& tol = {}) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j : g.neighbors(i)) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return detail::make_spectrum(std::move(ev), tol);
}

/// Roots of a real-rooted integer polynomial: companion-matrix eigenvalues,
/// then Newton polishing against the exact coefficients. `max_imag` receives
/// the largest imaginary part seen before polishing.
inline Spectrum spectrum_from_charpoly(const Polynomial& p, const Tolerances& tol = {},
                                       double* max_imag = nullptr) {
  using Real = long double;
  const std::size_t n = p.degree();
  if (n == 0 || !p.is_monic()) throw std::invalid_argument("spectrum_from_charpoly: need a monic polynomial");
  std::vector<Real> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[k] = p.coeff(k).convert_to<Real>();

  using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const auto N = static_cast<Eigen::Index>(n);
  MatrixR companion = MatrixR::Zero(N, N);
  for (Eigen::Index i = 1; i < N; ++i) companion(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < N; ++i) companion(i, N - 1) = -c[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<MatrixR> solver(companion, false);

  double imag = 0.0;
  std::vector<double> roots;
  roots.reserve(n);
  for (Eigen::Index i = 0; i < N; ++i) {
    std::complex<Real> z = solver.eigenvalues()(i);
    imag = std::max(imag, static_cast<double>(std::abs(z.imag())));
    Real x = z.real();
    for (int it = 0; it < 60; ++it) {
      Real value = 0, slope = 0;
      for (std::size_t k = n + 1; k-- > 0;) {
        slope = slope * x + value;
        value = value * x + c[k];
      }
      if (slope == 0) break;
      Real dx = value / slope;
      x -= dx;
      if (std::abs(dx) <= 1e-18L * std::max<Real>(1, std::abs(x))) break;
    }
    roots.push_back(static_cast<double>(x));
  }
  if (max_imag) *max_imag = imag;
  return detail::make_spectrum(std::move(roots), tol);
}

enum class ReconstructionStatus { Success, NonGenericSpectrum, SignAmbiguity, Failure };

inline const char* to_string(ReconstructionStatus s) {
  switch (s) {
    case ReconstructionStatus::Success: return "Success";
    case ReconstructionStatus::NonGenericSpectrum: return "NonGenericSpectrum";
    case ReconstructionStatus::SignAmbiguity: return "SignAmbiguity";
    case ReconstructionStatus::Failure: return "Failure";
  }
  return "Failure";
}

struct VSquares {
  ReconstructionStatus status = ReconstructionStatus::Success;
  /// weights[j] = (V_ij)^2 for eigenvalue j.
  std::vector<double> weights;
  double residual = 0.0;
  std::string note;

  bool ok() const noexcept { return status == ReconstructionStatus::Success; }
};

/// Solves sum_j x_j^k z_j = b_k for k = 0..n-1 in O(n^2) (Björck–Pereyra,
/// primal Vandermonde system). Nodes must be distinct.
template <class Real>
std::vector<Real> solve_vandermonde(const std::vector<Real>& x, std::vector<Real> b) {
  const std::size_t n = x.size();
  if (b.size() != n) throw std::invalid_argument("solve_vandermonde: size mismatch");
  if (n == 0) return b;
  const std::size_t last = n - 1;
  for (std::size_t k = 0; k < last; ++k)
    for (std::size_t i = last; i > k; --i) b[i] -= x[k] * b[i - 1];
  for (std::size_t k = last; k-- > 0;) {
    for (std::size_t i = k + 1; i <= last; ++i) b[i] /= (x[i] - x[i - k - 1]);
    for (std::size_t i = k; i < last; ++i) b[i] -= b[i + 1];
  }
  return b;
}

/// `column` holds d(0, i) = 1, d(1, i), ..., d(n-1, i) for one vertex i.
inline VSquares solve_v_squares(const Spectrum& spec, const std::vector<BigInt>& column,
                                const Tolerances& tol = {}) {
  using Real = long double;
  const std::size_t n = spec.size();
  VSquares out;
  if (column.size() < n) throw std::invalid_argument("solve_v_squares: need d(0..n-1, i)");
  if (spec.degenerate) {
    out.status = ReconstructionStatus::NonGenericSpectrum;
    out.note = "eigenvalue gap below tolerance";
    return out;
  }
  std::vector<Real> x(spec.eigenvalues.begin(), spec.eigenvalues.end());
  std::vector<Real> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = column[k].convert_to<Real>();
  auto z = solve_vandermonde(x, b);

  Real worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Real sum = 0, pw = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (k > 0) pw = std::pow(x[j], static_cast<Real>(k));
      sum += pw * z[j];
    }
    worst = std::max(worst, std::abs(sum - b[k]) / std::max<Real>(1, std::abs(b[k])));
  }
  out.residual = static_cast<double>(worst);
  if (!(out.residual <= tol.residual)) {
    out.status = ReconstructionStatus::Failure;
    out.note = "Vandermonde residual " + std::to_string(out.residual) + " above tolerance";
    return out;
  }
  out.weights.reserve(n);
  for (auto w : z) {
    double v = static_cast<double>(w);
    if (v < 0) {
      if (v < -tol.clamp) {
        out.status = ReconstructionStatus::Failure;
        out.note = "negative squared eigenvector entry " + std::to_string(v);
        out.weights.clear();
        return out;
      }
      v = 0;
    }
    out.weights.push_back(v);
  }
  return out;
}

struct ReconstructionResult {
  ReconstructionStatus status = ReconstructionStatus::Failure;
  Spectrum spectrum;
  /// vsq(i, j) = (V_ij)^2: vertex i, eigenvalue j.
  Eigen::MatrixXd vsq;
  /// Resolved V on Success (and the first survivor on SignAmbiguity).
  Eigen::MatrixXd v;
  std::optional<Graph> adj;
  /// A surviving graph not isomorphic to adj, on SignAmbiguity.
  std::optional<Graph> alternative;
  /// Valid complete sign assignments found.
  std::size_t survivors = 0;
  std::vector<double> residuals;
  double orthogonality_error = 0.0;
  /// Largest distance of an entry of V D V^T from its rounded 0/1 value.
  double rounding_error = 0.0;
  std::string note;

  bool ok() const noexcept { return status == ReconstructionStatus::Success; }
};

namespace detail {

struct SignSearch {
  const Eigen::MatrixXd& mag;
  const std::vector<double>& lambda;
  const std::vector<std::size_t>& anchor;
  const Tolerances& tol;
  std::size_t n;
  std::size_t limit;
  Eigen::MatrixXd v;
  std::vector<Eigen::MatrixXd> found;

  // Row i of V, given its signs, against every earlier row.
  bool consistent(std::size_t i) const {
    for (std::size_t r = 0; r < i; ++r) {
      double dot = 0, a = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double prod = v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) *
                      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        dot += prod;
        a += prod * lambda[j];
      }
      if (std::abs(dot) > tol.orthogonality) return false;
      if (std::abs(a) > tol.rounding && std::abs(a - 1) > tol.rounding) return false;
    }
    return true;
  }

  void run(std::size_t i) {
    if (found.size() >= limit) return;
    if (i == n) {
      found.push_back(v);
      return;
    }
    const auto row = static_cast<Eigen::Index>(i);
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      double m = mag(row, col);
      v(row, col) = m;
      if (m > 0 && anchor[j] != i) free.push_back(j);
    }
    if (free.size() > 24) throw std::length_error("sign search: too many free signs in one row");
    const std::uint64_t patterns = std::uint64_t{1} << free.size();
    for (std::uint64_t s = 0; s < patterns && found.size() < limit; ++s) {
      for (std::size_t f = 0; f < free.size(); ++f) {
        const auto col = static_cast<Eigen::Index>(free[f]);
        double m = mag(row, col);
        v(row, col) = ((s >> f) & 1u) ? -m : m;
      }
      if (consistent(i)) run(i + 1);
    }
  }
};

inline Graph round_adjacency(const Eigen::MatrixXd& a, double& worst, bool& valid, double rounding) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  Graph g(n);
  worst = 0;
  valid = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double x = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      double y = a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
      double r = std::round(x);
      worst = std::max(worst, std::abs(x - r));
      if (std::abs(x - r) > rounding || (r != 0 && r != 1) || std::round(y) != r) valid = false;
      if (i == j && r != 0) valid = false;
      if (valid && i < j && r == 1) g.add_edge(i, j);
    }
  return g;
}

}  // namespace detail

/// Column j's sign is fixed positive at its anchor: the first row whose
/// squared entry exceeds the zero threshold. Remaining signs are chosen row by
/// row; each row must be orthogonal to all earlier rows and give 0/1 inner
/// products through D. Survivors whose graphs are isomorphic to the first are
/// the same solution; a non-isomorphic one gives SignAmbiguity.
inline ReconstructionResult assign_signs(const Eigen::MatrixXd& vsq, const Spectrum& spec,
                                         const Tolerances& tol = {}) {
  const std::size_t n = spec.size();
  ReconstructionResult out;
  out.spectrum = spec;
  out.vsq = vsq;
  if (static_cast<std::size_t>(vsq.rows()) != n || static_cast<std::size_t>(vsq.cols()) != n)
    throw std::invalid_argument("assign_signs: vsq must be n x n");

  Eigen::MatrixXd mag(vsq.rows(), vsq.cols());
  for (Eigen::Index i = 0; i < vsq.rows(); ++i)
    for (Eigen::Index j = 0; j < vsq.cols(); ++j)
      mag(i, j) = vsq(i, j) > tol.zero_square ? std::sqrt(vsq(i, j)) : 0.0;

  std::vector<std::size_t> anchor(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (mag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0) {
        anchor[j] = i;
        break;
      }
  for (std::size_t j = 0; j < n; ++j)
    if (anchor[j] == n) {
      out.note = "eigenvector column " + std::to_string(j) + " vanishes";
      return out;
    }

  detail::SignSearch search{mag, spec.eigenvalues, anchor, tol, n, tol.max_survivors, Eigen::MatrixXd::Zero(vsq.rows(), vsq.cols()), {}};
  try {
    search.run(0);
  } catch (const std::length_error& e) {
    out.note = e.what();
    return out;
  }
  if (search.found.empty()) {
    out.note = "no sign assignment satisfies orthogonality and 0/1 entries";
    return out;
  }

  Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(spec.eigenvalues.data(),
                                                            static_cast<Eigen::Index>(n));
  auto rebuild = [&](const Eigen::MatrixXd& v, double& worst, bool& valid) {
    Eigen::MatrixXd a = v * lambda.asDiagonal() * v.transpose();
    return detail::round_adjacency(a, worst, valid, tol.rounding);
  };

  const Eigen::MatrixXd& v = search.found.front();
  bool valid = false;
  Graph g = rebuild(v, out.rounding_error, valid);
  out.v = v;
  out.orthogonality_error =
      (v.transpose() * v - Eigen::MatrixXd::Identity(vsq.rows(), vsq.cols())).cwiseAbs().maxCoeff();
  if (!valid || out.orthogonality_error > tol.orthogonality) {
    out.note = "surviving assignment does not round to a simple graph";
    return out;
  }
  out.adj = std::move(g);
  out.survivors = 1;
  for (std::size_t s = 1; s < search.found.size(); ++s) {
    double worst = 0;
    bool alt_valid = false;
    Graph alt = rebuild(search.found[s], worst, alt_valid);
    if (!alt_valid) continue;
    ++out.survivors;
    if (alt == *out.adj || find_isomorphism(*out.adj, alt).verdict == Verdict::Isomorphic) continue;
    out.alternative = std::move(alt);
    out.status = ReconstructionStatus::SignAmbiguity;
    out.note = "two non-isomorphic sign assignments survive";
    return out;
  }
  if (search.found.size() >= tol.max_survivors) {
    out.status = ReconstructionStatus::SignAmbiguity;
    out.note = "sign search stopped at " + std::to_string(tol.max_survivors) + " survivors";
    return out;
  }
  if (out.survivors > 1)
    out.note = std::to_string(out.survivors) +
               " sign assignments survive, all equal up to exchanging vertices with equal walk vectors";
  out.status = ReconstructionStatus::Success;
  return out;
}

/// Full pipeline from the vertex-indexed table (kmax >= n): Newton's
/// identities, exact squarefree check, roots, per-vertex Vandermonde solves,
/// sign assignment, and an exact re-check of the recovered graph's table.
inline ReconstructionResult reconstruct_adjacency(const InvariantTable& table, const Tolerances& tol = {}) {
  const std::size_t n = table.size();
  if (table.kmax() < n) throw std::invalid_argument("reconstruct_adjacency: table needs kmax >= n");
  ReconstructionResult out;

  Polynomial p;
  try {
    p = charpoly_from_traces(power_traces(table), n);
  } catch (const integrity_error& e) {
    out.note = e.what();
    return out;
  }
  double imag = 0;
  out.spectrum = spectrum_from_charpoly(p, tol, &imag);
  if (!is_squarefree(p)) {
    out.status = ReconstructionStatus::NonGenericSpectrum;
    out.note = "characteristic polynomial has a repeated root";
    return out;
  }
  if (out.spectrum.degenerate) {
    out.status = ReconstructionStatus::NonGenericSpectrum;
    out.note = "eigenvalue gap " + std::to_string(out.spectrum.min_gap) + " below tolerance";
    return out;
  }
  if (imag > 1e-6 * std::max(1.0, std::abs(out.spectrum.eigenvalues.front()))) {
    out.note = "characteristic polynomial has non-real roots";
    return out;
  }

  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd vsq(N, N);
  for (Vertex i = 0; i < n; ++i) {
    std::vector<BigInt> column;
    for (std::size_t k = 0; k < n; ++k) column.push_back(table.at(k, i));
    auto w = solve_v_squares(out.spectrum, column, tol);
    out.residuals.push_back(w.residual);
    if (!w.ok()) {
      out.status = w.status;
      out.note = "vertex " + std::to_string(i) + ": " + w.note;
      return out;
    }
    for (std::size_t j = 0; j < n; ++j)
      vsq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w.weights[j];
  }

  auto residuals = std::move(out.residuals);
  auto spectrum = std::move(out.spectrum);
  out = assign_signs(vsq, spectrum, tol);
  out.residuals = std::move(residuals);
  if (out.status != ReconstructionStatus::Success) return out;

  for (Vertex i = 0; i < n; ++i)
    if (n > 1 && out.adj->degree(i) == 0) {
      out.status = ReconstructionStatus::Failure;
      out.note = "recovered matrix has a zero row (disconnected input)";
      out.adj.reset();
      return out;
    }
  if (!(walk_diagonal_table(*out.adj, table.kmax()) == table)) {
    out.status = ReconstructionStatus::Failure;
    out.note = "recovered graph does not reproduce the walk table";
    out.adj.reset();
  }
  return out;
}

}  // namespace walkinv
