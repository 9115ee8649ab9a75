#include <gtest/gtest.h>

#include <Eigen/LU>

#include <walkinv/isomatch.hpp>
#include <walkinv/reconstruct.hpp>

#include "oracles.hpp"

using namespace walkinv;

namespace {

std::vector<BigInt> column_of(const InvariantTable& t, Vertex i) {
  std::vector<BigInt> c;
  for (std::size_t k = 0; k < t.size(); ++k) c.push_back(t.at(k, i));
  return c;
}

}  // namespace

TEST(Spectrum, SmallExamples) {
  auto k2 = compute_spectrum(fixtures::complete(2));
  ASSERT_EQ(k2.size(), 2u);
  EXPECT_NEAR(k2.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(k2.eigenvalues[1], -1.0, 1e-12);
  EXPECT_FALSE(k2.degenerate);

  auto p3 = spectrum_from_charpoly(charpoly_direct(fixtures::path(3)));
  EXPECT_NEAR(p3.eigenvalues[0], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p3.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(p3.eigenvalues[2], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p3.min_gap, std::sqrt(2.0), 1e-12);

  EXPECT_TRUE(compute_spectrum(fixtures::complete(3)).degenerate);
  EXPECT_TRUE(spectrum_from_charpoly(charpoly_direct(fixtures::petersen())).degenerate);
}

TEST(Spectrum, PolishedRootsMatchSymmetricSolver) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(5 + seed % 20, 0.5, 70 + seed);
    auto a = compute_spectrum(g);
    double imag = 1;
    auto b = spectrum_from_charpoly(charpoly_direct(g), {}, &imag);
    if (a.degenerate) continue;
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a.eigenvalues[j], b.eigenvalues[j], 1e-9);
  }
}

TEST(Vandermonde, SmallSystemByHand) {
  // nodes 1, 2: z0 + z1 = 3, z0 + 2 z1 = 5 -> z = (1, 2)
  auto z = solve_vandermonde<double>({1.0, 2.0}, {3.0, 5.0});
  EXPECT_NEAR(z[0], 1.0, 1e-14);
  EXPECT_NEAR(z[1], 2.0, 1e-14);
  EXPECT_THROW(solve_vandermonde<double>({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST(Vandermonde, MatchesDenseLu) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0), jitter(-0.2, 0.2);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 8;
    std::vector<double> x, b;
    // well separated nodes on [-4, 4]
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(-4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(n - 1) + jitter(rng));
      b.push_back(u(rng));
    }
    std::shuffle(x.begin(), x.end(), rng);
    auto z = solve_vandermonde(x, b);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      rhs(static_cast<Eigen::Index>(k)) = b[k];
      for (std::size_t j = 0; j < n; ++j)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::pow(x[j], static_cast<double>(k));
    }
    Eigen::VectorXd ref = m.fullPivLu().solve(rhs);
    double scale = 1.0 + ref.cwiseAbs().maxCoeff();
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(z[j], ref(static_cast<Eigen::Index>(j)), 1e-7 * scale);
  }
}

TEST(VSquares, SingleEdgeAndPath) {
  auto k2 = fixtures::complete(2);
  auto t2 = walk_diagonal_table(k2);
  auto w = solve_v_squares(compute_spectrum(k2), column_of(t2, 0));
  ASSERT_TRUE(w.ok());
  EXPECT_NEAR(w.weights[0], 0.5, 1e-12);
  EXPECT_NEAR(w.weights[1], 0.5, 1e-12);

  // P3 eigenvectors (1, sqrt2, 1)/2, (1, 0, -1)/sqrt2, (1, -sqrt2, 1)/2
  auto p3 = fixtures::path(3);
  auto t3 = walk_diagonal_table(p3);
  auto spec = compute_spectrum(p3);
  auto end = solve_v_squares(spec, column_of(t3, 0));
  auto mid = solve_v_squares(spec, column_of(t3, 1));
  ASSERT_TRUE(end.ok());
  ASSERT_TRUE(mid.ok());
  EXPECT_NEAR(end.weights[0], 0.25, 1e-12);
  EXPECT_NEAR(end.weights[1], 0.5, 1e-12);
  EXPECT_NEAR(end.weights[2], 0.25, 1e-12);
  EXPECT_NEAR(mid.weights[0], 0.5, 1e-12);
  EXPECT_NEAR(mid.weights[1], 0.0, 1e-12);
  EXPECT_NEAR(mid.weights[2], 0.5, 1e-12);
}

TEST(VSquares, RowsAndColumnsSumToOne) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = random_graph(6 + seed % 8, 0.5, 1000 + seed);
    auto spec = compute_spectrum(g);
    if (spec.degenerate || spec.min_gap < 1e-6) continue;
    auto t = walk_diagonal_table(g);
    std::vector<double> col_sum(g.size(), 0.0);
    for (Vertex i = 0; i < g.size(); ++i) {
      auto w = solve_v_squares(spec, column_of(t, i));
      ASSERT_TRUE(w.ok()) << w.note;
      double s = 0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_GE(w.weights[j], 0.0);
        s += w.weights[j];
        col_sum[j] += w.weights[j];
      }
      EXPECT_NEAR(s, 1.0, 1e-8);
    }
    // column norms are not constrained by the solve; only conditioning bounds them
    for (double c : col_sum) EXPECT_NEAR(c, 1.0, 1e-5);
  }
}

TEST(VSquares, RejectsDegenerateSpectrum) {
  auto k3 = fixtures::complete(3);
  auto w = solve_v_squares(compute_spectrum(k3), column_of(walk_diagonal_table(k3), 0));
  EXPECT_EQ(w.status, ReconstructionStatus::NonGenericSpectrum);
}

TEST(Reconstruct, PathOfThree) {
  auto r = reconstruct_adjacency(walk_diagonal_table(fixtures::path(3)));
  ASSERT_EQ(r.status, ReconstructionStatus::Success) << r.note;
  ASSERT_TRUE(r.adj.has_value());
  EXPECT_EQ(*r.adj, fixtures::path(3));
}

TEST(Reconstruct, DegenerateSpectraAreReported) {
  for (const Graph& g : {fixtures::complete(3), fixtures::complete(4), fixtures::cycle(4), fixtures::petersen()}) {
    auto r = reconstruct_adjacency(walk_diagonal_table(g));
    EXPECT_EQ(r.status, ReconstructionStatus::NonGenericSpectrum) << write_graph6(g);
    EXPECT_FALSE(r.adj.has_value());
  }
}

TEST(Reconstruct, RandomGenericGraphs) {
  std::size_t tried = 0, succeeded = 0;
  for (std::uint64_t seed = 0; tried < 30; ++seed) {
    Graph g = random_graph(7, 0.5, seed);
    if (!is_connected(g)) continue;
    auto spec = compute_spectrum(g);
    if (spec.min_gap <= 1e-6) continue;
    ++tried;
    auto t = walk_diagonal_table(g);
    auto r = reconstruct_adjacency(t);
    if (!r.ok()) continue;
    ++succeeded;
    EXPECT_LE(r.orthogonality_error, 1e-6);
    EXPECT_LE(r.rounding_error, 0.1);
    EXPECT_EQ(walk_diagonal_table(*r.adj), t);
    if (*r.adj == g) continue;
    // otherwise the answer is g with vertices of equal walk vectors exchanged
    auto iso = find_isomorphism(g, *r.adj);
    ASSERT_EQ(iso.verdict, Verdict::Isomorphic) << write_graph6(g);
    for (Vertex i = 0; i < g.size(); ++i) EXPECT_EQ(t.vertex_vector(i), t.vertex_vector((*iso.permutation)[i]));
    EXPECT_GT(r.survivors, 1u);
  }
  EXPECT_GE(succeeded, 29u);
}

TEST(Reconstruct, TableFixesGraphOnlyUpToEqualWalkVectors) {
  // find a generic graph with two vertices whose exchange changes the labeled graph
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Graph g = random_graph(7, 0.5, seed);
    if (!is_connected(g) || compute_spectrum(g).min_gap <= 1e-6) continue;
    auto t = walk_diagonal_table(g);
    for (Vertex u = 0; u < 7; ++u)
      for (Vertex v = u + 1; v < 7; ++v) {
        if (t.vertex_vector(u) != t.vertex_vector(v)) continue;
        std::vector<Vertex> swap(7);
        std::iota(swap.begin(), swap.end(), Vertex{0});
        std::swap(swap[u], swap[v]);
        Graph h = apply_permutation(g, Permutation(swap));
        if (h == g) continue;
        EXPECT_EQ(walk_diagonal_table(h), t);
        auto r = reconstruct_adjacency(t);
        ASSERT_TRUE(r.ok()) << r.note;
        EXPECT_TRUE(*r.adj == g || *r.adj == h || find_isomorphism(g, *r.adj).verdict == Verdict::Isomorphic);
        return;
      }
  }
  FAIL() << "no example found";
}

TEST(Reconstruct, LargerGenericGraph) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = random_graph(12, 0.5, 2000 + seed);
    if (!is_connected(g) || compute_spectrum(g).min_gap <= 1e-6) continue;
    auto r = reconstruct_adjacency(walk_diagonal_table(g));
    if (!r.ok()) continue;
    EXPECT_EQ(*r.adj, g);
    return;
  }
  FAIL() << "no generic 12-vertex sample reconstructed";
}

TEST(Reconstruct, RejectsShortTableAndInconsistentTraces) {
  EXPECT_THROW(reconstruct_adjacency(walk_diagonal_table(fixtures::path(3), 2)), std::invalid_argument);
  // traces 0, 1, 0: Newton division by 2 is not exact
  InvariantTable bogus(3, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  auto r = reconstruct_adjacency(bogus);
  EXPECT_EQ(r.status, ReconstructionStatus::Failure);
  EXPECT_FALSE(r.note.empty());
}

TEST(Reconstruct, StatusNames) {
  EXPECT_STREQ(to_string(ReconstructionStatus::Success), "Success");
  EXPECT_STREQ(to_string(ReconstructionStatus::NonGenericSpectrum), "NonGenericSpectrum");
  EXPECT_STREQ(to_string(ReconstructionStatus::SignAmbiguity), "SignAmbiguity");
  EXPECT_STREQ(to_string(ReconstructionStatus::Failure), "Failure");
}
