#include <gtest/gtest.h>

#include <walkinv/charpoly.hpp>

#include "oracles.hpp"

using namespace walkinv;

namespace {

Polynomial poly(std::initializer_list<long> constant_first) {
  std::vector<BigInt> c;
  for (long x : constant_first) c.emplace_back(x);
  return Polynomial(std::move(c));
}

Polynomial via_newton(const Graph& g) {
  return charpoly_from_traces(power_traces(walk_diagonal_table(g, g.size())), g.size());
}

}  // namespace

TEST(Polynomial, BasicsAndText) {
  Polynomial p = poly({-2, -3, 0, 1});
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_TRUE(p.is_monic());
  EXPECT_EQ(p.to_string(), "x^3 - 3x - 2");
  EXPECT_EQ(p.derivative(), poly({-3, 0, 3}));
  EXPECT_EQ(poly({0, 0}).to_string(), "0");
  EXPECT_TRUE(poly({0, 0}).is_zero());
  EXPECT_EQ(poly({1, -1}).to_string(), "-x + 1");
  EXPECT_EQ(Polynomial::monomial(2) + poly({-1}), poly({-1, 0, 1}));
}

TEST(Charpoly, SmallExamples) {
  EXPECT_EQ(via_newton(fixtures::complete(2)), poly({-1, 0, 1}));
  EXPECT_EQ(via_newton(fixtures::complete(3)), poly({-2, -3, 0, 1}));
  EXPECT_EQ(via_newton(fixtures::path(3)), poly({0, -2, 0, 1}));
  EXPECT_EQ(via_newton(fixtures::complete(3)).to_string(), "x^3 - 3x - 2");
  EXPECT_EQ(via_newton(fixtures::path(3)).to_string(), "x^3 - 2x");
  EXPECT_EQ(via_newton(Graph(1)), poly({0, 1}));
}

TEST(Charpoly, BerkowitzMatchesInterpolatedDeterminant) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = random_graph(3 + seed % 8, 0.5, seed);
    EXPECT_EQ(charpoly_direct(g).coeffs(), oracle::charpoly_by_interpolation(g)) << write_graph6(g);
  }
  EXPECT_EQ(charpoly_direct(fixtures::petersen()).coeffs(), oracle::charpoly_by_interpolation(fixtures::petersen()));
}

TEST(Charpoly, BerkowitzOnGeneralIntegerMatrix) {
  // [[2, -1, 0], [4, 0, 3], [1, 1, 5]]: det = 2(0-3) + 1(20-3) = 11, trace 7
  int m[3][3] = {{2, -1, 0}, {4, 0, 3}, {1, 1, 5}};
  auto p = berkowitz_charpoly([&](std::size_t i, std::size_t j) { return m[i][j]; }, 3);
  // sum of principal 2x2 minors: (0+4) + (10-0) + (0-3) = 11
  EXPECT_EQ(p, poly({-11, 11, -7, 1}));
}

TEST(Charpoly, NewtonMatchesDirectExhaustively) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Graph g = oracle::graph_from_mask(n, mask);
      ASSERT_EQ(via_newton(g), charpoly_direct(g)) << write_graph6(g);
    }
  }
}

TEST(Charpoly, NewtonMatchesDirectOnLargerGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(10 + seed % 15, 0.5, 900 + seed);
    EXPECT_EQ(via_newton(g), charpoly_direct(g)) << write_graph6(g);
  }
  EXPECT_EQ(via_newton(fixtures::shrikhande()), via_newton(fixtures::rook44()));
}

TEST(Charpoly, PropertiesOfCoefficients) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(2 + seed % 12, 0.5, seed);
    auto p = via_newton(g);
    const std::size_t n = g.size();
    EXPECT_TRUE(p.is_monic());
    EXPECT_EQ(p.coeff(n - 1), 0);                                      // trace A = 0
    EXPECT_EQ(p.coeff(n - 2), -BigInt(g.edge_count()));               // -|E|
    if (n >= 3) {
      std::size_t triangles = 0;
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
          for (Vertex c = b + 1; c < n; ++c) triangles += g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
      EXPECT_EQ(p.coeff(n - 3), -2 * BigInt(triangles));
    }
  }
}

TEST(Charpoly, NewtonRejectsInconsistentTraces) {
  TraceSequence t{{0, 1, 0}};  // k = 2 step needs -P2/2 = -1/2
  EXPECT_THROW(charpoly_from_traces(t, 3), integrity_error);
  EXPECT_THROW(charpoly_from_traces(TraceSequence{{0}}, 2), std::invalid_argument);
}

TEST(DeletedCharpolys, SmallExamples) {
  auto k3 = fixtures::complete(3);
  auto t = walk_diagonal_table(k3, 3);
  auto del = vertex_deleted_charpolys(t, via_newton(k3));
  for (Vertex i = 0; i < 3; ++i) EXPECT_EQ(del[i], poly({-1, 0, 1}));
  EXPECT_TRUE(check_derivative_identity(del, via_newton(k3)));

  auto p3 = fixtures::path(3);
  auto dp = vertex_deleted_charpolys(walk_diagonal_table(p3, 3), via_newton(p3));
  EXPECT_EQ(dp[0], poly({-1, 0, 1}));  // remaining edge b-c
  EXPECT_EQ(dp[1], poly({0, 0, 1}));   // two isolated vertices
  EXPECT_EQ(dp[2], poly({-1, 0, 1}));
}

TEST(DeletedCharpolys, MatchDeleteAndRecomputeExhaustively) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Graph g = oracle::graph_from_mask(n, mask);
      auto del = vertex_deleted_charpolys(walk_diagonal_table(g, n), charpoly_direct(g));
      for (Vertex i = 0; i < n; ++i) ASSERT_EQ(del[i], charpoly_direct(remove_vertex(g, i))) << write_graph6(g);
    }
  }
}

TEST(DeletedCharpolys, MatchDeleteAndRecomputeOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::size_t n = 8 + seed % 7;
    Graph g = random_graph(n, 0.5, 40 + seed);
    auto p = charpoly_direct(g);
    auto del = vertex_deleted_charpolys(walk_diagonal_table(g, n - 1), p);
    for (Vertex i = 0; i < n; ++i) ASSERT_EQ(del[i], charpoly_direct(remove_vertex(g, i)));
    EXPECT_TRUE(check_derivative_identity(del, p));
  }
}

TEST(DeletedCharpolys, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::size_t n = 2 + seed % 14;
    Graph g = random_graph(n, 0.5, 300 + seed);
    auto p = charpoly_direct(g);
    auto t = walk_diagonal_table(g, n);
    auto back = invariants_from_deleted_charpolys(vertex_deleted_charpolys(t, p));
    ASSERT_EQ(back.table.kmax(), n - 1);
    for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(back.table.power_row(k), t.power_row(k));
    for (std::size_t j = 1; j < n; ++j) EXPECT_EQ(back.a(j), p.coeff(j));
  }
}

TEST(DeletedCharpolys, Validation) {
  auto k3 = fixtures::complete(3);
  auto t = walk_diagonal_table(k3, 3);
  EXPECT_THROW(vertex_deleted_charpolys(t, poly({1, 1})), std::invalid_argument);
  EXPECT_THROW(vertex_deleted_charpolys(walk_diagonal_table(fixtures::complete(4), 1), via_newton(fixtures::complete(4))),
               std::invalid_argument);

  DeletedCharPolys bad{{poly({-1, 0, 1}), poly({-1, 0, 1}), poly({-1, 0, 2})}};
  EXPECT_THROW(invariants_from_deleted_charpolys(bad), integrity_error);
  // x^2 + x, x^2, x^2: sum has x coefficient 1, not divisible by n - 1 = 2
  DeletedCharPolys odd{{poly({0, 1, 1}), poly({0, 0, 1}), poly({0, 0, 1})}};
  EXPECT_THROW(invariants_from_deleted_charpolys(odd), integrity_error);
  EXPECT_FALSE(check_derivative_identity(bad, via_newton(k3)));
}

TEST(Squarefree, Examples) {
  EXPECT_TRUE(is_squarefree(via_newton(fixtures::path(3))));        // x^3 - 2x
  EXPECT_FALSE(is_squarefree(via_newton(fixtures::complete(3))));   // (x-2)(x+1)^2
  EXPECT_FALSE(is_squarefree(via_newton(fixtures::cycle(4))));
  EXPECT_FALSE(is_squarefree(via_newton(fixtures::petersen())));
  EXPECT_TRUE(is_squarefree(poly({-2, 0, 1})));
  EXPECT_FALSE(is_squarefree(poly({4, -4, 1})));
  EXPECT_EQ(gcd_degree(poly({1, 2, 1}), poly({-1, 0, 1})), 1u);
  EXPECT_EQ(gcd_degree(poly({6, -5, 1}), poly({12, -7, 1})), 1u);  // shared root 3
  EXPECT_EQ(gcd_degree(poly({2, 1}), poly({3, 1})), 0u);
}
