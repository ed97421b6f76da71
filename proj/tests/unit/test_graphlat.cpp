#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "altsurg/errors.hpp"
#include "altsurg/graphlat.hpp"
#include "oracles.hpp"

using namespace altsurg;

namespace {

const Multigraph kK3(3, {{0, 1}, {1, 2}, {0, 2}});
const Multigraph kBanana5(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
const Multigraph kC5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
const Multigraph kC4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void expect_valid_found(const GramMatrix& g, const SearchCertificate& c) {
  ASSERT_TRUE(c.found) << c.note;
  ASSERT_TRUE(c.superbase.has_value());
  EXPECT_EQ(superbase_violation(*c.superbase), "");
  const Multigraph rebuilt = superbase_graph(*c.superbase);
  EXPECT_TRUE(rebuilt.is_connected());
  EXPECT_TRUE(lattice_isomorphic(laplacian_lattice(rebuilt, 0).gram, g));
}

}  // namespace

TEST(Multigraph, RejectsLoops) {
  EXPECT_THROW(Multigraph(2, {{0, 0}}), DomainError);
  EXPECT_THROW(Multigraph(2, {{0, 2}}), DomainError);
  EXPECT_EQ(kBanana5.multiplicity(0, 1), 5u);
  EXPECT_EQ(kBanana5.max_degree(), 5u);
}

TEST(LaplacianLattice, Examples) {
  EXPECT_EQ(laplacian_lattice(kK3, 0).gram.rows(), (IntMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(laplacian_lattice(kBanana5, 0).gram.rows(), (IntMatrix{{5}}));
  EXPECT_EQ(laplacian_lattice(kC5, 0).gram.determinant(), 5);
  EXPECT_THROW(laplacian_lattice(Multigraph(3, {{0, 1}}), 0), DomainError);
}

TEST(SpanningTrees, Examples) {
  EXPECT_EQ(spanning_tree_count(kK3), 3);
  EXPECT_EQ(spanning_tree_count(kBanana5), 5);
  EXPECT_EQ(spanning_tree_count(Multigraph(4, {{0, 1}, {1, 2}, {1, 3}})), 1);
  EXPECT_EQ(spanning_tree_count(Multigraph(3, {{0, 1}})), 0);
}

// Kirchhoff against the cofactor determinant, for random graphs.
TEST(SpanningTrees, MatchesCofactorOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Multigraph g = oracle::random_connected_multigraph(rng, 6, 10);
    IntMatrix l = g.laplacian();
    l.erase(l.begin());
    for (auto& row : l) row.erase(row.begin());
    ASSERT_EQ(spanning_tree_count(g), oracle::cofactor_determinant(l));
  }
}

TEST(TwoConnected, Examples) {
  EXPECT_TRUE(is_two_connected(kK3));
  EXPECT_FALSE(is_two_connected(Multigraph(3, {{0, 1}, {1, 2}})));
  EXPECT_FALSE(is_two_connected(Multigraph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}})));
  EXPECT_THROW(is_two_connected(Multigraph(3, {{0, 1}})), DomainError);
}

TEST(ShortVectors, MatchBoxEnumeration) {
  const GramMatrix g(IntMatrix{{3, 1, -1}, {1, 4, 2}, {-1, 2, 5}});
  EXPECT_EQ(sorted(short_vectors(g, 9)), sorted(oracle::box_vectors(g, 9, 4)));
}

TEST(LLL, BasisChangeIsUnimodular) {
  const GramMatrix g(IntMatrix{{14, 11, 8}, {11, 10, 7}, {8, 7, 6}});
  const ReducedBasis r = lll_reduce(g);
  EXPECT_EQ(r.gram.determinant(), g.determinant());
  const std::int64_t d = determinant(r.t);
  EXPECT_TRUE(d == 1 || d == -1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += r.t_inverse[i][k] * r.t[k][j];
      EXPECT_EQ(s, i == j ? 1 : 0);
    }
}

TEST(Irreducibles, Examples) {
  EXPECT_EQ(irreducibles(laplacian_lattice(kK3, 0), 2).size(), 6u);
  const auto rank1 = irreducibles(GramMatrix(IntMatrix{{5}}), 5);
  EXPECT_EQ(sorted(rank1), (std::vector<IntVector>{{-1}, {1}}));
  const auto z2 = irreducibles(GramMatrix(IntMatrix{{1, 0}, {0, 1}}), 2);
  EXPECT_EQ(sorted(z2), (std::vector<IntVector>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));
  EXPECT_THROW(irreducibles(GramMatrix(IntMatrix{{5}}), 0), DomainError);
}

// Irreducibles of a graph lattice are exactly the +-[R] with R and its
// complement connected, against the naive pairwise definition too.
TEST(Irreducibles, MatchCutCharacterization) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const Multigraph g = oracle::random_connected_multigraph(rng, 6, 10);
    const GraphLattice gl = laplacian_lattice(g, 0);
    const auto bound = static_cast<std::int64_t>(g.edges().size());
    ASSERT_EQ(sorted(irreducibles(gl, bound)), oracle::cut_irreducibles(g, 0));
  }
}

TEST(Irreducibles, MatchPairwiseDefinition) {
  const GramMatrix g = laplacian_lattice(Multigraph(4, {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}), 0).gram;
  const std::int64_t bound = 6;
  const auto all = short_vectors(g, bound);
  std::vector<IntVector> naive;
  for (const auto& z : all) {
    bool reducible = false;
    const std::int64_t nz = g.pair(z, z);
    for (const auto& x : short_vectors(g, nz)) {
      IntVector y(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i] - x[i];
      if (std::all_of(y.begin(), y.end(), [](std::int64_t c) { return c == 0; })) continue;
      if (g.pair(x, y) >= 0) {
        reducible = true;
        break;
      }
    }
    if (!reducible) naive.push_back(z);
  }
  EXPECT_EQ(sorted(irreducibles(g, bound)), sorted(naive));
}

TEST(Decomposition, Examples) {
  EXPECT_EQ(orthogonal_decomposition(GramMatrix(IntMatrix{{1, 0}, {0, 1}})).size(), 2u);
  EXPECT_EQ(orthogonal_decomposition(laplacian_lattice(kK3, 0).gram).size(), 1u);
  // Two triangles sharing a vertex split into two A2 summands.
  const Multigraph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  EXPECT_EQ(orthogonal_decomposition(laplacian_lattice(bowtie, 2).gram).size(), 2u);
}

// 2-connected iff every vertex image is irreducible iff the lattice does not
// split.
TEST(Decomposition, TwoConnectedConsistency) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 60; ++i) {
    const Multigraph g = oracle::random_connected_multigraph(rng, 6, 10);
    const GraphLattice gl = laplacian_lattice(g, 0);
    const auto irr = irreducibles(gl, static_cast<std::int64_t>(g.max_degree()));
    bool all_vertices = true;
    for (std::size_t v = 0; v + 1 < g.vertex_count(); ++v) {
      IntVector e(g.vertex_count() - 1, 0);
      e[v] = 1;
      all_vertices = all_vertices && std::find(irr.begin(), irr.end(), e) != irr.end();
    }
    IntVector root(g.vertex_count() - 1, -1);
    all_vertices = all_vertices && std::find(irr.begin(), irr.end(), root) != irr.end();
    const bool two = is_two_connected(g);
    ASSERT_EQ(two, all_vertices);
    ASSERT_EQ(two, orthogonal_decomposition(gl.gram).size() == 1);
  }
}

TEST(Superbase, GraphExamples) {
  const GraphLattice k3 = laplacian_lattice(kK3, 0);
  const auto c = find_obtuse_superbase(k3.gram, 2);
  expect_valid_found(k3.gram, c);
  const Multigraph rebuilt = superbase_graph(*c.superbase);
  EXPECT_EQ(rebuilt.vertex_count(), 3u);
  EXPECT_EQ(rebuilt.edges().size(), 3u);

  const GramMatrix five(IntMatrix{{5}});
  const ObtuseSuperbase pair{five, {{1}, {-1}}, {}};
  EXPECT_EQ(superbase_graph(pair).multiplicity(0, 1), 5u);
}

TEST(Superbase, RandomGraphRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const Multigraph g = oracle::random_connected_multigraph(rng, 6, 10);
    const GraphLattice gl = laplacian_lattice(g, 0);
    expect_valid_found(gl.gram, find_obtuse_superbase(gl.gram, static_cast<std::int64_t>(g.max_degree())));
  }
}

TEST(Superbase, ChangemakerLattices) {
  const auto l19 = build_integral(ChangemakerVector({1, 1, 2, 2, 3}));
  const auto c19 = find_obtuse_superbase(l19, 8);
  expect_valid_found(l19.gram, c19);
  EXPECT_EQ(c19.superbase->ambient.size(), c19.superbase->vectors.size());

  const auto l20 = build_integral(ChangemakerVector({1, 1, 1, 2, 2, 3}));
  const auto c20 = find_obtuse_superbase(l20, 8);
  EXPECT_FALSE(c20.found);
  EXPECT_EQ(c20.norm_bound, 8);
  EXPECT_GT(c20.vectors_examined, 0u);
}

TEST(Superbase, InvalidSuperbaseReported) {
  const GramMatrix a2(IntMatrix{{2, -1}, {-1, 2}});
  EXPECT_NE(superbase_violation({a2, {{1, 0}, {0, 1}, {-1, 0}}, {}}), "");
  EXPECT_THROW(superbase_graph({a2, {{1, 0}, {0, 1}, {1, 1}}, {}}), DomainError);
  EXPECT_THROW(find_obtuse_superbase(GramMatrix().direct_sum_identity(13), 3), CapacityError);
}

// C4 = a-b-c-d-a with d the root: split a = (a+b) + (a+c+d).
TEST(Superbase, ModifyOnFourCycle) {
  const GramMatrix g = laplacian_lattice(kC4, 3).gram;
  const IntVector a{1, 0, 0}, b{0, 1, 0}, c{0, 0, 1}, d{-1, -1, -1};
  const ObtuseSuperbase base{g, {d, a, b, c}, {}};
  ASSERT_EQ(superbase_violation(base), "");
  const IntVector x{1, 1, 0}, y{0, -1, 0};
  const ObtuseSuperbase out = superbase_modify(base, 1, x, y);
  EXPECT_EQ(superbase_violation(out), "");
  EXPECT_EQ(sorted(out.vectors), sorted({d, x, y, IntVector{0, 1, 1}}));

  EXPECT_THROW(superbase_modify(base, 1, IntVector{1, 0, 0}, IntVector{0, 0, 0}), DomainError);
  const GramMatrix z2(IntMatrix{{1, 0}, {0, 1}});
  const ObtuseSuperbase split{z2, {{-1, -1}, {1, 0}, {0, 1}}, {}};
  EXPECT_THROW(superbase_modify(split, 1, IntVector{1, 1}, IntVector{0, -1}), DomainError);
}

TEST(Isomorphism, Examples) {
  const GramMatrix a(IntMatrix{{2, -1}, {-1, 2}});
  const GramMatrix b(IntMatrix{{2, 1}, {1, 2}});
  const auto w = lattice_isomorphism(a, b);
  ASSERT_TRUE(w.has_value());
  // U a U^T = b.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) s += (*w)[i][k] * a(k, l) * (*w)[j][l];
      EXPECT_EQ(s, b(i, j));
    }
  EXPECT_FALSE(lattice_isomorphic(GramMatrix(IntMatrix{{5}}), GramMatrix(IntMatrix{{4}})));
  const auto a4 = build_integral(ChangemakerVector({1, 1, 1, 1, 1}));
  EXPECT_TRUE(lattice_isomorphic(laplacian_lattice(kC5, 0).gram, a4.gram));
  // Equal determinants, different lattices.
  EXPECT_FALSE(lattice_isomorphic(GramMatrix(IntMatrix{{1, 0}, {0, 4}}), GramMatrix(IntMatrix{{2, 0}, {0, 2}})));
  const GramMatrix big = GramMatrix().direct_sum_identity(13);
  EXPECT_THROW(lattice_isomorphic(big, big), CapacityError);
}

TEST(Isomorphism, RandomUnimodularConjugates) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    const Multigraph gr = oracle::random_connected_multigraph(rng, 6, 10);
    const GramMatrix g = laplacian_lattice(gr, 0).gram;
    const std::size_t n = g.rank();
    // Product of elementary row operations.
    IntMatrix u(n, IntVector(n, 0));
    for (std::size_t k = 0; k < n; ++k) u[k][k] = 1;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::int64_t> coef(-2, 2);
    for (int step = 0; step < 6 && n > 1; ++step) {
      const std::size_t r = pick(rng), s = pick(rng);
      if (r == s) continue;
      const std::int64_t c = coef(rng);
      for (std::size_t k = 0; k < n; ++k) u[r][k] += c * u[s][k];
    }
    IntMatrix h(n, IntVector(n, 0));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) h[p][q] += u[p][k] * g(k, l) * u[q][l];
    ASSERT_TRUE(lattice_isomorphic(g, GramMatrix(h)));
  }
}
