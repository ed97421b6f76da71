#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "altsurg/errors.hpp"
#include "altsurg/goeritz.hpp"
#include "altsurg/io.hpp"

using namespace altsurg;

namespace {

PDCode fixture(const std::string& name) { return pd_from_json(read_json_file(std::string(ALTSURG_FIXTURES) + "/pd/" + name + ".json")); }

AlexanderPolynomial alexander(const std::string& name) {
  return alexander_from_json(read_json_file(std::string(ALTSURG_FIXTURES) + "/alexander/" + name + ".json"));
}

WhiteDiagram banana(std::size_t k, int mu) {
  WhiteDiagram w;
  w.vertices = 2;
  for (std::size_t i = 0; i < k; ++i) {
    w.edges.emplace_back(0, 1);
    w.mu.push_back(mu);
  }
  return w;
}

WhiteDiagram triangle() { return {3, {{0, 1}, {1, 2}, {0, 2}}, {-1, -1, -1}}; }

}  // namespace

TEST(PD, Validation) {
  EXPECT_THROW(validate_pd(PDCode{}), ParseError);
  EXPECT_THROW(validate_pd(PDCode{{{1, 2, 3, 4}}}), ParseError);
  EXPECT_THROW(validate_pd(PDCode{{{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 0}}}), ParseError);
  EXPECT_NO_THROW(validate_pd(fixture("torus_2_3")));
}

TEST(WhiteGraph, TrefoilColorings) {
  const PDCode pd = fixture("torus_2_3");
  const WhiteDiagram a = white_graph_from_pd(pd, Coloring::A);
  EXPECT_EQ(a.vertices, 2u);
  EXPECT_EQ(a.edges.size(), 3u);
  for (const auto& e : a.edges) EXPECT_NE(e.first, e.second);
  EXPECT_TRUE(std::all_of(a.mu.begin(), a.mu.end(), [&](int m) { return m == a.mu.front(); }));
  const WhiteDiagram b = white_graph_from_pd(pd, Coloring::B);
  EXPECT_EQ(b.vertices, 3u);
  EXPECT_EQ(b.graph().max_degree(), 2u);
  EXPECT_TRUE(b.graph().is_connected());
}

TEST(WhiteGraph, TorusTwoFiveHasBanana) {
  const PDCode pd = fixture("torus_2_5");
  bool banana_seen = false;
  for (const Coloring c : {Coloring::A, Coloring::B}) {
    const WhiteDiagram w = white_graph_from_pd(pd, c);
    if (w.vertices == 2 && w.edges.size() == 5) banana_seen = true;
  }
  EXPECT_TRUE(banana_seen);
}

TEST(Goeritz, Examples) {
  EXPECT_EQ(goeritz_matrix(banana(5, -1)).rows(), (IntMatrix{{5}}));
  EXPECT_EQ(goeritz_matrix(triangle()).rows(), (IntMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(goeritz_matrix(WhiteDiagram{2, {{0, 1}, {0, 1}}, {1, -1}}).rows(), (IntMatrix{{0}}));
  EXPECT_THROW(goeritz_matrix(triangle(), 3), DomainError);
}

TEST(WhiteLattice, Examples) {
  const GramMatrix t25 = white_lattice(banana(5, -1));
  EXPECT_EQ(t25.rows(), (IntMatrix{{5}}));
  EXPECT_TRUE(short_vectors(t25, 1).empty());
  EXPECT_EQ(white_lattice(triangle()).rows(), (IntMatrix{{2, -1}, {-1, 2}}));

  // A pendant edge is a cut-edge (nugatory crossing).
  const WhiteDiagram cut{3, {{0, 1}, {0, 1}, {1, 2}}, {-1, -1, -1}};
  EXPECT_FALSE(cut.reduced());
  EXPECT_THROW(white_lattice(cut), ReduceFirst);
  const WhiteDiagram loop{2, {{0, 1}, {0, 1}, {1, 1}}, {-1, -1, -1}};
  EXPECT_TRUE(loop.has_loops());
  EXPECT_THROW(white_lattice(loop), ReduceFirst);
  EXPECT_THROW(white_lattice(WhiteDiagram{2, {{0, 1}, {0, 1}}, {1, -1}}), DomainError);
  EXPECT_THROW(white_lattice(banana(3, 1)), DomainError);

  const PDCode kink = fixture("kink");
  EXPECT_THROW(white_lattice(white_graph_from_pd(kink, Coloring::B)), ReduceFirst);
}

// For every fixture: the all-negative coloring's Goeritz matrix is the
// reduced Laplacian exactly, both colorings share |det|, and T(2,n) has
// determinant n.
TEST(WhiteLattice, FixtureInvariants) {
  for (const auto& [name, det] : std::vector<std::pair<std::string, std::int64_t>>{
           {"torus_2_3", 3}, {"torus_2_5", 5}, {"torus_2_7", 7}, {"torus_2_9", 9}, {"b72", 7}}) {
    const PDCode pd = fixture(name);
    const WhiteDiagram a = white_graph_from_pd(pd, Coloring::A);
    const WhiteDiagram b = white_graph_from_pd(pd, Coloring::B);
    const WhiteDiagram& neg = a.mu.front() == -1 ? a : b;
    const GraphLattice gl = laplacian_lattice(neg.graph(), neg.vertices - 1);
    EXPECT_EQ(goeritz_matrix(neg), gl.gram) << name;
    EXPECT_EQ(white_lattice(neg).determinant(), det) << name;
    EXPECT_EQ(std::llabs(goeritz_matrix(a).determinant()), std::llabs(goeritz_matrix(b).determinant())) << name;
    EXPECT_EQ(spanning_tree_count(a.graph()), spanning_tree_count(b.graph())) << name;
  }
}

TEST(Verify, LensSpaces) {
  const AlexanderPolynomial unknot = alexander("unknot");
  for (int n : {3, 5, 7, 9}) {
    const auto r = verify_alternating_surgery(fixture("torus_2_" + std::to_string(n)), unknot, Rational(n));
    EXPECT_TRUE(r.pass) << n << ": " << r.detail;
    EXPECT_EQ(r.white_gram->determinant(), n);
    EXPECT_EQ(r.superbase_found, true);
  }
  const auto b = verify_alternating_surgery(fixture("b72"), unknot, Rational(7, 2));
  EXPECT_TRUE(b.pass) << b.detail;
  EXPECT_EQ(b.white_gram->determinant(), 7);
  EXPECT_EQ(b.white_gram->rank(), 3u);
  EXPECT_EQ(b.superbase_found, true);
}

TEST(Verify, WhiteDiagramDirect) {
  const auto r = verify_alternating_surgery(banana(5, -1), AlexanderPolynomial(), Rational(5));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failed_stage, VerifyStage::Isomorphism);
  EXPECT_NE(r.detail.find("rank mismatch"), std::string::npos);
  const WhiteDiagram c5{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, {-1, -1, -1, -1, -1}};
  const auto s = verify_alternating_surgery(c5, AlexanderPolynomial(), Rational(5));
  EXPECT_TRUE(s.pass) << s.detail;
  ASSERT_TRUE(s.witness.has_value());
}

TEST(Verify, Failures) {
  const AlexanderPolynomial pretzel = alexander("pretzel");
  const auto w = verify_alternating_surgery(fixture("torus_2_5"), pretzel, Rational(25));
  EXPECT_FALSE(w.pass);
  EXPECT_EQ(w.failed_stage, VerifyStage::Window);
  const auto i = verify_alternating_surgery(fixture("torus_2_5"), pretzel, Rational(19));
  EXPECT_FALSE(i.pass);
  EXPECT_EQ(i.failed_stage, VerifyStage::Isomorphism);
  const auto r = verify_alternating_surgery(fixture("torus_2_5"), alexander("cable25"), Rational(5));
  EXPECT_EQ(r.failed_stage, VerifyStage::Recovery);
  EXPECT_EQ(to_string(VerifyStage::RankFeasibility), "rank-feasibility");
}
