#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "commprof/error.hpp"
#include "commprof/generators.hpp"
#include "commprof/graph.hpp"

using namespace commprof;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

std::size_t degree_sum(const Graph& g) {
  std::size_t s = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) s += g.degree(v);
  return s;
}

}  // namespace

TEST(EdgeList, Triangle) {
  const auto g = parse("1 2\n2 3\n3 1\n");
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(0, 2));
}

TEST(EdgeList, DropsDuplicatesAndSelfLoops) {
  EdgeListReport report;
  std::istringstream in("a b\nb a\na a\n");
  const auto g = load_edge_list(in, false, &report);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(report.self_loops, 1u);
  EXPECT_EQ(report.duplicates, 1u);
}

TEST(EdgeList, DirectedInputIsSymmetrised) {
  EdgeListReport report;
  std::istringstream in("a b\nb a\nb c\n");
  const auto g = load_edge_list(in, true, &report);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(report.reciprocal, 1u);
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("# header\n1 2\n1 2 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EdgeList, EmptyEdgeSetIsAnError) {
  EXPECT_THROW(parse("# nothing\n"), ParseError);
  EXPECT_THROW(parse("x x\n"), ParseError);
}

TEST(EdgeList, KarateFile) {
  const auto g = load_edge_list(std::filesystem::path(COMMPROF_TEST_DATA) / "karate.edges");
  EXPECT_EQ(g.node_count(), 34u);
  EXPECT_EQ(g.edge_count(), 78u);
  EXPECT_EQ(degree_sum(g), 156u);
  const auto builtin = karate_club();
  EXPECT_EQ(builtin.edge_count(), 78u);
}

TEST(EdgeList, RoundTripKeepsDegreeSequence) {
  const auto g = random_sparse_graph(200, 6.0, 3);
  std::stringstream buffer;
  save_edge_list(g, buffer);
  const auto h = load_edge_list(buffer);
  auto a = g.degrees();
  auto b = h.degrees();
  EXPECT_EQ(h.node_count(), g.node_count() - static_cast<std::size_t>(std::count(a.begin(), a.end(), 0u)));
  EXPECT_EQ(h.edge_count(), g.edge_count());
  std::erase(a, 0u);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(GraphInvariants, SymmetricSimpleAdjacency) {
  const auto g = random_sparse_graph(300, 8.0, 11);
  EXPECT_EQ(degree_sum(g), 2 * g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (NodeId w : nb) {
      EXPECT_NE(w, v);
      EXPECT_TRUE(g.has_edge(w, v));
    }
  }
}

TEST(GraphSummary, Fixtures) {
  const auto triangle = parse("1 2\n2 3\n3 1\n");
  auto s = graph_summary(triangle);
  EXPECT_DOUBLE_EQ(s.density, 1.0);
  EXPECT_DOUBLE_EQ(s.clustering, 1.0);
  EXPECT_DOUBLE_EQ(s.mean_degree, 2.0);

  const auto two = parse("1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n");
  s = graph_summary(two);
  EXPECT_DOUBLE_EQ(s.mean_degree, 2.0);
  EXPECT_DOUBLE_EQ(s.density, 0.4);
  EXPECT_DOUBLE_EQ(s.clustering, 1.0);

  s = graph_summary(parse("1 2\n2 3\n"));
  EXPECT_DOUBLE_EQ(s.clustering, 0.0);
}

TEST(GraphSummary, TransitivityMatchesTripleCount) {
  const auto g = random_sparse_graph(120, 9.0, 5);
  double triangles = 0.0;
  double triples = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    const double k = static_cast<double>(nb.size());
    triples += k * (k - 1.0) / 2.0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) triangles += g.has_edge(nb[i], nb[j]) ? 1.0 : 0.0;
  }
  // Each triangle is seen once from each corner.
  EXPECT_NEAR(graph_summary(g).clustering, triangles / triples, 1e-12);
}

TEST(GraphSummary, TooSmall) {
  const auto g = Graph::from_edges(1, {});
  EXPECT_THROW(graph_summary(g), DomainError);
}

TEST(Components, NumberedBySmallestMember) {
  const auto g = parse("1 2\n3 4\n2 5\n");
  const auto c = connected_components(g);
  EXPECT_EQ(c, (std::vector<std::uint32_t>{0, 0, 1, 1, 0}));
}

TEST(Generators, SparseCommunityGraphEdgeBudget) {
  const std::size_t n = 1000;
  const auto g = sparse_community_graph(n, 10.0, 32, 0.3, 9);
  ASSERT_EQ(g.node_count(), n);
  EXPECT_EQ(g.edge_count(), 5000u);
  std::size_t between = 0;
  for (auto [u, v] : g.edges()) {
    EXPECT_NE(u, v);
    if (std::min<std::size_t>(u / 32, 30) != std::min<std::size_t>(v / 32, 30)) ++between;
  }
  EXPECT_EQ(between, 1500u);
}

TEST(Generators, SparseCommunityGraphIsSeeded) {
  const auto a = sparse_community_graph(300, 6.0, 20, 0.2, 4);
  const auto b = sparse_community_graph(300, 6.0, 20, 0.2, 4);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_THROW(sparse_community_graph(300, 6.0, 1, 0.2, 4), Error);
  EXPECT_THROW(sparse_community_graph(300, 6.0, 20, 1.5, 4), Error);
  EXPECT_THROW(sparse_community_graph(300, 30.0, 8, 0.0, 4), Error);
}
