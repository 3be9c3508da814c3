#include <gtest/gtest.h>

#include <sstream>

#include "commprof/error.hpp"
#include "commprof/generators.hpp"
#include "commprof/partition.hpp"
#include "oracles.hpp"

using namespace commprof;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

const char* kTwoTriangles = "1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n";

}  // namespace

TEST(Partition, CompactsInFirstSeenOrder) {
  const auto p = Partition::from_labels(std::vector<int>{7, 7, 9});
  EXPECT_EQ(p.community_count(), 2u);
  EXPECT_EQ(p.sizes(), (std::vector<std::size_t>{2, 1}));
  const auto q = Partition::from_labels(std::vector<int>{5, 2, 5, 8, 2});
  EXPECT_EQ(std::vector<CommunityId>(q.assignment().begin(), q.assignment().end()),
            (std::vector<CommunityId>{0, 1, 0, 2, 1}));
  EXPECT_EQ(Partition::from_labels(std::vector<int>{0, 0, 0, 0}).community_count(), 1u);
}

TEST(Partition, LengthMismatchIsAnError) {
  const auto g = parse("1 2\n2 3\n3 4\n");
  const std::vector<std::int64_t> ids{0, 0, 1};
  EXPECT_THROW(make_partition(g, ids), Error);
}

TEST(CommunityStats, HandCounts) {
  const auto g = parse(kTwoTriangles);
  const auto stats = community_stats(g, Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1}));
  for (const auto& c : stats) {
    EXPECT_EQ(c.size, 3u);
    EXPECT_EQ(c.internal_edges, 3u);
    EXPECT_EQ(c.boundary_edges, 0u);
    EXPECT_EQ(c.total_degree(), 6u);
  }
  const auto whole = community_stats(g, Partition::whole(6));
  EXPECT_EQ(whole[0].size, 6u);
  EXPECT_EQ(whole[0].internal_edges, 6u);

  const auto tri = parse("1 2\n2 3\n3 1\n");
  const auto split = community_stats(tri, Partition::from_labels(std::vector<int>{0, 0, 1}));
  EXPECT_EQ(split[0].internal_edges, 1u);
  EXPECT_EQ(split[0].boundary_edges, 2u);
  EXPECT_EQ(split[0].total_degree(), 4u);
}

TEST(CommunityStats, Conservation) {
  const auto g = random_sparse_graph(150, 7.0, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = oracle::to_partition(oracle::random_labels(150, 1 + static_cast<int>(seed % 9), seed));
    std::size_t nodes = 0;
    std::size_t degree = 0;
    for (const auto& c : community_stats(g, p)) {
      nodes += c.size;
      degree += c.total_degree();
    }
    EXPECT_EQ(nodes, 150u);
    EXPECT_EQ(degree, 2 * g.edge_count());
  }
}

TEST(Contingency, Counts) {
  const auto p1 = Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1});
  const auto p2 = Partition::from_labels(std::vector<int>{0, 0, 1, 1, 1});
  const ContingencyTable t(p1, p2);
  EXPECT_EQ(t.at(0, 0), 2u);
  EXPECT_EQ(t.at(0, 1), 1u);
  EXPECT_EQ(t.at(1, 0), 0u);
  EXPECT_EQ(t.at(1, 1), 2u);
  EXPECT_FALSE(t.is_matching());
  EXPECT_TRUE(ContingencyTable(p1, p1).is_matching());

  const ContingencyTable s(p1, Partition::singletons(5));
  for (std::size_t r = 0; r < s.row_count(); ++r) {
    std::size_t ones = 0;
    for (const auto& c : s.cells())
      if (c.row == r) ones += c.count == 1 ? 1 : 0;
    EXPECT_EQ(ones, s.row_sums()[r]);
  }
  EXPECT_THROW(ContingencyTable(p1, Partition::whole(4)), Error);
}

TEST(Contingency, TransposeProperty) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto a = oracle::to_partition(oracle::random_labels(40, 4, seed));
    const auto b = oracle::to_partition(oracle::random_labels(40, 6, seed + 100));
    const auto ab = ContingencyTable(a, b);
    const auto ba = ContingencyTable(b, a);
    for (CommunityId i = 0; i < ab.row_count(); ++i)
      for (CommunityId j = 0; j < ab.col_count(); ++j) EXPECT_EQ(ab.at(i, j), ba.at(j, i));
    const auto t = ab.transposed();
    EXPECT_TRUE(std::equal(t.row_sums().begin(), t.row_sums().end(), ba.row_sums().begin(), ba.row_sums().end()));
  }
}

TEST(SizeMultiset, Pooling) {
  std::vector<Partition> one{Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1})};
  auto s = size_multiset(one);
  EXPECT_EQ(s.total(), 2u);
  ASSERT_EQ(s.distinct(), 1u);
  EXPECT_EQ(s.entries()[0], (std::pair<std::size_t, std::size_t>{3, 2}));

  std::vector<Partition> two{Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1}),
                             Partition::from_labels(std::vector<int>{0, 1, 1, 1})};
  s = size_multiset(two);
  EXPECT_EQ(s.total(), 4u);
  ASSERT_EQ(s.distinct(), 2u);
  EXPECT_EQ(s.entries()[0], (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(s.entries()[1], (std::pair<std::size_t, std::size_t>{3, 3}));

  std::vector<Partition> ten(10, Partition::whole(5));
  s = size_multiset(ten);
  EXPECT_EQ(s.total(), 10u);
  EXPECT_EQ(s.entries()[0], (std::pair<std::size_t, std::size_t>{5, 10}));

  EXPECT_THROW(size_multiset(std::span<const Partition>{}), Error);
}

TEST(Fitting, Verdicts) {
  std::vector<FitPoint> over{{1e3, 1e2}, {1e4, 1e3}, {1e5, 1e4}};
  EXPECT_EQ(classify_fitting(over).verdict, FittingVerdict::Over);

  std::vector<FitPoint> capped{{1e3, 25}, {1e4, 25}, {1e5, 25}};
  EXPECT_EQ(classify_fitting(capped).verdict, FittingVerdict::Under);

  std::vector<FitPoint> boundary{{100, 10}, {1e4, 100}, {1e6, 1000}};
  EXPECT_EQ(classify_fitting(boundary).verdict, FittingVerdict::Under);

  std::vector<FitPoint> two{{1e4, 25}, {1e5, 25}};
  EXPECT_THROW(classify_fitting(two), Error);
  std::vector<FitPoint> narrow{{100, 50}, {200, 50}, {300, 50}};
  EXPECT_THROW(classify_fitting(narrow), Error);
}

TEST(PartitionFile, RoundTrip) {
  const auto g = random_sparse_graph(80, 5.0, 9);
  const auto p = oracle::to_partition(oracle::random_labels(80, 7, 4));
  std::stringstream buffer;
  write_partition(g, p, buffer);
  EXPECT_EQ(read_partition(g, buffer), p);
}

TEST(PartitionFile, UnknownAndMissingLabels) {
  const auto g = parse("a b\nb c\n");
  std::istringstream unknown("a 1\nb 1\nc 2\nzz 3\n");
  try {
    read_partition(g, unknown);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
  std::istringstream missing("a 1\nb 1\n");
  EXPECT_THROW(read_partition(g, missing), Error);
  std::istringstream conflict("a 1\nb 1\nc 2\na 2\n");
  EXPECT_THROW(read_partition(g, conflict), Error);
}
