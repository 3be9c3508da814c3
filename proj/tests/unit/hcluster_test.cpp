#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "commprof/error.hpp"
#include "commprof/hcluster.hpp"

using namespace commprof;

namespace {

std::vector<double> random_similarity(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s[i * n + j] = s[j * n + i] = u(rng);
  return s;
}

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

struct NaiveTree {
  std::string canonical;
  std::vector<double> heights;
};

// Agglomeration that recomputes every cluster distance from the member
// dissimilarities at each step. Ward uses
//   D^2(A, B) = 2|A||B|/(|A|+|B|) * (mean d^2(a, b) - mean d^2(a, a')/2 - mean d^2(b, b')/2)
// with means over all ordered member pairs; average linkage uses the mean of d(a, b).
NaiveTree naive_cluster(const std::vector<double>& s, std::size_t n, Linkage linkage) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        lo = std::min(lo, s[i * n + j]);
        hi = std::max(hi, s[i * n + j]);
      }
  auto d = [&](std::size_t i, std::size_t j) { return i == j ? 0.0 : 1.0 - (s[i * n + j] - lo) / (hi - lo); };
  auto mean_over = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, bool squared) {
    double sum = 0.0;
    for (auto x : a)
      for (auto y : b) sum += squared ? d(x, y) * d(x, y) : d(x, y);
    return sum / static_cast<double>(a.size() * b.size());
  };
  auto distance = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (linkage == Linkage::Average) return mean_over(a, b, false);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double e = mean_over(a, b, true) - 0.5 * mean_over(a, a, true) - 0.5 * mean_over(b, b, true);
    return std::sqrt(std::max(0.0, 2.0 * na * nb / (na + nb) * e));
  };

  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::string> text(n);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    text[i] = "m" + std::to_string(i);
  }
  NaiveTree out;
  double floor = 0.0;
  while (members.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const double dij = distance(members[i], members[j]);
        if (dij < best) {
          best = dij;
          bi = i;
          bj = j;
        }
      }
    floor = std::max(floor, best);
    out.heights.push_back(floor);
    auto a = text[bi], b = text[bj];
    if (b < a) std::swap(a, b);
    text[bi] = "(" + a + "," + b + ")";
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(bj));
    text.erase(text.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  out.canonical = text.front();
  return out;
}

}  // namespace

TEST(Hcluster, BlocksStayContiguous) {
  // A, C similar; B, D similar; given interleaved.
  const std::vector<double> s{1.0, 0.1, 0.9, 0.1,  //
                              0.1, 1.0, 0.1, 0.9,  //
                              0.9, 0.1, 1.0, 0.1,  //
                              0.1, 0.9, 0.1, 1.0};
  for (auto linkage : {Linkage::Ward, Linkage::Average}) {
    const auto m = hcluster_order(s, 4, linkage);
    ASSERT_EQ(m.order.size(), 4u);
    std::size_t pos[4];
    for (std::size_t i = 0; i < 4; ++i) pos[m.order[i]] = i;
    EXPECT_EQ(std::abs(static_cast<int>(pos[0]) - static_cast<int>(pos[2])), 1);
    EXPECT_EQ(std::abs(static_cast<int>(pos[1]) - static_cast<int>(pos[3])), 1);
    EXPECT_EQ(m.merges.size(), 3u);
    EXPECT_EQ(m.merges.back().size, 4u);
  }
}

TEST(Hcluster, EqualSimilaritiesGiveEqualHeights) {
  std::vector<double> s(25, 0.3);
  for (std::size_t i = 0; i < 5; ++i) s[i * 5 + i] = 1.0;
  const auto m = hcluster_order(s, 5);
  for (const auto& merge : m.merges) EXPECT_DOUBLE_EQ(merge.height, m.merges.front().height);
  std::vector<std::size_t> sorted = m.order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Hcluster, MatchesNaiveRecomputation) {
  for (auto linkage : {Linkage::Ward, Linkage::Average}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 3 + seed % 8;
      const auto s = random_similarity(n, seed);
      const auto m = hcluster_order(s, n, linkage);
      const auto naive = naive_cluster(s, n, linkage);
      EXPECT_EQ(canonical_tree(m, names(n)), naive.canonical) << to_string(linkage) << " seed " << seed;
      ASSERT_EQ(m.merges.size(), naive.heights.size());
      for (std::size_t k = 0; k < m.merges.size(); ++k) EXPECT_NEAR(m.merges[k].height, naive.heights[k], 1e-12);
    }
  }
}

TEST(Hcluster, Invariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 12;
    const auto m = hcluster_order(random_similarity(n, seed + 77), n);
    std::vector<std::size_t> sorted = m.order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(n);
    std::iota(iota.begin(), iota.end(), 0);
    EXPECT_EQ(sorted, iota);
    for (std::size_t k = 1; k < m.merges.size(); ++k) EXPECT_GE(m.merges[k].height, m.merges[k - 1].height);
    // Deterministic given the matrix.
    EXPECT_EQ(hcluster_order(random_similarity(n, seed + 77), n).order, m.order);
  }
}

TEST(Hcluster, PermutationInvariantTopology) {
  const std::size_t n = 9;
  const auto s = random_similarity(n, 2024);
  const auto labels = names(n);
  const std::string reference = canonical_tree(hcluster_order(s, n), labels);
  std::mt19937_64 rng(1);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < 100; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> p(n * n);
    std::vector<std::string> plabels(n);
    for (std::size_t i = 0; i < n; ++i) {
      plabels[i] = labels[perm[i]];
      for (std::size_t j = 0; j < n; ++j) p[i * n + j] = s[perm[i] * n + perm[j]];
    }
    EXPECT_EQ(canonical_tree(hcluster_order(p, n), plabels), reference);
  }
}

TEST(Hcluster, MissingEntriesAndErrors) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> s{1.0, 0.8, nan, 0.8, 1.0, 0.2, nan, 0.2, 1.0};
  const auto m = hcluster_order(s, 3);
  EXPECT_EQ(m.merges.size(), 2u);
  EXPECT_EQ(canonical_tree(m, names(3)), "((m0,m1),m2)");

  std::vector<double> asym{1.0, 0.5, 0.5 + 1e-6, 1.0};
  EXPECT_THROW(hcluster_order(asym, 2), Error);
  EXPECT_THROW(hcluster_order(asym, 3), Error);
  const auto single = hcluster_order(std::vector<double>{1.0}, 1);
  EXPECT_EQ(single.order, std::vector<std::size_t>{0});
  EXPECT_TRUE(single.merges.empty());
}
