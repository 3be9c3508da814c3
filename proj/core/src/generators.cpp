#include "commprof/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "commprof/error.hpp"
#include "commprof/random.hpp"

namespace commprof {

Graph random_sparse_graph(std::size_t node_count, double mean_degree, std::uint64_t seed) {
  if (node_count < 2) throw Error("random graph needs at least two nodes");
  const double max_edges = 0.5 * static_cast<double>(node_count) * static_cast<double>(node_count - 1);
  const auto target = static_cast<std::size_t>(
      std::llround(std::min(max_edges, 0.5 * static_cast<double>(node_count) * mean_degree)));

  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(target * 2);
  std::vector<Edge> edges;
  edges.reserve(target);
  while (edges.size() < target) {
    auto u = static_cast<NodeId>(rng.below(node_count));
    auto v = static_cast<NodeId>(rng.below(node_count));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) edges.emplace_back(u, v);
  }
  return Graph::from_edges(node_count, edges);
}

Graph sparse_community_graph(std::size_t node_count, double mean_degree, std::size_t community_size,
                             double mixing, std::uint64_t seed) {
  if (node_count < 2) throw Error("random graph needs at least two nodes");
  if (community_size < 2 || community_size >= node_count)
    throw Error("community size must be at least 2 and below the node count");
  if (!(mixing >= 0.0 && mixing <= 1.0)) throw Error("mixing must lie in [0, 1]");
  const std::size_t blocks = node_count / community_size;
  const std::size_t target = static_cast<std::size_t>(std::llround(0.5 * static_cast<double>(node_count) * mean_degree));
  const auto external = static_cast<std::size_t>(std::llround(mixing * static_cast<double>(target)));
  const std::size_t internal = target - external;
  const double pairs_in = static_cast<double>(blocks) * 0.5 * static_cast<double>(community_size * (community_size - 1));
  if (static_cast<double>(internal) > 0.5 * pairs_in) throw Error("communities too small for the requested degree");

  // Nodes past the last full block belong to it.
  auto block_of = [&](NodeId v) { return std::min<std::size_t>(v / community_size, blocks - 1); };
  auto block_size = [&](std::size_t b) {
    return b + 1 == blocks ? node_count - b * community_size : community_size;
  };

  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(target * 2);
  std::vector<Edge> edges;
  edges.reserve(target);
  auto add = [&](NodeId u, NodeId v) {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) return false;
    edges.emplace_back(u, v);
    return true;
  };
  for (std::size_t made = 0; made < internal;) {
    const std::size_t b = rng.below(blocks);
    const std::size_t size = block_size(b);
    const auto base = static_cast<NodeId>(b * community_size);
    if (add(base + static_cast<NodeId>(rng.below(size)), base + static_cast<NodeId>(rng.below(size)))) ++made;
  }
  for (std::size_t made = 0; made < external;) {
    const auto u = static_cast<NodeId>(rng.below(node_count));
    const auto v = static_cast<NodeId>(rng.below(node_count));
    if (block_of(u) != block_of(v) && add(u, v)) ++made;
  }
  return Graph::from_edges(node_count, edges);
}

Graph clique_chain(std::size_t count, std::size_t size, bool ring) {
  if (count == 0 || size == 0) throw Error("clique chain needs positive count and size");
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < count; ++c) {
    const auto base = static_cast<NodeId>(c * size);
    for (NodeId i = 0; i < size; ++i)
      for (NodeId j = i + 1; j < size; ++j) edges.emplace_back(base + i, base + j);
  }
  for (std::size_t c = 0; c + 1 < count; ++c)
    edges.emplace_back(static_cast<NodeId>(c * size + size - 1), static_cast<NodeId>((c + 1) * size));
  if (ring && count > 2)
    edges.emplace_back(static_cast<NodeId>(count * size - 1), 0);
  return Graph::from_edges(count * size, edges);
}

Graph planted_partition(std::size_t groups, std::size_t size, double p_in, double p_out,
                        std::uint64_t seed) {
  const std::size_t n = groups * size;
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = (u / size == v / size) ? p_in : p_out;
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  return Graph::from_edges(n, edges);
}

Graph karate_club() {
  static constexpr int ties[78][2] = {
      {1, 2},   {1, 3},   {1, 4},   {1, 5},   {1, 6},   {1, 7},   {1, 8},   {1, 9},
      {1, 11},  {1, 12},  {1, 13},  {1, 14},  {1, 18},  {1, 20},  {1, 22},  {1, 32},
      {2, 3},   {2, 4},   {2, 8},   {2, 14},  {2, 18},  {2, 20},  {2, 22},  {2, 31},
      {3, 4},   {3, 8},   {3, 9},   {3, 10},  {3, 14},  {3, 28},  {3, 29},  {3, 33},
      {4, 8},   {4, 13},  {4, 14},  {5, 7},   {5, 11},  {6, 7},   {6, 11},  {6, 17},
      {7, 17},  {9, 31},  {9, 33},  {9, 34},  {10, 34}, {14, 34}, {15, 33}, {15, 34},
      {16, 33}, {16, 34}, {19, 33}, {19, 34}, {20, 34}, {21, 33}, {21, 34}, {23, 33},
      {23, 34}, {24, 26}, {24, 28}, {24, 30}, {24, 33}, {24, 34}, {25, 26}, {25, 28},
      {25, 32}, {26, 32}, {27, 30}, {27, 34}, {28, 34}, {29, 32}, {29, 34}, {30, 33},
      {30, 34}, {31, 33}, {31, 34}, {32, 33}, {32, 34}, {33, 34}};
  std::vector<Edge> edges;
  for (const auto& t : ties)
    edges.emplace_back(static_cast<NodeId>(t[0] - 1), static_cast<NodeId>(t[1] - 1));
  std::vector<std::string> labels;
  for (int i = 1; i <= 34; ++i) labels.push_back(std::to_string(i));
  return Graph::from_edges(34, edges, std::move(labels));
}

}  // namespace commprof
