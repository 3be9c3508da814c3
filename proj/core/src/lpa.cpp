#include <algorithm>
#include <numeric>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/random.hpp"

namespace commprof {
namespace {

// Labels carried by the most neighbours of v.
void dominant_labels(const Graph& g, NodeId v, const std::vector<NodeId>& label,
                     std::vector<std::size_t>& count, std::vector<NodeId>& touched,
                     std::vector<NodeId>& best) {
  touched.clear();
  best.clear();
  std::size_t top = 0;
  for (NodeId w : g.neighbors(v)) {
    const NodeId l = label[w];
    if (count[l]++ == 0) touched.push_back(l);
    top = std::max(top, count[l]);
  }
  for (NodeId l : touched) {
    if (count[l] == top) best.push_back(l);
    count[l] = 0;
  }
}

}  // namespace

Partition detect_lpa(const Graph& g, std::uint64_t seed, std::size_t max_iterations,
                     const Deadline& deadline) {
  const std::size_t n = g.node_count();
  Rng rng(seed);
  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::size_t> count(n, 0);
  std::vector<NodeId> touched;
  std::vector<NodeId> best;

  for (std::size_t sweep = 0; sweep < max_iterations; ++sweep) {
    deadline.check();
    rng.shuffle(std::span<NodeId>(order));
    for (NodeId v : order) {
      if (g.degree(v) == 0) continue;
      dominant_labels(g, v, label, count, touched, best);
      label[v] = best.size() == 1 ? best.front() : best[rng.below(best.size())];
    }

    // Stable once every node already holds one of its neighbourhood's maximal labels.
    bool stable = true;
    for (NodeId v = 0; v < n && stable; ++v) {
      if (g.degree(v) == 0) continue;
      dominant_labels(g, v, label, count, touched, best);
      stable = std::find(best.begin(), best.end(), label[v]) != best.end();
    }
    if (stable) break;
  }
  return Partition::from_labels(label);
}

}  // namespace commprof
