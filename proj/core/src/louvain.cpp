#include <deque>
#include <numeric>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/error.hpp"
#include "commprof/random.hpp"

namespace commprof {
namespace {

constexpr double kMinGain = 1e-12;

// Weighted graph of one Louvain level. Self-loop weight w_ii is stored as the
// diagonal entry A_ii, so it already counts twice towards the node strength.
struct LevelGraph {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<double> weights;
  std::vector<double> strength;

  std::size_t size() const { return strength.size(); }
};

LevelGraph from_graph(const Graph& g) {
  LevelGraph lg;
  lg.offsets.push_back(0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId w : g.neighbors(v)) {
      lg.targets.push_back(w);
      lg.weights.push_back(1.0);
    }
    lg.offsets.push_back(lg.targets.size());
    lg.strength.push_back(static_cast<double>(g.degree(v)));
  }
  return lg;
}

// Local moving phase. Nodes are first visited in a shuffled order; after
// that only nodes whose neighbour changed community are revisited, until no
// move raises modularity. Returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<NodeId>& community, double two_m, Rng& rng,
                const Deadline& deadline) {
  const std::size_t n = lg.size();
  std::vector<double> total(n, 0.0);
  for (NodeId v = 0; v < n; ++v) total[community[v]] += lg.strength[v];

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<NodeId>(order));
  std::deque<NodeId> pending(order.begin(), order.end());
  std::vector<char> queued(n, 1);

  std::vector<double> link(n, 0.0);
  std::vector<NodeId> touched;
  bool moved_any = false;
  for (std::size_t visits = 0; !pending.empty(); ++visits) {
    if (visits % 4096 == 0) deadline.check();
    const NodeId v = pending.front();
    pending.pop_front();
    queued[v] = 0;
    const NodeId home = community[v];
    const double k = lg.strength[v];

    touched.clear();
    touched.push_back(home);
    link[home] = 0.0;
    for (std::size_t a = lg.offsets[v]; a < lg.offsets[v + 1]; ++a) {
      const NodeId w = lg.targets[a];
      if (w == v) continue;
      const NodeId c = community[w];
      if (link[c] == 0.0 && c != home) touched.push_back(c);
      link[c] += lg.weights[a];
    }

    total[home] -= k;
    // gain(c) ~ link to c - total(c) * k / 2m; the move is worth
    // (gain(best) - gain(home)) / m in modularity.
    auto gain = [&](NodeId c) { return link[c] - total[c] * k / two_m; };
    const double stay = gain(home);
    NodeId best = home;
    double best_gain = stay;
    for (NodeId c : touched) {
      const double gc = gain(c);
      if (gc > best_gain) {
        best_gain = gc;
        best = c;
      }
    }
    if (best != home && 2.0 * (best_gain - stay) / two_m > kMinGain) {
      community[v] = best;
      moved_any = true;
      for (std::size_t a = lg.offsets[v]; a < lg.offsets[v + 1]; ++a) {
        const NodeId w = lg.targets[a];
        if (!queued[w] && community[w] != best) {
          queued[w] = 1;
          pending.push_back(w);
        }
      }
    } else {
      best = home;
    }
    total[best] += k;
    for (NodeId c : touched) link[c] = 0.0;
  }
  return moved_any;
}

// Renumbers communities densely in node order; returns the community count.
std::size_t renumber(std::vector<NodeId>& community) {
  constexpr auto unset = static_cast<NodeId>(-1);
  std::vector<NodeId> dense(community.size(), unset);
  NodeId next = 0;
  for (auto& c : community) {
    if (dense[c] == unset) dense[c] = next++;
    c = dense[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<NodeId>& community, std::size_t count) {
  std::vector<std::vector<NodeId>> members(count);
  for (NodeId v = 0; v < lg.size(); ++v) members[community[v]].push_back(v);

  LevelGraph next;
  next.offsets.push_back(0);
  next.strength.assign(count, 0.0);
  std::vector<double> weight(count, 0.0);
  std::vector<NodeId> touched;
  for (NodeId c = 0; c < count; ++c) {
    touched.clear();
    for (NodeId v : members[c]) {
      next.strength[c] += lg.strength[v];
      for (std::size_t a = lg.offsets[v]; a < lg.offsets[v + 1]; ++a) {
        const NodeId d = community[lg.targets[a]];
        if (weight[d] == 0.0) touched.push_back(d);
        weight[d] += lg.weights[a];
      }
    }
    for (NodeId d : touched) {
      next.targets.push_back(d);
      next.weights.push_back(weight[d]);
      weight[d] = 0.0;
    }
    next.offsets.push_back(next.targets.size());
  }
  return next;
}

}  // namespace

Partition detect_louvain(const Graph& g, std::uint64_t seed, const Deadline& deadline) {
  deadline.check();
  if (g.edge_count() == 0)
    throw DomainError("Louvain needs at least one edge: modularity is undefined for m = 0");
  const double two_m = 2.0 * static_cast<double>(g.edge_count());

  Rng rng(seed);
  LevelGraph level = from_graph(g);
  std::vector<NodeId> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0);

  while (true) {
    std::vector<NodeId> community(level.size());
    std::iota(community.begin(), community.end(), 0);
    if (!move_nodes(level, community, two_m, rng, deadline)) break;
    const std::size_t count = renumber(community);
    for (auto& c : membership) c = community[c];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }
  return Partition::from_labels(membership);
}

}  // namespace commprof
