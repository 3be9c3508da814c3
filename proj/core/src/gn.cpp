#include <algorithm>
#include <cstdint>
#include <vector>

#include "commprof/detectors.hpp"
#include "detail.hpp"

namespace commprof {
namespace {

using EdgeIndex = std::uint32_t;

struct Arc {
  NodeId to;
  EdgeIndex edge;
};

// Working state of the divisive process: the shrinking graph, its current
// components, and the edge betweenness of every surviving edge.
class EdgeRemoval {
 public:
  explicit EdgeRemoval(const Graph& g)
      : g_(g),
        n_(g.node_count()),
        m_(static_cast<double>(g.edge_count())),
        edges_(g.edges()),
        adj_(n_),
        arc_pos_(edges_.size()),
        alive_(edges_.size(), true),
        betweenness_(edges_.size(), 0.0),
        component_(connected_components(g)),
        dist_(n_, -1),
        sigma_(n_, 0.0),
        delta_(n_, 0.0),
        mark_(n_, 0) {
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      const auto [u, v] = edges_[e];
      arc_pos_[e] = {adj_[u].size(), adj_[v].size()};
      adj_[u].push_back({v, e});
      adj_[v].push_back({u, e});
    }
    std::uint32_t count = 0;
    for (auto c : component_) count = std::max(count, c + 1);
    next_component_ = count;
    for (std::uint32_t c = 0; c < count; ++c) members_.emplace_back();
    for (NodeId v = 0; v < n_; ++v) members_[component_[v]].push_back(v);
    for (std::uint32_t c = 0; c < count; ++c) modularity_ += term(members_[c], c);
    for (std::uint32_t c = 0; c < count; ++c) recompute(c);
  }

  std::size_t edges_left() const { return edges_left_; }
  double modularity() const { return modularity_; }

  EdgeIndex most_central() const {
    EdgeIndex best = 0;
    double best_value = -1.0;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      if (!alive_[e]) continue;
      // Relative tolerance so equal-by-symmetry scores tie towards the lowest id.
      if (betweenness_[e] > best_value + 1e-9 * std::max(1.0, best_value)) {
        best = e;
        best_value = betweenness_[e];
      }
    }
    return best;
  }

  Edge endpoints(EdgeIndex e) const { return edges_[e]; }

  /// Removes `e`; returns true if its component fell apart.
  bool remove(EdgeIndex e) {
    const auto [u, v] = edges_[e];
    detach(u, arc_pos_[e].first);
    detach(v, arc_pos_[e].second);
    alive_[e] = false;
    betweenness_[e] = 0.0;
    --edges_left_;

    const std::uint32_t old = component_[u];
    std::vector<NodeId> side = reachable_from(u, v);
    if (side.empty()) {
      recompute(old);
      return false;
    }

    // `side` is u's half; everything else in `old` stays with v.
    const double before = term(members_[old], old);
    const std::uint32_t fresh = next_component_++;
    for (NodeId w : side) component_[w] = fresh;
    std::erase_if(members_[old], [&](NodeId w) { return component_[w] == fresh; });
    members_.push_back(std::move(side));
    modularity_ += term(members_[old], old) + term(members_[fresh], fresh) - before;
    recompute(old);
    recompute(fresh);
    return true;
  }

 private:
  // Modularity term of a component, measured on the original graph.
  double term(const std::vector<NodeId>& nodes, std::uint32_t id) const {
    double internal = 0.0;
    double degree = 0.0;
    for (NodeId w : nodes) {
      degree += static_cast<double>(g_.degree(w));
      for (NodeId x : g_.neighbors(w))
        if (component_[x] == id) internal += 0.5;
    }
    return detail::modularity_term(internal, degree, m_);
  }

  void detach(NodeId v, std::size_t pos) {
    auto& list = adj_[v];
    const Arc moved = list.back();
    list[pos] = moved;
    list.pop_back();
    if (pos < list.size()) {
      auto& slot = arc_pos_[moved.edge];
      if (edges_[moved.edge].first == v)
        slot.first = pos;
      else
        slot.second = pos;
    }
  }

  // Nodes reachable from `start` without touching `target`'s side; empty if
  // `target` is reachable.
  std::vector<NodeId> reachable_from(NodeId start, NodeId target) {
    ++stamp_;
    std::vector<NodeId> seen{start};
    mark_[start] = stamp_;
    for (std::size_t h = 0; h < seen.size(); ++h) {
      for (const Arc& a : adj_[seen[h]]) {
        if (mark_[a.to] == stamp_) continue;
        if (a.to == target) return {};
        mark_[a.to] = stamp_;
        seen.push_back(a.to);
      }
    }
    return seen;
  }

  void recompute(std::uint32_t c) {
    const auto& nodes = members_[c];
    for (NodeId v : nodes)
      for (const Arc& a : adj_[v]) betweenness_[a.edge] = 0.0;
    if (nodes.size() < 2) return;
    for (NodeId s : nodes) accumulate(s);
  }

  // One Brandes pass: shortest-path counts from `s`, then dependencies pushed
  // back along the BFS DAG onto edges.
  void accumulate(NodeId s) {
    order_.clear();
    order_.push_back(s);
    dist_[s] = 0;
    sigma_[s] = 1.0;
    for (std::size_t h = 0; h < order_.size(); ++h) {
      const NodeId v = order_[h];
      const int next = dist_[v] + 1;
      for (const Arc& a : adj_[v]) {
        if (dist_[a.to] < 0) {
          dist_[a.to] = next;
          order_.push_back(a.to);
        }
        if (dist_[a.to] == next) sigma_[a.to] += sigma_[v];
      }
    }
    for (std::size_t h = order_.size(); h-- > 1;) {
      const NodeId w = order_[h];
      const int prev = dist_[w] - 1;
      const double share = (1.0 + delta_[w]) / sigma_[w];
      for (const Arc& a : adj_[w]) {
        if (dist_[a.to] != prev) continue;
        const double c = sigma_[a.to] * share;
        betweenness_[a.edge] += c;
        delta_[a.to] += c;
      }
    }
    for (NodeId v : order_) {
      dist_[v] = -1;
      sigma_[v] = 0.0;
      delta_[v] = 0.0;
    }
  }

  const Graph& g_;
  std::size_t n_;
  double m_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> arc_pos_;
  std::vector<bool> alive_;
  std::size_t edges_left_ = edges_.size();
  std::vector<double> betweenness_;
  std::vector<std::uint32_t> component_;
  std::vector<std::vector<NodeId>> members_;
  std::uint32_t next_component_ = 0;
  double modularity_ = 0.0;

  std::vector<int> dist_;
  std::vector<double> sigma_;
  std::vector<double> delta_;
  std::vector<NodeId> order_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

HierarchyResult girvan_newman(const Graph& g, const Deadline& deadline) {
  deadline.check();
  const std::size_t n = g.node_count();
  HierarchyResult result;
  result.dendrogram.node_count = n;
  if (g.edge_count() == 0) {
    result.best = Partition::singletons(n);
    return result;
  }

  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  double singleton_q = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double a = static_cast<double>(g.degree(v)) / two_m;
    singleton_q -= a * a;
  }

  EdgeRemoval state(g);
  std::vector<MergeStep> splits;
  std::vector<double> before;  // modularity just before each split
  while (state.edges_left() > 0) {
    deadline.check();
    const auto e = state.most_central();
    const double q = state.modularity();
    if (state.remove(e)) {
      const auto [u, v] = state.endpoints(e);
      splits.push_back({u, v, 0.0});
      before.push_back(q);
    }
  }

  // Undoing split k restores the modularity it had before that split.
  auto& steps = result.dendrogram.steps;
  result.dendrogram.initial_modularity = singleton_q;
  for (std::size_t k = splits.size(); k-- > 0;) steps.push_back({splits[k].a, splits[k].b, before[k]});

  result.best = result.dendrogram.cut(result.dendrogram.best_cut());
  return result;
}

Partition detect_gn(const Graph& g, const Deadline& deadline) {
  return girvan_newman(g, deadline).best;
}

}  // namespace commprof
