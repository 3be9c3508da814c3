#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <tuple>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/error.hpp"
#include "detail.hpp"

namespace commprof {
namespace {

struct SparseVector {
  std::vector<NodeId> index;
  std::vector<double> value;
};

// Random walk on the graph with one unit self-loop per vertex (as in the
// reference Walktrap implementation), so every vertex has weight d(v) = k_v + 1.
class Walker {
 public:
  Walker(const Graph& g, std::size_t length)
      : g_(g), length_(length), weight_(g.node_count()), dense_(g.node_count(), 0.0),
        mark_(g.node_count(), false) {
    for (NodeId v = 0; v < g.node_count(); ++v) weight_[v] = static_cast<double>(g.degree(v)) + 1.0;
  }

  double weight(NodeId v) const { return weight_[v]; }

  /// Row v of P^t.
  SparseVector distribution(NodeId v) {
    std::vector<NodeId> support{v};
    std::vector<double> mass{1.0};
    std::vector<NodeId> touched;
    for (std::size_t step = 0; step < length_; ++step) {
      touched.clear();
      auto add = [&](NodeId w, double p) {
        if (!mark_[w]) {
          mark_[w] = true;
          touched.push_back(w);
        }
        dense_[w] += p;
      };
      for (std::size_t i = 0; i < support.size(); ++i) {
        const NodeId u = support[i];
        const double p = mass[i] / weight_[u];
        add(u, p);
        for (NodeId w : g_.neighbors(u)) add(w, p);
      }
      std::sort(touched.begin(), touched.end());
      support = touched;
      mass.resize(support.size());
      for (std::size_t i = 0; i < support.size(); ++i) {
        mass[i] = dense_[support[i]];
        dense_[support[i]] = 0.0;
        mark_[support[i]] = false;
      }
    }
    return {std::move(support), std::move(mass)};
  }

  /// Squared distance r^2 = sum_k (P_ak - P_bk)^2 / d(k).
  double distance2(const SparseVector& a, const SparseVector& b) const {
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.index.size() || j < b.index.size()) {
      double d;
      NodeId k;
      if (j == b.index.size() || (i < a.index.size() && a.index[i] < b.index[j])) {
        k = a.index[i];
        d = a.value[i++];
      } else if (i == a.index.size() || b.index[j] < a.index[i]) {
        k = b.index[j];
        d = -b.value[j++];
      } else {
        k = a.index[i];
        d = a.value[i++] - b.value[j++];
      }
      sum += d * d / weight_[k];
    }
    return sum;
  }

 private:
  const Graph& g_;
  std::size_t length_;
  std::vector<double> weight_;
  std::vector<double> dense_;
  std::vector<bool> mark_;
};

SparseVector blend(const SparseVector& a, double wa, const SparseVector& b, double wb) {
  SparseVector out;
  std::size_t i = 0;
  std::size_t j = 0;
  const double total = wa + wb;
  while (i < a.index.size() || j < b.index.size()) {
    if (j == b.index.size() || (i < a.index.size() && a.index[i] < b.index[j])) {
      out.index.push_back(a.index[i]);
      out.value.push_back(wa * a.value[i++] / total);
    } else if (i == a.index.size() || b.index[j] < a.index[i]) {
      out.index.push_back(b.index[j]);
      out.value.push_back(wb * b.value[j++] / total);
    } else {
      out.index.push_back(a.index[i]);
      out.value.push_back((wa * a.value[i++] + wb * b.value[j++]) / total);
    }
  }
  return out;
}

struct Cluster {
  NodeId representative = 0;
  double size = 0.0;
  double internal_edges = 0.0;
  double degree = 0.0;
  SparseVector walk;
  std::map<std::size_t, double> adjacent;  // cluster id -> edges between
  bool alive = false;
};

struct Candidate {
  double cost;
  std::size_t a;
  std::size_t b;
};

struct CheapestFirst {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    return std::tie(x.a, x.b) > std::tie(y.a, y.b);
  }
};

}  // namespace

HierarchyResult walktrap(const Graph& g, const WalktrapOptions& options, const Deadline& deadline) {
  deadline.check();
  if (options.walk_length < 1) throw Error("walk length must be at least 1");
  const std::size_t n = g.node_count();
  const double m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0)
    throw DomainError("Walktrap needs at least one edge: modularity is undefined for m = 0");

  Walker walker(g, options.walk_length);
  std::vector<Cluster> clusters(2 * n);
  double q = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    auto& c = clusters[v];
    c.representative = v;
    c.size = 1.0;
    c.degree = static_cast<double>(g.degree(v));
    c.walk = walker.distribution(v);
    c.alive = true;
    for (NodeId w : g.neighbors(v)) c.adjacent[w] = 1.0;
    q += detail::modularity_term(0.0, c.degree, m);
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  auto cost = [&](std::size_t a, std::size_t b) {
    const auto& x = clusters[a];
    const auto& y = clusters[b];
    return inv_n * x.size * y.size / (x.size + y.size) * walker.distance2(x.walk, y.walk);
  };

  std::priority_queue<Candidate, std::vector<Candidate>, CheapestFirst> heap;
  for (auto [u, v] : g.edges()) heap.push({cost(u, v), u, v});

  HierarchyResult result;
  result.dendrogram.node_count = n;
  result.dendrogram.initial_modularity = q;

  std::size_t next = n;
  while (!heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    if (!clusters[top.a].alive || !clusters[top.b].alive) continue;
    deadline.check();

    auto& x = clusters[top.a];
    auto& y = clusters[top.b];
    const std::size_t id = next++;
    auto& z = clusters[id];
    const double between = x.adjacent.at(top.b);
    z.representative = std::min(x.representative, y.representative);
    z.size = x.size + y.size;
    z.internal_edges = x.internal_edges + y.internal_edges + between;
    z.degree = x.degree + y.degree;
    z.walk = blend(x.walk, x.size, y.walk, y.size);
    z.alive = true;
    for (const auto* side : {&x, &y})
      for (auto [k, e] : side->adjacent)
        if (k != top.a && k != top.b) z.adjacent[k] += e;

    q += detail::modularity_term(z.internal_edges, z.degree, m) -
         detail::modularity_term(x.internal_edges, x.degree, m) -
         detail::modularity_term(y.internal_edges, y.degree, m);
    result.dendrogram.steps.push_back({x.representative, y.representative, q});

    x.alive = false;
    y.alive = false;
    for (auto [k, e] : z.adjacent) {
      auto& nb = clusters[k].adjacent;
      nb.erase(top.a);
      nb.erase(top.b);
      nb[id] = e;
    }
    for (auto [k, e] : z.adjacent) heap.push({cost(k, id), k, id});
    x.walk = {};
    y.walk = {};
    x.adjacent.clear();
    y.adjacent.clear();
  }

  Partition best = result.dendrogram.cut(result.dendrogram.best_cut());
  if (options.adopt_singletons) {
    // Orphaned peripheral vertices join the community of their closest
    // neighbour in random-walk distance (lowest index on ties).
    std::vector<CommunityId> label(best.assignment().begin(), best.assignment().end());
    std::vector<std::size_t> size = best.sizes();
    for (NodeId v = 0; v < n; ++v) {
      if (size[label[v]] != 1 || g.degree(v) == 0) continue;
      const SparseVector own = walker.distribution(v);
      NodeId closest = g.neighbors(v).front();
      double closest_d = std::numeric_limits<double>::infinity();
      for (NodeId w : g.neighbors(v)) {
        const double d = walker.distance2(own, walker.distribution(w));
        if (d < closest_d) {
          closest_d = d;
          closest = w;
        }
      }
      --size[label[v]];
      label[v] = label[closest];
      ++size[label[v]];
    }
    best = Partition::from_labels(label);
  }
  result.best = std::move(best);
  return result;
}

Partition detect_walktrap(const Graph& g, std::size_t walk_length, const Deadline& deadline) {
  return walktrap(g, {walk_length, true}, deadline).best;
}

}  // namespace commprof
