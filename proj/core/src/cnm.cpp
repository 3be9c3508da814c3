#include <map>
#include <queue>
#include <tuple>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/error.hpp"
#include "detail.hpp"

namespace commprof {
namespace {

struct Candidate {
  double gain;
  NodeId a;  // a < b
  NodeId b;
};

// Largest gain first; ties resolved towards the lexicographically smallest pair.
struct CandidateOrder {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.gain != y.gain) return x.gain < y.gain;
    return std::tie(x.a, x.b) > std::tie(y.a, y.b);
  }
};

}  // namespace

HierarchyResult clauset_newman_moore(const Graph& g, const Deadline& deadline) {
  deadline.check();
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  if (m == 0) throw DomainError("CNM needs at least one edge: modularity is undefined for m = 0");
  const double two_m = 2.0 * static_cast<double>(m);

  // gains[i][j] = dQ of joining i and j = 2 (e_ij - a_i a_j), kept for adjacent pairs only.
  std::vector<std::map<NodeId, double>> gains(n);
  std::vector<double> share(n);
  std::vector<bool> alive(n, true);
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;

  double q = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    share[v] = static_cast<double>(g.degree(v)) / two_m;
    q -= share[v] * share[v];
  }
  for (auto [u, v] : g.edges()) {
    const double dq = 2.0 * (1.0 / two_m - share[u] * share[v]);
    gains[u][v] = dq;
    gains[v][u] = dq;
    heap.push({dq, u, v});
  }

  HierarchyResult result;
  result.dendrogram.node_count = n;
  result.dendrogram.initial_modularity = q;

  auto current = [&](const Candidate& c) {
    if (!alive[c.a] || !alive[c.b]) return false;
    const auto it = gains[c.a].find(c.b);
    return it != gains[c.a].end() && it->second == c.gain;
  };

  std::size_t since_check = 0;
  while (!heap.empty()) {
    if (++since_check == 256) {
      deadline.check();
      since_check = 0;
    }
    const Candidate best = heap.top();
    heap.pop();
    if (!current(best)) continue;

    // Fold the community with fewer neighbours into the other one.
    NodeId keep = best.a;
    NodeId gone = best.b;
    if (gains[gone].size() > gains[keep].size()) std::swap(keep, gone);

    auto& into = gains[keep];
    auto& from = gains[gone];
    into.erase(gone);
    from.erase(keep);

    std::map<NodeId, double> merged;
    auto ik = into.begin();
    auto jk = from.begin();
    while (ik != into.end() || jk != from.end()) {
      NodeId k;
      double dq;
      if (jk == from.end() || (ik != into.end() && ik->first < jk->first)) {
        k = ik->first;
        dq = ik->second - 2.0 * share[gone] * share[k];
        ++ik;
      } else if (ik == into.end() || jk->first < ik->first) {
        k = jk->first;
        dq = jk->second - 2.0 * share[keep] * share[k];
        ++jk;
      } else {
        k = ik->first;
        dq = ik->second + jk->second;
        ++ik;
        ++jk;
      }
      merged.emplace(k, dq);
      auto& back = gains[k];
      back.erase(gone);
      back[keep] = dq;
      heap.push({dq, std::min(keep, k), std::max(keep, k)});
    }
    into = std::move(merged);
    from.clear();
    alive[gone] = false;
    share[keep] += share[gone];
    q += best.gain;
    result.dendrogram.steps.push_back({best.a, best.b, q});
  }

  result.best = result.dendrogram.cut(result.dendrogram.best_cut());
  return result;
}

Partition detect_cnm(const Graph& g, const Deadline& deadline) {
  return clauset_newman_moore(g, deadline).best;
}

}  // namespace commprof
