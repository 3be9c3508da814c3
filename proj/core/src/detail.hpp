#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "commprof/graph.hpp"

namespace commprof::detail {

// Contribution of one community to Newman-Girvan modularity.
inline double modularity_term(double internal_edges, double total_degree, double m) {
  const double a = total_degree / (2.0 * m);
  return internal_edges / m - a * a;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  NodeId find(NodeId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<NodeId> parent_;
};

}  // namespace commprof::detail
