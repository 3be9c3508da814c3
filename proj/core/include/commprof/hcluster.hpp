#pragma once

#include <span>
#include <string>
#include <vector>

namespace commprof {

enum class Linkage { Ward, Average };

std::string_view to_string(Linkage l);

struct ClusterMerge {
  /// Children: ids < n are leaves, id n + k is the cluster made by merge k.
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct OrderedMatrix {
  std::size_t size = 0;
  /// Row-major similarity matrix as given.
  std::vector<double> similarity;
  /// Leaf order: a permutation of 0..size-1.
  std::vector<std::size_t> order;
  std::vector<ClusterMerge> merges;
};

/// Agglomerates the rows of a symmetric similarity matrix. Similarities are
/// rescaled to [0, 1] over the off-diagonal entries and turned into distances
/// d = 1 - s. Ward merges by Lance-Williams updates on squared distances and
/// reports heights as distances; average linkage uses UPGMA. In the leaf
/// order the tighter child of every merge comes first. NaN entries count as
/// the largest distance. Throws Error on asymmetry beyond 1e-9.
OrderedMatrix hcluster_order(std::span<const double> similarity, std::size_t size, Linkage linkage = Linkage::Ward);

/// Topology of the merge tree with leaves named by `labels`, children sorted
/// by text; equal strings mean equal trees up to relabelling of rows.
std::string canonical_tree(const OrderedMatrix& m, std::span<const std::string> labels);

}  // namespace commprof
