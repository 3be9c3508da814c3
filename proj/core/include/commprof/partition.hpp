#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commprof/graph.hpp"

namespace commprof {

using CommunityId = std::uint32_t;

/// Hard clustering of the nodes 0..n-1.
///
/// Community ids are dense and assigned in order of first appearance, so two
/// partitions describing the same clustering compare equal.
class Partition {
 public:
  Partition() = default;

  /// Compacts arbitrary labels (one per node) into 0..k-1.
  template <typename Label>
  static Partition from_labels(std::span<const Label> labels);
  template <typename Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    return from_labels(std::span<const Label>(labels));
  }

  static Partition singletons(std::size_t node_count);
  static Partition whole(std::size_t node_count);

  std::size_t node_count() const { return assignment_.size(); }
  std::size_t community_count() const { return count_; }
  CommunityId community_of(NodeId v) const { return assignment_[v]; }
  std::span<const CommunityId> assignment() const { return assignment_; }

  std::vector<std::size_t> sizes() const;
  std::vector<std::vector<NodeId>> members() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> assignment_;
  std::size_t count_ = 0;
};

/// Validates that there is exactly one id per node of `g`.
Partition make_partition(const Graph& g, std::span<const std::int64_t> ids);

struct CommunityStats {
  std::size_t size = 0;            // n_c
  std::size_t internal_edges = 0;  // m_c
  std::size_t boundary_edges = 0;  // l_c
  std::size_t total_degree() const { return 2 * internal_edges + boundary_edges; }
};

std::vector<CommunityStats> community_stats(const Graph& g, const Partition& p);

/// Per-node internal and external degree with respect to its own community.
struct NodeDegreeSplit {
  std::vector<std::size_t> internal;
  std::vector<std::size_t> external;
};
NodeDegreeSplit degree_split(const Graph& g, const Partition& p);

/// Sparse R x S cross tabulation of two partitions of the same node set.
class ContingencyTable {
 public:
  struct Cell {
    CommunityId row;
    CommunityId col;
    std::size_t count;
  };

  ContingencyTable(const Partition& rows, const Partition& cols);

  std::size_t total() const { return total_; }
  std::size_t row_count() const { return row_sums_.size(); }
  std::size_t col_count() const { return col_sums_.size(); }
  std::span<const std::size_t> row_sums() const { return row_sums_; }
  std::span<const std::size_t> col_sums() const { return col_sums_; }
  /// Non-zero cells sorted by (row, col).
  std::span<const Cell> cells() const { return cells_; }
  std::size_t at(CommunityId row, CommunityId col) const;

  ContingencyTable transposed() const;
  /// True when the two partitions are the same clustering up to relabeling.
  bool is_matching() const;

 private:
  ContingencyTable() = default;
  std::vector<Cell> cells_;
  std::vector<std::size_t> row_sums_;
  std::vector<std::size_t> col_sums_;
  std::size_t total_ = 0;
};

ContingencyTable contingency(const Partition& p1, const Partition& p2);

/// Pooled community sizes with multiplicities, ascending by size.
class SizeMultiset {
 public:
  SizeMultiset() = default;
  static SizeMultiset from_sizes(std::span<const std::size_t> sizes);
  static SizeMultiset from_counts(std::span<const std::pair<std::size_t, std::size_t>> size_counts);

  /// (size, multiplicity) pairs, sizes strictly ascending.
  std::span<const std::pair<std::size_t, std::size_t>> entries() const { return entries_; }
  std::size_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  std::size_t distinct() const { return entries_.size(); }
  /// Every community as one sample, ascending.
  std::vector<double> expanded() const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> entries_;
  std::size_t total_ = 0;
};

/// Throws Error for an empty collection.
SizeMultiset size_multiset(std::span<const Partition> partitions);

/// One (graph size, detected community count) observation.
struct FitPoint {
  double nodes;
  double communities;
};

enum class FittingVerdict { Over, Under };

struct FittingResult {
  FittingVerdict verdict;
  /// k / sqrt(n) for every input point, in input order.
  std::vector<double> ratios;
  std::size_t upper_half = 0;
  std::size_t upper_half_over = 0;
};

/// Over when most points with n strictly above the median n have k > sqrt(n).
/// Requires at least three points whose n spans a factor of ten.
FittingResult classify_fitting(std::span<const FitPoint> points);
std::string_view to_string(FittingVerdict v);

/// Partition file: "node_label community_label" per line, '#' comments.
/// Every node of `g` must appear; repeated lines must agree.
Partition read_partition(const Graph& g, std::istream& in);
Partition read_partition(const Graph& g, const std::filesystem::path& file);
/// Writes nodes in index order with their dense community id.
void write_partition(const Graph& g, const Partition& p, std::ostream& out);

/// Community-size CSV rows "method,graph,size,count" (no header).
void write_size_rows(std::ostream& out, std::string_view method, std::string_view graph,
                     const SizeMultiset& sizes);
std::string size_csv_header();

// ---------------------------------------------------------------------------

template <typename Label>
Partition Partition::from_labels(std::span<const Label> labels) {
  Partition p;
  p.assignment_.resize(labels.size());
  // Sorting groups equal labels; first[i] is the earliest node sharing i's label.
  std::vector<std::pair<Label, std::size_t>> order;
  order.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) order.emplace_back(labels[i], i);
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> first(labels.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    for (std::size_t t = i; t < j; ++t) first[order[t].second] = order[i].second;
    i = j;
  }
  constexpr auto unset = static_cast<CommunityId>(-1);
  std::vector<CommunityId> dense(labels.size(), unset);
  CommunityId next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& d = dense[first[i]];
    if (d == unset) d = next++;
    p.assignment_[i] = d;
  }
  p.count_ = next;
  return p;
}

}  // namespace commprof
