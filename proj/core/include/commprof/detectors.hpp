#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commprof/deadline.hpp"
#include "commprof/graph.hpp"
#include "commprof/partition.hpp"

namespace commprof {

enum class Method { GN, CNM, Louvain, SN, Walktrap, LPA, External };

std::string_view to_string(Method m);
/// Case-insensitive; accepts the short names above plus "leading-eigenvector"
/// and "label-propagation". Returns nullopt for anything else.
std::optional<Method> parse_method(std::string_view name);

struct DetectorSpec {
  Method method = Method::Louvain;
  /// Seeds every random choice of Louvain and LPA.
  std::uint64_t seed = 0;
  /// Random walk length for Walktrap (t >= 1).
  std::size_t walk_length = 4;
  /// Sweep cap for LPA.
  std::size_t max_iterations = 100;
  /// Walktrap: reassign leftover singletons to their closest neighbor's community.
  bool adopt_singletons = true;
  /// Display name in reports; defaults to to_string(method).
  std::string name;

  std::string display_name() const;
};

/// One agglomeration step: the communities holding `a` and `b` are joined.
struct MergeStep {
  NodeId a;
  NodeId b;
  /// Newman-Girvan modularity of the partition after this merge.
  double modularity;
};

/// Merge sequence starting from singletons. Divisive methods are recorded in
/// reverse, so every hierarchy is read bottom-up.
struct MergeDendrogram {
  std::size_t node_count = 0;
  double initial_modularity = 0.0;
  std::vector<MergeStep> steps;

  /// Partition after the first `merges` steps.
  Partition cut(std::size_t merges) const;
  /// Number of merges that maximises modularity; ties favour fewer merges.
  std::size_t best_cut() const;
};

struct HierarchyResult {
  Partition best;
  MergeDendrogram dendrogram;
};

/// Girvan-Newman: repeatedly removes the edge of highest betweenness, with
/// exact Brandes recomputation inside the affected component after every
/// removal. Returns the component partition of maximum modularity.
HierarchyResult girvan_newman(const Graph& g, const Deadline& deadline = Deadline::never());
Partition detect_gn(const Graph& g, const Deadline& deadline = Deadline::never());

/// Clauset-Newman-Moore greedy agglomeration. Throws DomainError when m = 0.
HierarchyResult clauset_newman_moore(const Graph& g, const Deadline& deadline = Deadline::never());
Partition detect_cnm(const Graph& g, const Deadline& deadline = Deadline::never());

/// Louvain multilevel modularity optimisation. Throws DomainError when m = 0.
Partition detect_louvain(const Graph& g, std::uint64_t seed,
                         const Deadline& deadline = Deadline::never());

/// Newman's leading-eigenvector recursive bisection (no refinement step).
/// Throws Error if power iteration does not converge.
Partition detect_leading_eigenvector(const Graph& g, const Deadline& deadline = Deadline::never());

struct WalktrapOptions {
  std::size_t walk_length = 4;
  bool adopt_singletons = true;
};

/// Pons-Latapy Walktrap: Ward agglomeration on random-walk distances,
/// cut at maximum modularity. Throws DomainError when m = 0.
HierarchyResult walktrap(const Graph& g, const WalktrapOptions& options = {},
                         const Deadline& deadline = Deadline::never());
Partition detect_walktrap(const Graph& g, std::size_t walk_length = 4,
                          const Deadline& deadline = Deadline::never());

/// Asynchronous label propagation with seeded visiting order and tie breaks.
Partition detect_lpa(const Graph& g, std::uint64_t seed, std::size_t max_iterations = 100,
                     const Deadline& deadline = Deadline::never());

/// Partition of another tool, read from a partition file.
Partition load_external_partition(const Graph& g, const std::filesystem::path& file);

/// Runs the detector named by `spec`. External specs are rejected: they have
/// no algorithm, use load_external_partition instead.
Partition detect(const Graph& g, const DetectorSpec& spec,
                 const Deadline& deadline = Deadline::never());

}  // namespace commprof
