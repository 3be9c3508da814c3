#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commprof {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Nodes are dense 0-based indices; the original token of every node is kept
/// in a label table so results can be written back in external terms.
/// Neighbor lists are sorted ascending. Safe to share between threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `node_count` nodes. Self-loops are dropped and
  /// duplicate or reversed edges collapse to one. When `labels` is empty the
  /// nodes are labelled "0", "1", ...
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool has_edge(NodeId u, NodeId v) const;

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;
  std::vector<std::size_t> degrees() const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Counters describing what the edge-list reader normalised away.
struct EdgeListReport {
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  /// With the directed hint set, u->v and v->u pairs merged into one edge.
  std::size_t reciprocal = 0;
};

/// Reads a whitespace separated edge list. Lines starting with '#' or '%' are
/// comments. Node tokens are arbitrary strings; dense indices follow first
/// appearance. Input is always symmetrized: with `directed_hint` the reader
/// only changes how collapsed reverse arcs are counted in `report`.
///
/// Throws ParseError for a line without exactly two tokens or when no edge
/// survives normalisation.
Graph load_edge_list(std::istream& in, bool directed_hint = false,
                     EdgeListReport* report = nullptr);
Graph load_edge_list(const std::filesystem::path& file, bool directed_hint = false,
                     EdgeListReport* report = nullptr);

/// Writes "u v" label pairs, one edge per line, u < v by dense index.
void save_edge_list(const Graph& g, std::ostream& out);

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double mean_degree = 0.0;
  double density = 0.0;
  /// Transitivity: 3 * triangles / connected triples (0 when there are no triples).
  double clustering = 0.0;
};

/// Throws DomainError for graphs with fewer than two nodes.
GraphStats graph_summary(const Graph& g);

/// "name,n,m,mean_degree,density,clustering"
std::string graph_stats_csv_header();
std::string graph_stats_csv_row(std::string_view name, const GraphStats& s);

/// Component index per node; components are numbered by smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g);

}  // namespace commprof
