#include "commprof/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "commprof/error.hpp"
#include "text.hpp"

namespace commprof {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count)
    throw Error("label table size does not match node count");

  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw Error("edge endpoint out of range");
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& a : arcs) ++g.offsets_[a.first + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.reserve(arcs.size());
  for (const auto& a : arcs) g.targets_.push_back(a.second);

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }
  g.labels_ = std::move(labels);
  g.index_.reserve(node_count);
  for (NodeId i = 0; i < node_count; ++i) {
    if (!g.index_.emplace(g.labels_[i], i).second)
      throw Error("duplicate node label '" + g.labels_[i] + "'");
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> k(node_count());
  for (NodeId v = 0; v < node_count(); ++v) k[v] = degree(v);
  return k;
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph load_edge_list(std::istream& in, bool directed_hint, EdgeListReport* report) {
  EdgeListReport local;
  EdgeListReport& rep = report ? *report : local;
  rep = {};

  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::vector<Edge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 2)
      throw ParseError("expected 2 node tokens, found " + std::to_string(tokens.size()), line_no);
    ++rep.lines;
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    if (u == v) {
      ++rep.self_loops;
      continue;
    }
    raw.emplace_back(u, v);
  }

  // Classify collapsed lines: same orientation repeated vs reversed pair.
  std::vector<Edge> oriented = raw;
  std::sort(oriented.begin(), oriented.end());
  const auto distinct_oriented = static_cast<std::size_t>(
      std::unique(oriented.begin(), oriented.end()) - oriented.begin());
  oriented.resize(distinct_oriented);
  std::vector<Edge> undirected;
  undirected.reserve(oriented.size());
  for (auto [u, v] : oriented) undirected.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(undirected.begin(), undirected.end());
  const auto distinct = static_cast<std::size_t>(
      std::unique(undirected.begin(), undirected.end()) - undirected.begin());
  undirected.resize(distinct);

  const std::size_t reversed = distinct_oriented - distinct;
  rep.duplicates = raw.size() - distinct_oriented;
  if (directed_hint)
    rep.reciprocal = reversed;
  else
    rep.duplicates += reversed;

  if (undirected.empty()) throw ParseError("edge list contains no edges", 0);
  const std::size_t n = labels.size();
  return Graph::from_edges(n, undirected, std::move(labels));
}

Graph load_edge_list(const std::filesystem::path& file, bool directed_hint,
                     EdgeListReport* report) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open edge list '" + file.string() + "'");
  try {
    return load_edge_list(in, directed_hint, report);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what(), 0);
  }
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

GraphStats graph_summary(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DomainError("graph summary needs at least two nodes");
  const std::size_t m = g.edge_count();

  GraphStats s;
  s.nodes = n;
  s.edges = m;
  s.mean_degree = 2.0 * static_cast<double>(m) / static_cast<double>(n);
  s.density = 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));

  // Each triangle u<v<w is found once via the sorted neighbor intersection of (u, v).
  std::uint64_t triangles = 0;
  std::uint64_t triples = 0;
  for (NodeId u = 0; u < n; ++u) {
    const auto k = static_cast<std::uint64_t>(g.degree(u));
    triples += k * (k - (k > 0 ? 1 : 0)) / 2;
    const auto nu = g.neighbors(u);
    for (NodeId v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++triangles;
          ++a;
          ++b;
        }
      }
    }
  }
  s.clustering = triples == 0 ? 0.0
                              : 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
  return s;
}

std::string graph_stats_csv_header() { return "name,n,m,mean_degree,density,clustering"; }

std::string graph_stats_csv_row(std::string_view name, const GraphStats& s) {
  return fmt::format("{},{},{},{},{},{}", detail::csv_field(name), s.nodes, s.edges,
                     detail::format_real(s.mean_degree), detail::format_real(s.density),
                     detail::format_real(s.clustering));
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(g.node_count(), unset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace commprof
