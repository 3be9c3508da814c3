#include "commprof/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "commprof/error.hpp"
#include "text.hpp"

namespace commprof {

Partition Partition::singletons(std::size_t node_count) {
  std::vector<std::size_t> ids(node_count);
  for (std::size_t i = 0; i < node_count; ++i) ids[i] = i;
  return from_labels(ids);
}

Partition Partition::whole(std::size_t node_count) {
  return from_labels(std::vector<std::size_t>(node_count, 0));
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> s(count_, 0);
  for (auto c : assignment_) ++s[c];
  return s;
}

std::vector<std::vector<NodeId>> Partition::members() const {
  std::vector<std::vector<NodeId>> out(count_);
  for (NodeId v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

Partition make_partition(const Graph& g, std::span<const std::int64_t> ids) {
  if (ids.size() != g.node_count())
    throw Error("partition has " + std::to_string(ids.size()) + " entries for " +
                std::to_string(g.node_count()) + " nodes");
  return Partition::from_labels(ids);
}

std::vector<CommunityStats> community_stats(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) throw Error("partition does not match graph");
  std::vector<CommunityStats> stats(p.community_count());
  for (NodeId v = 0; v < g.node_count(); ++v) ++stats[p.community_of(v)].size;
  for (auto [u, v] : g.edges()) {
    const auto cu = p.community_of(u);
    const auto cv = p.community_of(v);
    if (cu == cv) {
      ++stats[cu].internal_edges;
    } else {
      ++stats[cu].boundary_edges;
      ++stats[cv].boundary_edges;
    }
  }
  return stats;
}

NodeDegreeSplit degree_split(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) throw Error("partition does not match graph");
  NodeDegreeSplit out;
  out.internal.assign(g.node_count(), 0);
  out.external.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId w : g.neighbors(v)) {
      if (p.community_of(v) == p.community_of(w))
        ++out.internal[v];
      else
        ++out.external[v];
    }
  return out;
}

ContingencyTable::ContingencyTable(const Partition& rows, const Partition& cols) {
  if (rows.node_count() != cols.node_count())
    throw Error("contingency table needs partitions of the same node set (" +
                std::to_string(rows.node_count()) + " vs " + std::to_string(cols.node_count()) +
                " nodes)");
  total_ = rows.node_count();
  row_sums_.assign(rows.community_count(), 0);
  col_sums_.assign(cols.community_count(), 0);

  std::vector<std::uint64_t> keys(total_);
  for (NodeId v = 0; v < total_; ++v) {
    keys[v] = (static_cast<std::uint64_t>(rows.community_of(v)) << 32) | cols.community_of(v);
    ++row_sums_[rows.community_of(v)];
    ++col_sums_[cols.community_of(v)];
  }
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    cells_.push_back({static_cast<CommunityId>(keys[i] >> 32),
                      static_cast<CommunityId>(keys[i] & 0xffffffffu), j - i});
    i = j;
  }
}

std::size_t ContingencyTable::at(CommunityId row, CommunityId col) const {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), std::pair{row, col},
                                   [](const Cell& c, const std::pair<CommunityId, CommunityId>& k) {
                                     return std::pair{c.row, c.col} < k;
                                   });
  if (it == cells_.end() || it->row != row || it->col != col) return 0;
  return it->count;
}

ContingencyTable ContingencyTable::transposed() const {
  ContingencyTable t;
  t.total_ = total_;
  t.row_sums_ = col_sums_;
  t.col_sums_ = row_sums_;
  t.cells_.reserve(cells_.size());
  for (const auto& c : cells_) t.cells_.push_back({c.col, c.row, c.count});
  std::sort(t.cells_.begin(), t.cells_.end(), [](const Cell& a, const Cell& b) {
    return std::pair{a.row, a.col} < std::pair{b.row, b.col};
  });
  return t;
}

bool ContingencyTable::is_matching() const {
  return cells_.size() == row_sums_.size() && cells_.size() == col_sums_.size();
}

ContingencyTable contingency(const Partition& p1, const Partition& p2) {
  return ContingencyTable(p1, p2);
}

SizeMultiset SizeMultiset::from_sizes(std::span<const std::size_t> sizes) {
  std::map<std::size_t, std::size_t> counts;
  for (auto s : sizes) {
    if (s == 0) throw Error("community size must be at least 1");
    ++counts[s];
  }
  SizeMultiset m;
  for (auto [s, c] : counts) {
    m.entries_.emplace_back(s, c);
    m.total_ += c;
  }
  return m;
}

SizeMultiset SizeMultiset::from_counts(
    std::span<const std::pair<std::size_t, std::size_t>> size_counts) {
  std::map<std::size_t, std::size_t> counts;
  for (auto [s, c] : size_counts) {
    if (s == 0) throw Error("community size must be at least 1");
    if (c > 0) counts[s] += c;
  }
  SizeMultiset m;
  for (auto [s, c] : counts) {
    m.entries_.emplace_back(s, c);
    m.total_ += c;
  }
  return m;
}

std::vector<double> SizeMultiset::expanded() const {
  std::vector<double> out;
  out.reserve(total_);
  for (auto [s, c] : entries_) out.insert(out.end(), c, static_cast<double>(s));
  return out;
}

SizeMultiset size_multiset(std::span<const Partition> partitions) {
  if (partitions.empty()) throw Error("size multiset needs at least one partition");
  std::vector<std::size_t> all;
  for (const auto& p : partitions) {
    const auto s = p.sizes();
    all.insert(all.end(), s.begin(), s.end());
  }
  return SizeMultiset::from_sizes(all);
}

FittingResult classify_fitting(std::span<const FitPoint> points) {
  if (points.size() < 3) throw Error("fitting classification needs at least three (n, k) pairs");
  double lo = points.front().nodes;
  double hi = lo;
  for (const auto& p : points) {
    if (!(p.nodes > 0)) throw Error("graph size must be positive");
    lo = std::min(lo, p.nodes);
    hi = std::max(hi, p.nodes);
  }
  if (hi < 10.0 * lo) throw Error("fitting classification needs graph sizes spanning a decade");

  std::vector<double> ns;
  for (const auto& p : points) ns.push_back(p.nodes);
  std::sort(ns.begin(), ns.end());
  const std::size_t h = ns.size() / 2;
  const double median = ns.size() % 2 ? ns[h] : 0.5 * (ns[h - 1] + ns[h]);

  FittingResult r{FittingVerdict::Under, {}, 0, 0};
  for (const auto& p : points) {
    const double root = std::sqrt(p.nodes);
    r.ratios.push_back(p.communities / root);
    if (p.nodes > median) {
      ++r.upper_half;
      if (p.communities > root) ++r.upper_half_over;
    }
  }
  if (2 * r.upper_half_over > r.upper_half) r.verdict = FittingVerdict::Over;
  return r;
}

std::string_view to_string(FittingVerdict v) { return v == FittingVerdict::Over ? "Over" : "Under"; }

Partition read_partition(const Graph& g, std::istream& in) {
  std::vector<std::string> community(g.node_count());
  std::vector<bool> seen(g.node_count(), false);
  std::vector<std::string> unknown;
  std::vector<std::string> conflicts;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 2)
      throw ParseError("expected 'node community', found " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    const auto node = g.find(tokens[0]);
    if (!node) {
      unknown.emplace_back(tokens[0]);
      continue;
    }
    if (seen[*node]) {
      if (community[*node] != tokens[1]) conflicts.emplace_back(tokens[0]);
      continue;
    }
    seen[*node] = true;
    community[*node] = std::string(tokens[1]);
  }

  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size() && i < 20; ++i) out += (i ? ", " : "") + xs[i];
    if (xs.size() > 20) out += ", ... (" + std::to_string(xs.size()) + " total)";
    return out;
  };
  if (!unknown.empty()) throw Error("partition names unknown nodes: " + join(unknown));
  if (!conflicts.empty())
    throw Error("partition assigns nodes to conflicting communities: " + join(conflicts));
  std::vector<std::string> missing;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!seen[v]) missing.push_back(g.label(v));
  if (!missing.empty()) throw Error("partition is missing nodes: " + join(missing));

  return Partition::from_labels(community);
}

Partition read_partition(const Graph& g, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open partition file '" + file.string() + "'");
  return read_partition(g, in);
}

void write_partition(const Graph& g, const Partition& p, std::ostream& out) {
  if (p.node_count() != g.node_count()) throw Error("partition does not match graph");
  for (NodeId v = 0; v < g.node_count(); ++v) out << g.label(v) << ' ' << p.community_of(v) << '\n';
}

std::string size_csv_header() { return "method,graph,size,count"; }

void write_size_rows(std::ostream& out, std::string_view method, std::string_view graph,
                     const SizeMultiset& sizes) {
  for (auto [s, c] : sizes.entries())
    out << detail::csv_field(method) << ',' << detail::csv_field(graph) << ',' << s << ',' << c
        << '\n';
}

}  // namespace commprof
