#include "commprof/detectors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "commprof/error.hpp"
#include "detail.hpp"

namespace commprof {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::GN: return "GN";
    case Method::CNM: return "CNM";
    case Method::Louvain: return "Louvain";
    case Method::SN: return "SN";
    case Method::Walktrap: return "Walktrap";
    case Method::LPA: return "LPA";
    case Method::External: return "External";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "gn" || key == "girvan-newman") return Method::GN;
  if (key == "cnm" || key == "fastgreedy") return Method::CNM;
  if (key == "louvain") return Method::Louvain;
  if (key == "sn" || key == "leading-eigenvector") return Method::SN;
  if (key == "walktrap") return Method::Walktrap;
  if (key == "lpa" || key == "label-propagation") return Method::LPA;
  if (key == "external") return Method::External;
  return std::nullopt;
}

std::string DetectorSpec::display_name() const {
  return name.empty() ? std::string(to_string(method)) : name;
}

Partition MergeDendrogram::cut(std::size_t merges) const {
  if (merges > steps.size()) throw Error("dendrogram cut beyond the last merge");
  detail::DisjointSets sets(node_count);
  for (std::size_t i = 0; i < merges; ++i) sets.unite(steps[i].a, steps[i].b);
  std::vector<NodeId> root(node_count);
  for (NodeId v = 0; v < node_count; ++v) root[v] = sets.find(v);
  return Partition::from_labels(root);
}

std::size_t MergeDendrogram::best_cut() const {
  std::size_t best = 0;
  double best_q = initial_modularity;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].modularity > best_q + 1e-12) {
      best_q = steps[i].modularity;
      best = i + 1;
    }
  }
  return best;
}

Partition load_external_partition(const Graph& g, const std::filesystem::path& file) {
  return read_partition(g, file);
}

Partition detect(const Graph& g, const DetectorSpec& spec, const Deadline& deadline) {
  switch (spec.method) {
    case Method::GN: return detect_gn(g, deadline);
    case Method::CNM: return detect_cnm(g, deadline);
    case Method::Louvain: return detect_louvain(g, spec.seed, deadline);
    case Method::SN: return detect_leading_eigenvector(g, deadline);
    case Method::Walktrap: {
      if (spec.walk_length < 1) throw Error("walk length must be at least 1");
      return walktrap(g, {spec.walk_length, spec.adopt_singletons}, deadline).best;
    }
    case Method::LPA: return detect_lpa(g, spec.seed, spec.max_iterations, deadline);
    case Method::External: break;
  }
  throw Error("external partitions are loaded from files, not detected");
}

}  // namespace commprof
