#include "commprof/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <limits>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "commprof/coperformance.hpp"
#include "commprof/error.hpp"
#include "commprof/graph.hpp"
#include "commprof/size_similarity.hpp"
#include "commprof/validation.hpp"
#include "text.hpp"

#ifndef COMMPROF_VERSION
#define COMMPROF_VERSION "unknown"
#endif

namespace commprof {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view library_version() { return COMMPROF_VERSION; }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) { return fmt::format("{:016x}", h); }

namespace {

[[noreturn]] void bad_manifest(const std::string& what) { throw ParseError("manifest: " + what, 0); }

template <typename T>
T field_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad_manifest(std::string("field '") + key + "' has the wrong type");
  }
}

bool is_stochastic(Method m) { return m == Method::Louvain || m == Method::LPA; }

DetectorSpec parse_method_entry(const json& entry, std::optional<std::uint64_t> default_seed) {
  DetectorSpec spec;
  std::string method;
  if (entry.is_string()) {
    method = entry.get<std::string>();
  } else if (entry.is_object() && entry.contains("method") && entry.at("method").is_string()) {
    method = entry.at("method").get<std::string>();
    spec.name = field_or<std::string>(entry, "name", "");
    spec.walk_length = field_or<std::size_t>(entry, "walk_length", spec.walk_length);
    spec.max_iterations = field_or<std::size_t>(entry, "max_iterations", spec.max_iterations);
    spec.adopt_singletons = field_or<bool>(entry, "adopt_singletons", spec.adopt_singletons);
    if (entry.contains("seed")) default_seed = field_or<std::uint64_t>(entry, "seed", 0);
  } else {
    bad_manifest("each method must be a name or an object with a 'method' field");
  }
  const auto parsed = parse_method(method);
  if (!parsed || *parsed == Method::External) bad_manifest("unknown method '" + method + "'");
  spec.method = *parsed;
  if (default_seed) {
    spec.seed = *default_seed;
  } else if (is_stochastic(spec.method)) {
    bad_manifest("method '" + method + "' needs an explicit seed");
  }
  return spec;
}

std::string safe_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

// Writes one artifact; CSV files start with a comment carrying the manifest hash.
class Artifacts {
 public:
  Artifacts(fs::path root, std::string hash) : root_(std::move(root)), hash_(std::move(hash)) {}

  std::ofstream open(const fs::path& relative, bool csv) {
    const auto path = root_ / relative;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    if (csv) out << "# manifest " << hash_ << '\n';
    written_.push_back(path);
    return out;
  }

  void write_json(const fs::path& relative, json doc) {
    doc["manifest_hash"] = hash_;
    auto out = open(relative, false);
    out << doc.dump(2) << '\n';
  }

  const std::string& hash() const { return hash_; }
  std::vector<fs::path> take() { return std::move(written_); }

 private:
  fs::path root_;
  std::string hash_;
  std::vector<fs::path> written_;
};

json matrix_json(std::span<const std::string> methods, std::span<const double> values, Linkage linkage) {
  const auto ordered = hcluster_order(values, methods.size(), linkage);
  json merges = json::array();
  for (const auto& m : ordered.merges) merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}});
  json order = json::array();
  for (auto i : ordered.order) order.push_back(methods[i]);
  json rows = json::array();
  for (std::size_t i = 0; i < methods.size(); ++i)
    rows.push_back(std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(i * methods.size()),
                                       values.begin() + static_cast<std::ptrdiff_t>((i + 1) * methods.size())));
  return {{"methods", methods}, {"matrix", rows}, {"order", order}, {"merges", merges}, {"linkage", to_string(linkage)}};
}

struct Cell {
  std::optional<Partition> partition;
};

}  // namespace

RunManifest parse_manifest(std::string_view text, const fs::path& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) bad_manifest("top level must be an object");

  RunManifest m;
  m.hash = fnv1a(doc.dump());
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() || base.empty() ? fs::path(p) : base / p; };

  if (!doc.contains("graphs") || !doc.at("graphs").is_array() || doc.at("graphs").empty())
    bad_manifest("'graphs' must be a non-empty array");
  std::set<std::string> graph_names;
  for (const auto& g : doc.at("graphs")) {
    GraphEntry entry;
    if (g.is_string()) {
      entry.path = resolve(g.get<std::string>());
      entry.name = fs::path(g.get<std::string>()).stem().string();
    } else if (g.is_object() && g.contains("path")) {
      entry.path = resolve(field_or<std::string>(g, "path", ""));
      entry.name = field_or<std::string>(g, "name", entry.path.stem().string());
    } else {
      bad_manifest("each graph must be a path or an object with a 'path' field");
    }
    if (!graph_names.insert(entry.name).second) bad_manifest("duplicate graph name '" + entry.name + "'");
    m.graphs.push_back(std::move(entry));
  }

  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) seed = field_or<std::uint64_t>(doc, "seed", 0);
  std::set<std::string> method_names;
  if (doc.contains("methods")) {
    if (!doc.at("methods").is_array()) bad_manifest("'methods' must be an array");
    for (const auto& entry : doc.at("methods")) {
      auto spec = parse_method_entry(entry, seed);
      if (!method_names.insert(spec.display_name()).second)
        bad_manifest("duplicate method name '" + spec.display_name() + "'; give each a distinct 'name'");
      m.methods.push_back(std::move(spec));
    }
  }
  if (doc.contains("external")) {
    for (const auto& e : doc.at("external")) {
      if (!e.is_object() || !e.contains("name") || !e.contains("graph") || !e.contains("path"))
        bad_manifest("each external partition needs 'name', 'graph' and 'path'");
      ExternalEntry entry{field_or<std::string>(e, "name", ""), field_or<std::string>(e, "graph", ""),
                          resolve(field_or<std::string>(e, "path", ""))};
      if (!graph_names.contains(entry.graph)) bad_manifest("external partition refers to unknown graph '" + entry.graph + "'");
      if (method_names.contains(entry.name) &&
          std::none_of(m.external.begin(), m.external.end(), [&](const auto& x) { return x.name == entry.name; }))
        bad_manifest("external partition name '" + entry.name + "' clashes with a method");
      m.external.push_back(std::move(entry));
    }
  }
  if (m.methods.empty() && m.external.empty()) bad_manifest("at least one method or external partition is required");

  if (doc.contains("metrics")) {
    for (const auto& name : doc.at("metrics")) {
      if (!name.is_string()) bad_manifest("metric names must be strings");
      const auto metric = parse_quality_metric(name.get<std::string>());
      if (!metric) bad_manifest("unknown metric '" + name.get<std::string>() + "'");
      m.metrics.push_back(*metric);
    }
  } else {
    m.metrics.assign(std::begin(kAllQualityMetrics), std::end(kAllQualityMetrics));
  }

  if (doc.contains("stages")) {
    const auto& s = doc.at("stages");
    m.validation = field_or<bool>(s, "validation", m.validation);
    m.size_similarity = field_or<bool>(s, "size_similarity", m.size_similarity);
    m.co_performance = field_or<bool>(s, "co_performance", m.co_performance);
    m.bench = field_or<bool>(s, "bench", m.bench);
  }
  if (doc.contains("bench")) {
    const auto& b = doc.at("bench");
    m.bench_config.repeats = field_or<std::size_t>(b, "repeats", m.bench_config.repeats);
    m.bench_config.timeout_seconds = field_or<double>(b, "timeout", m.bench_config.timeout_seconds);
    m.bench_config.workers = field_or<std::size_t>(b, "workers", m.bench_config.workers);
    m.loess_span = field_or<double>(b, "span", m.loess_span);
  }
  if (m.bench_config.repeats == 0) bad_manifest("bench repeats must be at least 1");
  if (!(m.bench_config.timeout_seconds > 0.0)) bad_manifest("bench timeout must be positive");

  const auto linkage = field_or<std::string>(doc, "linkage", "ward");
  if (linkage == "ward") m.linkage = Linkage::Ward;
  else if (linkage == "average") m.linkage = Linkage::Average;
  else bad_manifest("linkage must be 'ward' or 'average'");
  m.log_sizes = field_or<bool>(doc, "log_sizes", false);
  m.directed_input = field_or<bool>(doc, "directed", false);
  m.output = resolve(field_or<std::string>(doc, "output", "commprof-out"));
  return m;
}

RunManifest load_manifest(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open manifest " + file.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_manifest(text.str(), file.parent_path());
}

PipelineResult run_pipeline(const RunManifest& manifest, const PipelineOptions& options) {
  using detail::csv_field;
  using detail::format_real;
  const std::string hash = hex_hash(manifest.hash);

  const auto provenance_path = manifest.output / "provenance.json";
  if (fs::exists(provenance_path) && !options.force) {
    std::ifstream in(provenance_path);
    std::string previous;
    try {
      previous = json::parse(in).value("manifest_hash", "");
    } catch (const json::exception&) {
    }
    if (previous != hash)
      throw Error("output directory " + manifest.output.string() + " holds artifacts of manifest " +
                  (previous.empty() ? "<unknown>" : previous) + "; use a new directory or force");
  }
  fs::create_directories(manifest.output);
  Artifacts artifacts(manifest.output, hash);
  PipelineResult result;

  // Load graphs.
  const std::size_t graph_count = manifest.graphs.size();
  std::vector<std::optional<Graph>> graphs(graph_count);
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    try {
      graphs[gi] = load_edge_list(manifest.graphs[gi].path, manifest.directed_input);
    } catch (const std::exception& e) {
      result.errors.push_back({"load", manifest.graphs[gi].name, "", e.what()});
    }
  }

  // Column order: detectors, then external partitions by first appearance.
  std::vector<std::string> methods;
  for (const auto& spec : manifest.methods) methods.push_back(spec.display_name());
  for (const auto& e : manifest.external)
    if (std::find(methods.begin(), methods.end(), e.name) == methods.end()) methods.push_back(e.name);
  const std::size_t method_count = methods.size();
  std::vector<Cell> cells(graph_count * method_count);
  auto cell = [&](std::size_t gi, std::size_t mi) -> Cell& { return cells[gi * method_count + mi]; };
  auto method_index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(methods.begin(), methods.end(), name) - methods.begin());
  };

  // Detection, timed through the worker pool.
  std::vector<BenchTask> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> task_cell;
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    if (!graphs[gi]) continue;
    for (std::size_t mi = 0; mi < manifest.methods.size(); ++mi) {
      tasks.push_back({manifest.methods[mi], &*graphs[gi], manifest.graphs[gi].name});
      task_cell.emplace_back(gi, mi);
    }
  }
  BenchConfig config = manifest.bench_config;
  if (!manifest.bench) config.repeats = 1;
  auto records = run_bench(tasks, config);
  for (std::size_t t = 0; t < records.size(); ++t) {
    auto& record = records[t];
    const auto [gi, mi] = task_cell[t];
    if (record.status == TimingStatus::Ok) {
      cell(gi, mi).partition = std::move(record.partition);
      record.partition.reset();
    } else {
      result.errors.push_back({"detect", record.graph, record.method,
                               std::string(to_string(record.status)) + ": " + record.message});
    }
  }

  for (const auto& e : manifest.external) {
    const std::size_t gi = static_cast<std::size_t>(
        std::find_if(manifest.graphs.begin(), manifest.graphs.end(), [&](const auto& g) { return g.name == e.graph; }) -
        manifest.graphs.begin());
    if (!graphs[gi]) continue;
    try {
      cell(gi, method_index(e.name)).partition = load_external_partition(*graphs[gi], e.path);
    } catch (const std::exception& ex) {
      result.errors.push_back({"load-partition", e.graph, e.name, ex.what()});
    }
  }

  // Cells: every (graph, detector) pair plus every external entry.
  result.cells = graph_count * manifest.methods.size() + manifest.external.size();
  for (const auto& c : cells) result.cells_ok += c.partition ? 1 : 0;

  // Partitions and graph statistics.
  for (std::size_t gi = 0; gi < graph_count; ++gi) {
    for (std::size_t mi = 0; mi < method_count; ++mi) {
      const auto& c = cell(gi, mi);
      if (!c.partition) continue;
      auto out = artifacts.open(fs::path("partitions") / safe_name(manifest.graphs[gi].name) /
                                    (safe_name(methods[mi]) + ".txt"),
                                false);
      out << "# manifest " << hash << '\n';
      write_partition(*graphs[gi], *c.partition, out);
    }
  }
  {
    auto out = artifacts.open("graph_stats.csv", true);
    out << graph_stats_csv_header() << '\n';
    for (std::size_t gi = 0; gi < graph_count; ++gi) {
      if (!graphs[gi]) continue;
      try {
        out << graph_stats_csv_row(manifest.graphs[gi].name, graph_summary(*graphs[gi])) << '\n';
      } catch (const std::exception& e) {
        result.errors.push_back({"graph-stats", manifest.graphs[gi].name, "", e.what()});
      }
    }
  }

  // Quality scores: score[metric][method][graph].
  const std::size_t metric_count = manifest.metrics.size();
  std::vector<std::vector<std::vector<std::optional<double>>>> score(
      metric_count, std::vector<std::vector<std::optional<double>>>(method_count,
                                                                    std::vector<std::optional<double>>(graph_count)));
  {
    auto csv = artifacts.open("scores.csv", true);
    csv << "graph,method,metric,value,error\n";
    json rows = json::array();
    for (std::size_t gi = 0; gi < graph_count; ++gi) {
      for (std::size_t mi = 0; mi < method_count; ++mi) {
        const auto& c = cell(gi, mi);
        if (!c.partition) continue;
        const auto scores = score_partition(*graphs[gi], *c.partition, manifest.metrics);
        for (std::size_t k = 0; k < metric_count; ++k) {
          const auto& s = scores[k];
          if (s.ok()) score[k][mi][gi] = s.value;
          csv << csv_field(manifest.graphs[gi].name) << ',' << csv_field(methods[mi]) << ',' << to_string(s.metric)
              << ',' << (s.ok() ? format_real(s.value) : "") << ',' << csv_field(s.error) << '\n';
          rows.push_back({{"graph", manifest.graphs[gi].name},
                          {"method", methods[mi]},
                          {"metric", to_string(s.metric)},
                          {"value", s.ok() ? json(s.value) : json(nullptr)},
                          {"error", s.error}});
        }
      }
    }
    artifacts.write_json("scores.json", {{"scores", rows}});
  }

  // Community sizes, pooled per method for the size-similarity stage.
  std::vector<std::vector<std::size_t>> pooled(method_count);
  {
    auto out = artifacts.open("community_sizes.csv", true);
    out << size_csv_header() << '\n';
    for (std::size_t gi = 0; gi < graph_count; ++gi) {
      for (std::size_t mi = 0; mi < method_count; ++mi) {
        const auto& c = cell(gi, mi);
        if (!c.partition) continue;
        const auto sizes = c.partition->sizes();
        write_size_rows(out, methods[mi], manifest.graphs[gi].name, SizeMultiset::from_sizes(sizes));
        pooled[mi].insert(pooled[mi].end(), sizes.begin(), sizes.end());
      }
    }
  }

  if (manifest.validation && method_count >= 2) {
    constexpr ValidationMetric kClustered[] = {ValidationMetric::RI, ValidationMetric::ARI, ValidationMetric::NMI,
                                               ValidationMetric::AMI};
    constexpr ValidationMetric kAll[] = {ValidationMetric::RI, ValidationMetric::ARI, ValidationMetric::NMI,
                                         ValidationMetric::AMI, ValidationMetric::NVI, ValidationMetric::VI};
    std::map<ValidationMetric, std::vector<double>> sum;
    std::map<ValidationMetric, std::vector<std::size_t>> count;
    for (auto v : kClustered) {
      sum[v].assign(method_count * method_count, 0.0);
      count[v].assign(method_count * method_count, 0);
    }
    auto csv = artifacts.open("validation.csv", true);
    csv << "graph,methodA,methodB,metric,value,error\n";
    for (std::size_t gi = 0; gi < graph_count; ++gi) {
      for (std::size_t a = 0; a < method_count; ++a) {
        for (std::size_t b = a + 1; b < method_count; ++b) {
          const auto& pa = cell(gi, a).partition;
          const auto& pb = cell(gi, b).partition;
          if (!pa || !pb) continue;
          const ContingencyTable t(*pa, *pb);
          for (auto v : kAll) {
            std::optional<double> value;
            std::string error;
            try {
              switch (v) {
                case ValidationMetric::RI: value = rand_index(t); break;
                case ValidationMetric::ARI: value = adjusted_rand(t); break;
                case ValidationMetric::NMI: value = nmi(t); break;
                case ValidationMetric::AMI: value = ami(t); break;
                case ValidationMetric::NVI: value = nvi(t); break;
                case ValidationMetric::VI: value = variation_of_information(t); break;
              }
            } catch (const DomainError& e) {
              error = e.what();
            }
            csv << csv_field(manifest.graphs[gi].name) << ',' << csv_field(methods[a]) << ',' << csv_field(methods[b])
                << ',' << to_string(v) << ',' << (value ? format_real(*value) : "") << ',' << csv_field(error) << '\n';
            if (value && sum.contains(v)) {
              for (auto [i, j] : {std::pair{a, b}, std::pair{b, a}}) {
                sum[v][i * method_count + j] += *value;
                ++count[v][i * method_count + j];
              }
            }
          }
        }
      }
    }
    json doc;
    for (auto v : kClustered) {
      std::vector<double> avg(method_count * method_count, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < method_count; ++i) {
        avg[i * method_count + i] = 1.0;
        for (std::size_t j = 0; j < method_count; ++j)
          if (i != j && count[v][i * method_count + j] > 0)
            avg[i * method_count + j] = sum[v][i * method_count + j] /
                                        static_cast<double>(count[v][i * method_count + j]);
      }
      doc[std::string(to_string(v))] = matrix_json(methods, avg, manifest.linkage);
    }
    artifacts.write_json("validation_matrix.json", doc);
  }

  if (manifest.size_similarity) {
    std::vector<NamedSizes> named;
    for (std::size_t mi = 0; mi < method_count; ++mi)
      if (!pooled[mi].empty()) named.push_back({methods[mi], SizeMultiset::from_sizes(pooled[mi])});
    if (named.size() >= 2) {
      const KdeOptions kde{manifest.log_sizes, 1024};
      const auto pairs = pairwise_size_similarity(named, kde);
      const std::size_t k = named.size();
      std::vector<double> s_kde(k * k, 1.0);
      std::vector<double> s_exact(k * k, 0.5);
      json ks = json::array();
      std::size_t p = 0;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j, ++p) {
          const auto& s = pairs[p];
          s_kde[i * k + j] = s_kde[j * k + i] = s.s_kde;
          s_exact[i * k + j] = s_exact[j * k + i] = s.s_exact;
          ks.push_back({{"methodA", s.a}, {"methodB", s.b}, {"distance", s.ks.distance}, {"p", s.ks.p_value}});
          if (!s.error.empty()) result.errors.push_back({"size-similarity", "", s.a + "|" + s.b, s.error});
        }
      }
      std::vector<std::string> names;
      for (const auto& n : named) names.push_back(n.name);
      json doc = matrix_json(names, s_kde, manifest.linkage);
      doc["exact"] = json::array();
      for (std::size_t i = 0; i < k; ++i)
        doc["exact"].push_back(std::vector<double>(s_exact.begin() + static_cast<std::ptrdiff_t>(i * k),
                                                   s_exact.begin() + static_cast<std::ptrdiff_t>((i + 1) * k)));
      doc["ks"] = ks;
      doc["log_sizes"] = manifest.log_sizes;
      artifacts.write_json("size_similarity.json", doc);
    }
  }

  if (manifest.co_performance && method_count >= 2 && graph_count >= 3) {
    auto csv = artifacts.open("co_performance.csv", true);
    csv << co_performance_csv_header() << '\n';
    json doc;
    for (std::size_t k = 0; k < metric_count; ++k) {
      std::vector<QualityVector> vectors;
      for (std::size_t mi = 0; mi < method_count; ++mi)
        vectors.push_back({methods[mi], std::string(to_string(manifest.metrics[k])), score[k][mi]});
      const auto matrix = co_performance_matrix(vectors);
      write_co_performance_csv(csv, matrix, false);
      json entry = matrix_json(methods, matrix.r_matrix(), manifest.linkage);
      json p = json::array();
      json n = json::array();
      json diagnostics = json::array();
      for (std::size_t i = 0; i < method_count; ++i) {
        json prow = json::array();
        json nrow = json::array();
        for (std::size_t j = 0; j < method_count; ++j) {
          const auto& c = matrix.at(i, j);
          prow.push_back(c.value ? json(c.value->p) : json(nullptr));
          nrow.push_back(c.value ? c.value->n : 0);
          if (!c.value && i <= j)
            diagnostics.push_back({{"methodA", methods[i]}, {"methodB", methods[j]}, {"message", c.diagnostic}});
        }
        p.push_back(prow);
        n.push_back(nrow);
      }
      entry["p"] = p;
      entry["n"] = n;
      entry["absent"] = diagnostics;
      doc[std::string(to_string(manifest.metrics[k]))] = entry;
    }
    artifacts.write_json("co_performance.json", doc);
  }

  if (manifest.bench && !records.empty()) {
    {
      auto out = artifacts.open("timings.csv", true);
      out << timing_csv_header() << '\n';
      write_timing_rows(out, records);
    }
    {
      auto fits = fit_scaling(records, Predictor::Nodes, manifest.loess_span);
      auto by_m = fit_scaling(records, Predictor::Edges, manifest.loess_span);
      fits.insert(fits.end(), by_m.begin(), by_m.end());
      std::ostringstream text;
      write_fit_json(text, fits);
      artifacts.write_json("scaling_fit.json", {{"fits", json::parse(text.str())}, {"timing", "detection only"}});
    }
    try {
      const auto rankings = rank_methods(records);
      auto out = artifacts.open("rankings.csv", true);
      write_rankings_csv(out, rankings);
    } catch (const Error& e) {
      result.errors.push_back({"rank", "", "", e.what()});
    }
  }

  {
    auto out = artifacts.open("errors.csv", true);
    out << "stage,graph,method,message\n";
    for (const auto& e : result.errors)
      out << csv_field(e.stage) << ',' << csv_field(e.graph) << ',' << csv_field(e.method) << ','
          << csv_field(e.message) << '\n';
  }

  json seeds = json::object();
  json parameters = json::object();
  for (const auto& spec : manifest.methods) {
    seeds[spec.display_name()] = spec.seed;
    json p = {{"method", to_string(spec.method)}};
    switch (spec.method) {
      case Method::Louvain: p["seed"] = spec.seed; break;
      case Method::LPA:
        p["seed"] = spec.seed;
        p["max_iterations"] = spec.max_iterations;
        break;
      case Method::Walktrap:
        p["walk_length"] = spec.walk_length;
        p["adopt_singletons"] = spec.adopt_singletons;
        break;
      default: break;
    }
    parameters[spec.display_name()] = std::move(p);
  }
  json files = json::array();
  for (const auto& g : manifest.graphs) files.push_back({{"name", g.name}, {"path", g.path.string()}});
  const auto now = std::chrono::system_clock::now();
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  result.artifacts = artifacts.take();
  json listed = json::array();
  for (const auto& a : result.artifacts) listed.push_back(fs::relative(a, manifest.output).generic_string());
  json provenance = {{"version", library_version()},
                     {"seeds", seeds},
                     {"parameters", parameters},
                     {"graphs", files},
                     {"cells", result.cells},
                     {"cells_ok", result.cells_ok},
                     {"artifacts", listed},
                     {"created_unix", seconds}};
  artifacts.write_json("provenance.json", provenance);
  auto last = artifacts.take();
  result.artifacts.insert(result.artifacts.end(), last.begin(), last.end());
  return result;
}

}  // namespace commprof
