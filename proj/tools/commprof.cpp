// commprof: community detection profiling from the command line.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commprof/bench.hpp"
#include "commprof/coperformance.hpp"
#include "commprof/detectors.hpp"
#include "commprof/error.hpp"
#include "commprof/graph.hpp"
#include "commprof/hcluster.hpp"
#include "commprof/partition.hpp"
#include "commprof/pipeline.hpp"
#include "commprof/quality.hpp"
#include "commprof/size_similarity.hpp"
#include "commprof/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace commprof;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadArguments = 2;

// Raised for input that the argument parser accepted but cannot be used.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::vector<std::string> graphs;
  std::vector<std::string> methods;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::size_t repeats = 5;
  double timeout = 14400.0;
  std::size_t workers = 1;
  std::string linkage = "ward";
  bool log_sizes = false;
  bool directed = false;
  std::size_t walk_length = 4;
};

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

// Data rows of a CSV artifact, keyed by header name; '#' lines are skipped.
std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = csv_split(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

// Output sink: a file named by --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw UsageError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Linkage parse_linkage(const std::string& s) { return s == "average" ? Linkage::Average : Linkage::Ward; }

DetectorSpec spec_for(const std::string& name, const Common& c) {
  const auto method = parse_method(name);
  if (!method || *method == Method::External) throw UsageError("unknown method '" + name + "'");
  DetectorSpec spec;
  spec.method = *method;
  if (c.seed) {
    spec.seed = *c.seed;
  } else if (spec.method == Method::Louvain || spec.method == Method::LPA) {
    throw UsageError(std::string(to_string(spec.method)) + " needs an explicit --seed");
  }
  spec.walk_length = c.walk_length;
  return spec;
}

Graph load_graph(const std::string& path, bool directed) {
  if (!fs::exists(path)) throw UsageError("graph file not found: " + path);
  return load_edge_list(fs::path(path), directed);
}

std::string graph_name(const std::string& path) { return fs::path(path).stem().string(); }

Deadline deadline_for(double seconds) { return Deadline::after(std::chrono::duration<double>(seconds)); }

std::vector<QualityMetric> parse_metrics(const std::vector<std::string>& names) {
  std::vector<QualityMetric> out;
  for (const auto& n : names) {
    const auto m = parse_quality_metric(n);
    if (!m) throw UsageError("unknown metric '" + n + "'");
    out.push_back(*m);
  }
  if (out.empty()) out.assign(std::begin(kAllQualityMetrics), std::end(kAllQualityMetrics));
  return out;
}

json ordered_json(const std::vector<std::string>& names, const std::vector<double>& matrix, Linkage linkage) {
  const auto ordered = hcluster_order(matrix, names.size(), linkage);
  json order = json::array();
  for (auto i : ordered.order) order.push_back(names[i]);
  json merges = json::array();
  for (const auto& m : ordered.merges) merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}});
  json rows = json::array();
  for (std::size_t i = 0; i < names.size(); ++i)
    rows.push_back(std::vector<double>(matrix.begin() + static_cast<std::ptrdiff_t>(i * names.size()),
                                       matrix.begin() + static_cast<std::ptrdiff_t>((i + 1) * names.size())));
  return {{"methods", names}, {"matrix", rows}, {"order", order}, {"merges", merges}, {"linkage", to_string(linkage)}};
}

// ---- subcommands ---------------------------------------------------------

int cmd_detect(const Common& c) {
  if (c.graphs.size() != 1 || c.methods.size() != 1) throw UsageError("detect needs one --graph and one --method");
  const auto spec = spec_for(c.methods.front(), c);
  const auto g = load_graph(c.graphs.front(), c.directed);
  const auto p = detect(g, spec, deadline_for(c.timeout));
  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "json") {
    json assignment = json::object();
    for (NodeId v = 0; v < g.node_count(); ++v) assignment[g.label(v)] = p.community_of(v);
    out << json{{"graph", graph_name(c.graphs.front())},
                {"method", spec.display_name()},
                {"seed", spec.seed},
                {"communities", p.community_count()},
                {"assignment", assignment}}
               .dump(2)
        << '\n';
  } else {
    write_partition(g, p, out);
  }
  return kOk;
}

int cmd_score(const Common& c, const std::vector<std::string>& partitions, const std::vector<std::string>& metric_names) {
  if (c.graphs.size() != 1) throw UsageError("score needs one --graph");
  if (partitions.empty() && c.methods.empty()) throw UsageError("score needs --partition or --method");
  const auto metrics = parse_metrics(metric_names);
  const auto g = load_graph(c.graphs.front(), c.directed);

  std::vector<std::pair<std::string, Partition>> inputs;
  for (const auto& file : partitions) inputs.emplace_back(graph_name(file), load_external_partition(g, file));
  for (const auto& m : c.methods) {
    const auto spec = spec_for(m, c);
    inputs.emplace_back(spec.display_name(), detect(g, spec, deadline_for(c.timeout)));
  }

  Sink sink(c.out);
  auto& out = sink.stream();
  json rows = json::array();
  if (c.format == "csv") out << "graph,method,metric,value,error\n";
  for (const auto& [name, p] : inputs) {
    for (const auto& s : score_partition(g, p, metrics)) {
      if (c.format == "csv") {
        out << csv_escape(graph_name(c.graphs.front())) << ',' << csv_escape(name) << ',' << to_string(s.metric) << ','
            << (s.ok() ? real(s.value) : "") << ',' << csv_escape(s.error) << '\n';
      } else {
        rows.push_back({{"graph", graph_name(c.graphs.front())},
                        {"method", name},
                        {"metric", to_string(s.metric)},
                        {"value", s.ok() ? json(s.value) : json(nullptr)},
                        {"error", s.error}});
      }
    }
  }
  if (c.format == "json") out << json{{"scores", rows}}.dump(2) << '\n';
  return kOk;
}

int cmd_validate(const Common& c, const std::vector<std::string>& partitions) {
  if (c.graphs.size() != 1) throw UsageError("validate needs one --graph");
  const auto g = load_graph(c.graphs.front(), c.directed);
  std::vector<std::pair<std::string, Partition>> inputs;
  for (const auto& file : partitions) inputs.emplace_back(graph_name(file), load_external_partition(g, file));
  for (const auto& m : c.methods) {
    const auto spec = spec_for(m, c);
    inputs.emplace_back(spec.display_name(), detect(g, spec, deadline_for(c.timeout)));
  }
  if (inputs.size() < 2) throw UsageError("validate needs at least two partitions (--partition or --method)");

  constexpr ValidationMetric kAll[] = {ValidationMetric::RI,  ValidationMetric::ARI, ValidationMetric::NMI,
                                       ValidationMetric::AMI, ValidationMetric::NVI, ValidationMetric::VI};
  Sink sink(c.out);
  auto& out = sink.stream();
  json rows = json::array();
  if (c.format == "csv") out << "graph,methodA,methodB,metric,value,error\n";
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    for (std::size_t b = a + 1; b < inputs.size(); ++b) {
      const ContingencyTable t(inputs[a].second, inputs[b].second);
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
        if (c.format == "csv") {
          out << csv_escape(graph_name(c.graphs.front())) << ',' << csv_escape(inputs[a].first) << ','
              << csv_escape(inputs[b].first) << ',' << to_string(v) << ',' << (value ? real(*value) : "") << ','
              << csv_escape(error) << '\n';
        } else {
          rows.push_back({{"methodA", inputs[a].first},
                          {"methodB", inputs[b].first},
                          {"metric", to_string(v)},
                          {"value", value ? json(*value) : json(nullptr)},
                          {"error", error}});
        }
      }
    }
  }
  if (c.format == "json") out << json{{"graph", graph_name(c.graphs.front())}, {"pairs", rows}}.dump(2) << '\n';
  return kOk;
}

int cmd_size_sim(const Common& c, const std::string& sizes_file) {
  // Pool sizes per method, from a community_sizes.csv artifact or fresh runs.
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> pooled;
  std::vector<std::string> order;
  auto note = [&](const std::string& m) {
    if (!pooled.contains(m)) order.push_back(m);
    return &pooled[m];
  };
  if (!sizes_file.empty()) {
    for (const auto& row : read_csv(sizes_file)) {
      try {
        note(row.at("method"))->emplace_back(std::stoul(row.at("size")), std::stoul(row.at("count")));
      } catch (const std::exception&) {
        throw UsageError("malformed row in " + sizes_file);
      }
    }
  } else {
    if (c.graphs.empty() || c.methods.size() < 2) throw UsageError("size-sim needs --sizes, or --graph with two or more --method");
    for (const auto& path : c.graphs) {
      const auto g = load_graph(path, c.directed);
      for (const auto& m : c.methods) {
        const auto spec = spec_for(m, c);
        const auto p = detect(g, spec, deadline_for(c.timeout));
        auto* bucket = note(spec.display_name());
        for (auto s : p.sizes()) bucket->emplace_back(s, 1);
      }
    }
  }
  std::vector<NamedSizes> named;
  for (const auto& m : order) named.push_back({m, SizeMultiset::from_counts(pooled[m])});
  if (named.size() < 2) throw UsageError("size-sim needs at least two methods");

  const auto pairs = pairwise_size_similarity(named, KdeOptions{c.log_sizes, 1024});
  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "csv") {
    out << "methodA,methodB,s_exact,s_kde,ks_distance,ks_p,error\n";
    for (const auto& s : pairs)
      out << csv_escape(s.a) << ',' << csv_escape(s.b) << ',' << real(s.s_exact) << ',' << real(s.s_kde) << ','
          << real(s.ks.distance) << ',' << real(s.ks.p_value) << ',' << csv_escape(s.error) << '\n';
    return kOk;
  }
  const std::size_t k = named.size();
  std::vector<double> matrix(k * k, 1.0);
  json ks = json::array();
  std::size_t p = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++p) {
      matrix[i * k + j] = matrix[j * k + i] = pairs[p].s_kde;
      ks.push_back({{"methodA", pairs[p].a},
                    {"methodB", pairs[p].b},
                    {"s_exact", pairs[p].s_exact},
                    {"distance", pairs[p].ks.distance},
                    {"p", pairs[p].ks.p_value}});
    }
  auto doc = ordered_json(order, matrix, parse_linkage(c.linkage));
  doc["ks"] = ks;
  doc["log_sizes"] = c.log_sizes;
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_co_perf(const Common& c, const std::string& scores_file, const std::string& metric_name) {
  if (scores_file.empty()) throw UsageError("co-perf needs --scores (a scores.csv artifact)");
  const auto metric = parse_quality_metric(metric_name);
  if (!metric) throw UsageError("unknown metric '" + metric_name + "'");
  const std::string key(to_string(*metric));

  std::vector<std::string> graphs;
  std::vector<std::string> methods;
  std::map<std::pair<std::string, std::string>, double> value;
  for (const auto& row : read_csv(scores_file)) {
    if (!row.contains("metric") || row.at("metric") != key) continue;
    const auto& g = row.at("graph");
    const auto& m = row.at("method");
    if (std::find(graphs.begin(), graphs.end(), g) == graphs.end()) graphs.push_back(g);
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    if (!row.at("value").empty()) value[{m, g}] = std::stod(row.at("value"));
  }
  std::vector<QualityVector> vectors;
  for (const auto& m : methods) {
    QualityVector v{m, key, {}};
    for (const auto& g : graphs) {
      auto it = value.find({m, g});
      v.scores.push_back(it == value.end() ? std::nullopt : std::optional<double>(it->second));
    }
    vectors.push_back(std::move(v));
  }
  if (vectors.size() < 2) throw UsageError("co-perf needs scores of at least two methods for " + key);
  const auto matrix = co_performance_matrix(vectors);

  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "csv") {
    write_co_performance_csv(out, matrix);
    return kOk;
  }
  auto doc = ordered_json(methods, matrix.r_matrix(), parse_linkage(c.linkage));
  json p = json::array();
  json n = json::array();
  for (std::size_t i = 0; i < methods.size(); ++i) {
    json prow = json::array();
    json nrow = json::array();
    for (std::size_t j = 0; j < methods.size(); ++j) {
      const auto& cell = matrix.at(i, j);
      prow.push_back(cell.value ? json(cell.value->p) : json(nullptr));
      nrow.push_back(cell.value ? cell.value->n : 0);
    }
    p.push_back(prow);
    n.push_back(nrow);
  }
  doc["metric"] = key;
  doc["p"] = p;
  doc["n"] = n;
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_bench(const Common& c) {
  if (c.graphs.empty() || c.methods.empty()) throw UsageError("bench needs --graph and --method");
  if (c.repeats == 0) throw UsageError("--repeats must be at least 1");
  if (!(c.timeout > 0.0)) throw UsageError("--timeout must be positive");
  std::vector<Graph> graphs;
  for (const auto& path : c.graphs) graphs.push_back(load_graph(path, c.directed));
  std::vector<BenchTask> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (const auto& m : c.methods) tasks.push_back({spec_for(m, c), &graphs[gi], graph_name(c.graphs[gi])});
  const auto records = run_bench(tasks, BenchConfig{c.repeats, c.timeout, c.workers});

  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "csv") {
    out << timing_csv_header() << '\n';
    write_timing_rows(out, records);
  } else {
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back({{"method", r.method},
                      {"graph", r.graph},
                      {"n", r.nodes},
                      {"m", r.edges},
                      {"seconds", r.seconds},
                      {"status", to_string(r.status)},
                      {"message", r.message}});
    json ranking = json::object();
    try {
      const auto ranks = rank_methods(records);
      for (const auto& [label, list] : {std::pair{"mean", &ranks.by_mean}, std::pair{"median", &ranks.by_median}}) {
        json names = json::array();
        for (const auto& t : *list) names.push_back(t.method);
        ranking[label] = names;
      }
      ranking["excluded"] = ranks.excluded;
    } catch (const Error&) {
    }
    std::ostringstream fits;
    write_fit_json(fits, fit_scaling(records, Predictor::Nodes));
    out << json{{"records", rows}, {"rankings", ranking}, {"fits", json::parse(fits.str())}}.dump(2) << '\n';
  }
  const bool any_ok = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.status == TimingStatus::Ok; });
  return any_ok ? kOk : kFailure;
}

int cmd_report(const Common& c, const std::string& matrix_file) {
  // Orders a matrix JSON ({"methods": [...], "matrix": [[...]]}) and emits a
  // tidy long-form table in dendrogram order.
  std::ifstream in(matrix_file);
  if (!in) throw UsageError("cannot open " + matrix_file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("not a JSON matrix: ") + e.what());
  }
  if (!doc.contains("methods") || !doc.contains("matrix")) throw UsageError("matrix JSON needs 'methods' and 'matrix'");
  const auto names = doc.at("methods").get<std::vector<std::string>>();
  std::vector<double> matrix;
  for (const auto& row : doc.at("matrix")) {
    if (row.size() != names.size()) throw UsageError("matrix is not square");
    for (const auto& x : row) matrix.push_back(x.is_number() ? x.get<double>() : std::nan(""));
  }
  if (matrix.size() != names.size() * names.size()) throw UsageError("matrix is not square");
  const auto ordered = hcluster_order(matrix, names.size(), parse_linkage(c.linkage));

  Sink sink(c.out);
  auto& out = sink.stream();
  if (c.format == "json") {
    out << ordered_json(names, matrix, parse_linkage(c.linkage)).dump(2) << '\n';
    return kOk;
  }
  out << "row,col,methodA,methodB,value\n";
  for (std::size_t r = 0; r < names.size(); ++r)
    for (std::size_t col = 0; col < names.size(); ++col) {
      const auto i = ordered.order[r];
      const auto j = ordered.order[col];
      out << r << ',' << col << ',' << csv_escape(names[i]) << ',' << csv_escape(names[j]) << ','
          << real(matrix[i * names.size() + j]) << '\n';
    }
  return kOk;
}

int cmd_run(const Common& c, const std::string& manifest_file, bool force) {
  if (manifest_file.empty()) throw UsageError("run needs --manifest");
  RunManifest manifest;
  try {
    manifest = load_manifest(manifest_file);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (!c.out.empty()) manifest.output = c.out;
  if (c.workers > 1) manifest.bench_config.workers = c.workers;
  const auto result = run_pipeline(manifest, PipelineOptions{force});
  std::cerr << "commprof: " << result.cells_ok << "/" << result.cells << " cells ok, " << result.errors.size()
            << " errors, artifacts in " << manifest.output.string() << " (manifest " << hex_hash(manifest.hash) << ")\n";
  return result.total_failure() ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commprof: detect, score and compare communities in undirected graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  Common common;
  auto add_common = [&](CLI::App* sub, bool graphs, bool methods) {
    if (graphs) sub->add_option("--graph", common.graphs, "Edge-list file (repeatable)");
    if (methods)
      sub->add_option("--method", common.methods, "GN, CNM, Louvain, SN, Walktrap or LPA (repeatable)");
    sub->add_option("--seed", common.seed, "Seed for Louvain and LPA");
    sub->add_option("--out", common.out, "Output file or directory (default: stdout)");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--timeout", common.timeout, "Per-run limit in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--workers", common.workers, "Worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--linkage", common.linkage, "Matrix ordering linkage")->check(CLI::IsMember({"ward", "average"}));
    sub->add_flag("--directed", common.directed, "Input lists directed arcs; they are symmetrised");
    sub->add_option("--walk-length", common.walk_length, "Walktrap walk length")->check(CLI::PositiveNumber);
  };

  auto* detect_cmd = app.add_subcommand("detect", "Detect communities on one graph");
  add_common(detect_cmd, true, true);

  std::vector<std::string> partitions;
  std::vector<std::string> metrics;
  auto* score_cmd = app.add_subcommand("score", "Score partitions with quality functions");
  add_common(score_cmd, true, true);
  score_cmd->add_option("--partition", partitions, "Partition file 'label community' (repeatable)");
  score_cmd->add_option("--metric", metrics, "Quality function (repeatable; default all)");

  auto* validate_cmd = app.add_subcommand("validate", "Compare partitions with RI, ARI, NMI, AMI, NVI and VI");
  add_common(validate_cmd, true, true);
  validate_cmd->add_option("--partition", partitions, "Partition file (repeatable)");

  std::string sizes_file;
  auto* size_cmd = app.add_subcommand("size-sim", "Community-size similarity between methods");
  add_common(size_cmd, true, true);
  size_cmd->add_option("--sizes", sizes_file, "community_sizes.csv artifact");
  size_cmd->add_flag("--log-sizes", common.log_sizes, "Estimate densities on log sizes");

  std::string scores_file;
  std::string metric_name = "QNG";
  auto* coperf_cmd = app.add_subcommand("co-perf", "Co-performance matrix from a scores CSV");
  add_common(coperf_cmd, false, false);
  coperf_cmd->add_option("--scores", scores_file, "scores.csv artifact")->required();
  coperf_cmd->add_option("--metric", metric_name, "Quality function");

  auto* bench_cmd = app.add_subcommand("bench", "Time detectors with repeats and timeouts");
  add_common(bench_cmd, true, true);
  bench_cmd->add_option("--repeats", common.repeats, "Repeats per (method, graph)");

  std::string matrix_file;
  auto* report_cmd = app.add_subcommand("report", "Order a similarity matrix by hierarchical clustering");
  add_common(report_cmd, false, false);
  report_cmd->add_option("--matrix", matrix_file, "Matrix JSON with 'methods' and 'matrix'")->required();

  std::string manifest_file;
  bool force = false;
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline from a JSON manifest");
  add_common(run_cmd, false, false);
  run_cmd->add_option("--manifest", manifest_file, "Run manifest")->required();
  run_cmd->add_flag("--force", force, "Replace artifacts from a different manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*detect_cmd) return cmd_detect(common);
    if (*score_cmd) return cmd_score(common, partitions, metrics);
    if (*validate_cmd) return cmd_validate(common, partitions);
    if (*size_cmd) return cmd_size_sim(common, sizes_file);
    if (*coperf_cmd) return cmd_co_perf(common, scores_file, metric_name);
    if (*bench_cmd) return cmd_bench(common);
    if (*report_cmd) return cmd_report(common, matrix_file);
    if (*run_cmd) return cmd_run(common, manifest_file, force);
  } catch (const UsageError& e) {
    std::cerr << "commprof: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "commprof: " << e.what() << '\n';
    return kFailure;
  }
  return kBadArguments;
}
