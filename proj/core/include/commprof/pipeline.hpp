#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "commprof/bench.hpp"
#include "commprof/detectors.hpp"
#include "commprof/hcluster.hpp"
#include "commprof/quality.hpp"

namespace commprof {

struct GraphEntry {
  std::string name;
  std::filesystem::path path;
};

/// A partition supplied from a file instead of a detector.
struct ExternalEntry {
  std::string name;
  std::string graph;
  std::filesystem::path path;
};

struct RunManifest {
  std::vector<GraphEntry> graphs;
  std::vector<DetectorSpec> methods;
  std::vector<ExternalEntry> external;
  std::vector<QualityMetric> metrics;
  bool validation = true;
  bool size_similarity = true;
  bool co_performance = true;
  bool bench = false;
  BenchConfig bench_config;
  double loess_span = 0.75;
  Linkage linkage = Linkage::Ward;
  bool log_sizes = false;
  bool directed_input = false;
  std::filesystem::path output;
  /// FNV-1a of the canonical manifest JSON.
  std::uint64_t hash = 0;
};

/// Parses a manifest. Relative graph and partition paths resolve against
/// `base`. Throws ParseError on malformed JSON or missing fields.
RunManifest parse_manifest(std::string_view json, const std::filesystem::path& base = {});
RunManifest load_manifest(const std::filesystem::path& file);

std::string_view library_version();

std::uint64_t fnv1a(std::string_view bytes);
std::string hex_hash(std::uint64_t h);

struct CellError {
  std::string stage;
  std::string graph;
  std::string method;
  std::string message;
};

struct PipelineResult {
  std::size_t cells = 0;
  std::size_t cells_ok = 0;
  std::vector<CellError> errors;
  std::vector<std::filesystem::path> artifacts;

  bool total_failure() const { return cells_ok == 0; }
};

struct PipelineOptions {
  /// Replace artifacts written under a different manifest hash.
  bool force = false;
};

/// Runs detect, score, validate, size similarity, co-performance and timing
/// as selected, writing every artifact under manifest.output. A failing
/// (method, graph) cell is recorded and the rest continue.
PipelineResult run_pipeline(const RunManifest& manifest, const PipelineOptions& options = {});

}  // namespace commprof
