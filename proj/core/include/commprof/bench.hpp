#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/graph.hpp"
#include "commprof/partition.hpp"

namespace commprof {

enum class TimingStatus { Ok, Timeout, Failed };

std::string_view to_string(TimingStatus s);

struct TimingRecord {
  std::string method;
  std::string graph;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  /// Wall-clock seconds of the detection call, one per completed repeat.
  std::vector<double> seconds;
  TimingStatus status = TimingStatus::Ok;
  std::string message;
  /// Output of the first repeat, kept for scoring.
  std::optional<Partition> partition;

  double mean_seconds() const;
};

struct BenchConfig {
  std::size_t repeats = 5;
  double timeout_seconds = 14400.0;
  std::size_t workers = 1;
};

/// Runs the detector `repeats` times with the same seed, each repeat under
/// its own deadline. Graph loading is not timed. Throws Error when repeats
/// is 0 or the timeout is not positive; detector failures and timeouts are
/// reported through the record status.
TimingRecord time_method(const DetectorSpec& spec, const Graph& g, std::string graph_name,
                         std::size_t repeats = 5, double timeout_seconds = 14400.0);

struct BenchTask {
  DetectorSpec spec;
  const Graph* graph = nullptr;
  std::string graph_name;
};

/// Runs every task on a bounded pool of workers. Repeats of one task stay on
/// one worker. Records come back in task order.
std::vector<TimingRecord> run_bench(std::span<const BenchTask> tasks, const BenchConfig& config);

std::string timing_csv_header();
void write_timing_rows(std::ostream& out, std::span<const TimingRecord> records);

/// Local regression fit of log time against log size.
struct ScalingFit {
  std::string method;
  std::string predictor;
  std::vector<double> grid;
  std::vector<double> estimate;
  std::vector<double> lower;
  std::vector<double> upper;

  /// Mean slope of the fitted curve across the grid.
  double slope() const;
};

/// Tricube-weighted local linear regression. `span` is the fraction of points
/// in each neighbourhood. The 95% band is estimate +/- 1.96 sigma_local
/// sqrt(sum l_i^2), where sigma_local is the kernel-weighted RMS residual.
/// Needs at least five points.
ScalingFit loess_fit(std::span<const double> x, std::span<const double> y, double span = 0.75,
                     std::size_t grid_points = 50);

/// Fitted value of the local regression at x0 (same weighting as loess_fit).
double loess_at(std::span<const double> x, std::span<const double> y, double span, double x0);

enum class Predictor { Nodes, Edges };

/// Per-method fit of (log predictor, log mean seconds) over ok records.
/// Methods with fewer than five usable records are skipped.
std::vector<ScalingFit> fit_scaling(std::span<const TimingRecord> records, Predictor predictor,
                                    double span = 0.75);

void write_fit_json(std::ostream& out, std::span<const ScalingFit> fits);

struct MethodTiming {
  std::string method;
  double mean = 0.0;    // mean over graphs of the per-graph mean time
  double median = 0.0;  // median over graphs of the per-graph mean time
  std::size_t ok_graphs = 0;
  bool had_timeout = false;
  bool had_failure = false;
};

struct Rankings {
  std::vector<MethodTiming> by_mean;
  std::vector<MethodTiming> by_median;
  /// Methods with no ok record.
  std::vector<std::string> excluded;
};

/// Ties are broken by method name. Throws Error on empty input.
Rankings rank_methods(std::span<const TimingRecord> records);

void write_rankings_csv(std::ostream& out, const Rankings& rankings);

}  // namespace commprof
