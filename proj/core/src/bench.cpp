#include "commprof/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <thread>

#include "commprof/error.hpp"
#include "text.hpp"

namespace commprof {

std::string_view to_string(TimingStatus s) {
  switch (s) {
    case TimingStatus::Ok: return "ok";
    case TimingStatus::Timeout: return "timeout";
    case TimingStatus::Failed: return "failed";
  }
  return "?";
}

double TimingRecord::mean_seconds() const {
  if (seconds.empty()) return 0.0;
  return std::accumulate(seconds.begin(), seconds.end(), 0.0) / static_cast<double>(seconds.size());
}

TimingRecord time_method(const DetectorSpec& spec, const Graph& g, std::string graph_name,
                         std::size_t repeats, double timeout_seconds) {
  if (repeats == 0) throw Error("repeats must be at least 1");
  if (!(timeout_seconds > 0.0)) throw Error("timeout must be positive");

  TimingRecord record;
  record.method = spec.display_name();
  record.graph = std::move(graph_name);
  record.nodes = g.node_count();
  record.edges = g.edge_count();
  using Clock = std::chrono::steady_clock;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto deadline = Deadline::after(std::chrono::duration<double>(timeout_seconds));
    try {
      const auto start = Clock::now();
      Partition p = detect(g, spec, deadline);
      const std::chrono::duration<double> took = Clock::now() - start;
      // A run that finished between two deadline checks still overran.
      if (took.count() > timeout_seconds) throw TimeoutError("deadline exceeded");
      record.seconds.push_back(std::max(took.count(), 1e-9));
      if (!record.partition) record.partition = std::move(p);
    } catch (const TimeoutError&) {
      record.status = TimingStatus::Timeout;
      record.message = "repeat " + std::to_string(r) + " exceeded " + detail::format_real(timeout_seconds) + " s";
      record.partition.reset();
      return record;
    } catch (const std::exception& e) {
      record.status = TimingStatus::Failed;
      record.message = e.what();
      record.partition.reset();
      return record;
    }
  }
  return record;
}

std::vector<TimingRecord> run_bench(std::span<const BenchTask> tasks, const BenchConfig& config) {
  if (config.repeats == 0) throw Error("repeats must be at least 1");
  if (!(config.timeout_seconds > 0.0)) throw Error("timeout must be positive");
  std::vector<TimingRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& task = tasks[i];
      records[i] = time_method(task.spec, *task.graph, task.graph_name, config.repeats, config.timeout_seconds);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, std::max<std::size_t>(tasks.size(), 1));
  if (workers == 1) {
    work();
    return records;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  return records;
}

std::string timing_csv_header() { return "method,graph,n,m,repeat_index,seconds,status"; }

void write_timing_rows(std::ostream& out, std::span<const TimingRecord> records) {
  using detail::csv_field;
  for (const auto& r : records) {
    const auto prefix = csv_field(r.method) + ',' + csv_field(r.graph) + ',' + std::to_string(r.nodes) + ',' +
                        std::to_string(r.edges) + ',';
    for (std::size_t i = 0; i < r.seconds.size(); ++i)
      out << prefix << i << ',' << detail::format_real(r.seconds[i]) << ",ok\n";
    if (r.status != TimingStatus::Ok) out << prefix << r.seconds.size() << ",," << to_string(r.status) << '\n';
  }
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

Rankings rank_methods(std::span<const TimingRecord> records) {
  if (records.empty()) throw Error("no timing records to rank");
  struct Acc {
    std::vector<double> per_graph;
    bool timeout = false;
    bool failed = false;
  };
  std::map<std::string, Acc> by_method;
  for (const auto& r : records) {
    auto& acc = by_method[r.method];
    if (r.status == TimingStatus::Ok && !r.seconds.empty()) acc.per_graph.push_back(r.mean_seconds());
    acc.timeout = acc.timeout || r.status == TimingStatus::Timeout;
    acc.failed = acc.failed || r.status == TimingStatus::Failed;
  }

  Rankings out;
  std::vector<MethodTiming> ranked;
  for (auto& [name, acc] : by_method) {
    if (acc.per_graph.empty()) {
      out.excluded.push_back(name);
      continue;
    }
    // Sum in a fixed order so the result does not depend on input order.
    std::sort(acc.per_graph.begin(), acc.per_graph.end());
    MethodTiming t;
    t.method = name;
    t.ok_graphs = acc.per_graph.size();
    t.mean = std::accumulate(acc.per_graph.begin(), acc.per_graph.end(), 0.0) /
             static_cast<double>(acc.per_graph.size());
    t.median = median(acc.per_graph);
    t.had_timeout = acc.timeout;
    t.had_failure = acc.failed;
    ranked.push_back(std::move(t));
  }
  out.by_mean = ranked;
  std::stable_sort(out.by_mean.begin(), out.by_mean.end(),
                   [](const auto& a, const auto& b) { return a.mean < b.mean; });
  out.by_median = std::move(ranked);
  std::stable_sort(out.by_median.begin(), out.by_median.end(),
                   [](const auto& a, const auto& b) { return a.median < b.median; });
  return out;
}

void write_rankings_csv(std::ostream& out, const Rankings& rankings) {
  out << "ranking,rank,method,seconds,ok_graphs,timeout,failed\n";
  auto rows = [&](std::string_view kind, const std::vector<MethodTiming>& list, bool use_mean) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& t = list[i];
      out << kind << ',' << i + 1 << ',' << detail::csv_field(t.method) << ','
          << detail::format_real(use_mean ? t.mean : t.median) << ',' << t.ok_graphs << ','
          << (t.had_timeout ? 1 : 0) << ',' << (t.had_failure ? 1 : 0) << '\n';
    }
  };
  rows("mean", rankings.by_mean, true);
  rows("median", rankings.by_median, false);
  for (const auto& name : rankings.excluded) out << "excluded,," << detail::csv_field(name) << ",,0,,\n";
}

}  // namespace commprof
