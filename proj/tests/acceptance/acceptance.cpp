// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commprof/bench.hpp"
#include "commprof/coperformance.hpp"
#include "commprof/detectors.hpp"
#include "commprof/generators.hpp"
#include "commprof/graph.hpp"
#include "commprof/partition.hpp"
#include "commprof/pipeline.hpp"
#include "commprof/quality.hpp"
#include "commprof/size_similarity.hpp"
#include "commprof/validation.hpp"
#include "oracles.hpp"

using namespace commprof;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.12g, want %.12g", what.c_str(), got, want);
    expect(std::abs(got - want) <= tol, buf);
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }

  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

std::string fmt_real(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Graph two_triangles() {
  return Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

Graph karate() { return load_edge_list(fs::path(COMMPROF_TEST_DATA) / "karate.edges"); }

DetectorSpec spec(Method m, std::uint64_t seed = 0) {
  DetectorSpec s;
  s.method = m;
  s.seed = seed;
  return s;
}

// ---------------------------------------------------------------------------

void two_triangle_fixture(Check& c) {
  const auto g = two_triangles();
  const auto p = Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1});
  constexpr double tol = 1e-9;
  c.near(q_ng(g, p), 0.5, tol, "Q_NG");
  c.near(q_er(g, p), 0.6, tol, "Q_ER");
  c.near(q_d(g, p), 4.0, tol, "Q_D");
  c.near(q_z(g, p), 1.0, tol, "Q_Z");
  c.near(surprise_exact(g, p), std::log(5005.0), tol, "Surprise exact");
  c.near(surprise_asymptotic(g, p), 6.0 * std::log(2.5), tol, "Surprise asymptotic");
  c.near(significance(g, p), 6.0 * std::log(2.5), tol, "Significance");
}

void karate_communities(Check& c) {
  const auto g = karate();
  c.expect(g.node_count() == 34 && g.edge_count() == 78, "karate graph is not 34/78");
  std::map<std::string, std::vector<std::size_t>> counts;
  auto run = [&](Method m, std::uint64_t seed, std::size_t lo, std::size_t hi) {
    const auto k = detect(g, spec(m, seed)).community_count();
    counts[std::string(to_string(m))].push_back(k);
    c.expect(k >= lo && k <= hi, std::string(to_string(m)) + " seed " + std::to_string(seed) + " found " +
                                     std::to_string(k) + " communities");
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    run(Method::Louvain, seed, 2, 4);
    run(Method::CNM, seed, 2, 4);
    run(Method::LPA, seed, 2, 4);
  }
  run(Method::GN, 0, 2, 6);
  run(Method::Walktrap, 0, 2, 6);
  for (const auto& [name, ks] : counts) {
    const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
    c.note(name + " k=" + (*lo == *hi ? std::to_string(*lo) : std::to_string(*lo) + ".." + std::to_string(*hi)));
  }
}

void small_graph_optimality(Check& c) {
  std::size_t graphs = 0;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 7; ++n) {
    for (const auto& edges : oracle::connected_graphs(n)) {
      const auto g = Graph::from_edges(n, edges);
      const double best = oracle::max_modularity(g);
      for (auto m : {Method::Louvain, Method::CNM}) {
        const auto p = detect(g, spec(m, 1));
        const double gap = best - q_ng(g, p);
        worst = std::max(worst, gap);
        if (gap > 0.05) c.expect(false, std::string(to_string(m)) + " gap " + fmt_real(gap) + " on n=" + std::to_string(n));
      }
      ++graphs;
    }
  }
  // Connected graphs on 2..7 nodes: 1 + 2 + 6 + 21 + 112 + 853.
  c.expect(graphs == 995, "unexpected connected graph count " + std::to_string(graphs));
  c.note(std::to_string(graphs) + " graphs, worst gap " + fmt_real(worst));
}

void validation_oracles(Check& c) {
  std::mt19937_64 rng(2024);
  std::size_t ri_mismatch = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 99;
    const auto a = oracle::random_labels(n, 1 + static_cast<int>(rng() % 10), rng());
    const auto b = oracle::random_labels(n, 1 + static_cast<int>(rng() % 10), rng());
    const ContingencyTable table(oracle::to_partition(a), oracle::to_partition(b));
    if (rand_index(table) != oracle::rand_index_pairs(a, b)) ++ri_mismatch;
  }
  c.expect(ri_mismatch == 0, std::to_string(ri_mismatch) + " RI values differ from pair counting");

  const auto base = oracle::random_labels(100, 5, 7);
  double ari = 0.0;
  for (int t = 0; t < 1000; ++t) {
    auto shuffled = base;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ari += adjusted_rand(ContingencyTable(oracle::to_partition(base), oracle::to_partition(shuffled)));
  }
  ari /= 1000.0;
  c.expect(std::abs(ari) <= 0.02, "mean ARI " + fmt_real(ari));

  double ami_sum = 0.0;
  for (int t = 0; t < 500; ++t)
    ami_sum += ami(ContingencyTable(oracle::to_partition(oracle::random_labels(50, 5, rng())),
                                   oracle::to_partition(oracle::random_labels(50, 5, rng()))));
  const double mean_ami = ami_sum / 500.0;
  c.expect(std::abs(mean_ami) <= 0.05, "mean AMI " + fmt_real(mean_ami));

  double worst_nvi = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 10 + rng() % 91;
    const ContingencyTable table(oracle::to_partition(oracle::random_labels(n, 2 + static_cast<int>(rng() % 6), rng())),
                                 oracle::to_partition(oracle::random_labels(n, 2 + static_cast<int>(rng() % 6), rng())));
    worst_nvi = std::max(worst_nvi, std::abs(nvi(table) - (1.0 - ami(table))));
  }
  c.expect(worst_nvi <= 1e-12, "NVI differs from 1 - AMI by " + fmt_real(worst_nvi));
  c.note("mean ARI " + fmt_real(ari, 3) + ", mean AMI " + fmt_real(mean_ami, 3));
}

void kde_properties(Check& c) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::size_t> xa(30), xb(25);
    for (auto& x : xa) x = 1 + rng() % 50;
    for (auto& x : xb) x = 5 + rng() % 80;
    const auto a = SizeMultiset::from_sizes(xa);
    const auto b = SizeMultiset::from_sizes(xb);
    const double aa = kde_overlap_similarity(a, a);
    c.expect(aa >= 0.999, "s_kde(a,a) = " + fmt_real(aa, 8));
    const double ab = kde_overlap_similarity(a, b);
    const double ba = kde_overlap_similarity(b, a);
    c.expect(std::abs(ab - ba) <= 1e-12, "s_kde asymmetric by " + fmt_real(std::abs(ab - ba)));
    const auto ks = ks_test(a, a);
    c.expect(ks.distance == 0.0 && ks.p_value == 1.0, "KS on identical samples");
  }
  std::vector<std::size_t> x, y;
  for (std::size_t s = 10; s <= 100; s += 10) {
    x.push_back(s);
    y.push_back(s + 1);
  }
  const auto a = SizeMultiset::from_sizes(x);
  const auto b = SizeMultiset::from_sizes(y);
  const double interlaced = kde_overlap_similarity(a, b);
  const double exact = exact_size_similarity(a, b);
  c.expect(interlaced > 0.8, "interlaced s_kde " + fmt_real(interlaced));
  c.expect(exact == 0.0, "interlaced s_exact " + fmt_real(exact));
  c.note("interlaced s_kde " + fmt_real(interlaced));
}

void co_performance_properties(Check& c) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<QualityVector> vectors;
  std::vector<double> common(20);
  for (auto& x : common) x = normal(rng);
  for (int k = 0; k < 6; ++k) {
    QualityVector v{"m" + std::to_string(k), "QNG", {}};
    for (double x : common) v.scores.push_back(0.3 * k * x + normal(rng));
    if (k == 2) v.scores[3].reset();
    vectors.push_back(std::move(v));
  }
  const auto m = co_performance_matrix(vectors);
  const auto r = m.r_matrix();
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    c.expect(r[i * n + i] == 1.0, "diagonal not 1");
    for (std::size_t j = 0; j < n; ++j) {
      c.expect(r[i * n + j] == r[j * n + i], "matrix not symmetric");
      c.expect(r[i * n + j] >= -1.0 && r[i * n + j] <= 1.0, "entry outside [-1, 1]");
    }
  }

  double worst_affine = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(15), b(15);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = normal(rng);
      b[i] = normal(rng) + 0.5 * a[i];
    }
    const double scale = 0.1 + 10.0 * std::abs(normal(rng));
    const double shift = 100.0 * normal(rng);
    std::vector<double> a2 = a;
    for (auto& x : a2) x = scale * x + shift;
    worst_affine = std::max(worst_affine, std::abs(pearson(a, b).r - pearson(a2, b).r));
  }
  c.expect(worst_affine <= 1e-12, "affine change moved r by " + fmt_real(worst_affine));

  // Every ordering of four distinct values against (1, 2, 3, 4).
  std::vector<double> a{1, 2, 3, 4};
  std::vector<double> b = a;
  double worst_p = 0.0;
  double fixture_p = 0.0;
  do {
    const auto corr = pearson(a, b);
    const double mid = oracle::permutation_mid_p(a, b);
    worst_p = std::max(worst_p, std::abs(corr.p - mid));
    if (b == std::vector<double>{1, 3, 2, 4}) fixture_p = corr.p;
  } while (std::next_permutation(b.begin(), b.end()));
  c.expect(worst_p <= 0.05, "t-test p differs from the permutation mid-p by " + fmt_real(worst_p));
  c.note("(1,2,3,4)~(1,3,2,4): r=0.8 p=" + fmt_real(fixture_p, 3) + " perm mid-p=" +
         fmt_real(oracle::permutation_mid_p(a, {1, 3, 2, 4}), 3) + " perm p=" +
         fmt_real(oracle::permutation_p(a, {1, 3, 2, 4}), 3) + "; max |dp| over 24 orderings " + fmt_real(worst_p, 3));
}

double env_or(const char* name, double fallback) {
  const char* v = std::getenv(name);
  return v ? std::atof(v) : fallback;
}

void scaling_sanity(Check& c) {
  // Sparse graphs with mean degree 10 and planted communities of 32 nodes,
  // 30% of edges between communities.
  std::vector<TimingRecord> records;
  auto time_series = [&](Method m, const std::vector<std::size_t>& sizes, std::size_t repeats, bool uniform = false) {
    std::vector<TimingRecord> out;
    for (std::size_t n : sizes) {
      const auto g = uniform ? random_sparse_graph(n, 10.0, 1000 + n) : sparse_community_graph(n, 10.0, 32, 0.3, 1000 + n);
      auto r = time_method(spec(m, 1), g, "sparse-" + std::to_string(n), repeats, 600.0);
      r.partition.reset();
      c.expect(r.status == TimingStatus::Ok, std::string(to_string(m)) + " on n=" + std::to_string(n) + ": " + r.message);
      (uniform ? out : records).push_back(std::move(r));
    }
    return out;
  };

  std::vector<std::size_t> large;
  for (int k = 10; k <= 16; ++k) large.push_back(std::size_t{1} << k);
  time_series(Method::LPA, large, 3);
  time_series(Method::Louvain, large, 3);

  // GN is cubic in n on sparse graphs; the default range stops at 2^9.5 so the
  // criterion fits its time budget. COMMPROF_GN_MAX_LOG2=11 runs the full range.
  const double gn_max = env_or("COMMPROF_GN_MAX_LOG2", 9.5);
  std::vector<std::size_t> small;
  for (double e = 8.0; e <= gn_max + 1e-9; e += 0.25) small.push_back(static_cast<std::size_t>(std::round(std::exp2(e))));
  time_series(Method::GN, small, 1);

  // Other detectors on the shared low end of the range, for the rankings.
  const std::vector<std::size_t> shared{1024, 2048, 4096};
  time_series(Method::CNM, shared, 1);
  time_series(Method::SN, shared, 1);
  time_series(Method::Walktrap, shared, 1);

  const auto fits = fit_scaling(records, Predictor::Nodes);
  std::map<std::string, double> slope;
  for (const auto& f : fits) slope[f.method] = f.slope();
  c.expect(slope.contains("LPA") && slope["LPA"] < 1.4, "LPA slope " + fmt_real(slope["LPA"]));
  c.expect(slope.contains("Louvain") && slope["Louvain"] < 1.4, "Louvain slope " + fmt_real(slope["Louvain"]));
  c.expect(slope.contains("GN") && slope["GN"] > 2.0, "GN slope " + fmt_real(slope["GN"]));

  const auto ranks = rank_methods(records);
  std::string order;
  for (const auto& t : ranks.by_median) order += (order.empty() ? "" : " < ") + t.method;
  const bool top_two = ranks.by_median.size() >= 2 &&
                       ((ranks.by_median[0].method == "LPA" && ranks.by_median[1].method == "Louvain") ||
                        (ranks.by_median[0].method == "Louvain" && ranks.by_median[1].method == "LPA"));
  c.expect(top_two, "median ranking " + order);
  c.note("slopes LPA " + fmt_real(slope["LPA"], 3) + ", Louvain " + fmt_real(slope["Louvain"], 3) + ", GN " +
         fmt_real(slope["GN"], 3) + " (GN n=" + std::to_string(small.front()) + ".." + std::to_string(small.back()) +
         "); median rank " + order);

  // Uniform random graphs have no communities for labels to settle on; the
  // LPA sweep count grows with n there. Reported, not judged.
  const auto uniform_fit = fit_scaling(time_series(Method::LPA, large, 1, true), Predictor::Nodes);
  if (!uniform_fit.empty()) c.note("LPA slope on uniform G(n, m) " + fmt_real(uniform_fit.front().slope(), 3));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Check& c) {
  const fs::path dir = fs::temp_directory_path() / "commprof_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(fs::path(COMMPROF_TEST_DATA) / "karate.edges", dir / "karate.edges");
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto g = planted_partition(4, 12, 0.5, 0.04, s);
    std::ofstream out(dir / ("planted" + std::to_string(s) + ".edges"));
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
  }
  const nlohmann::json doc = {
      {"graphs", {"karate.edges", "planted0.edges", "planted1.edges", "planted2.edges"}},
      {"methods", {"GN", "CNM", "SN", "Walktrap", {{"method", "Louvain"}, {"seed", 11}}, {{"method", "LPA"}, {"seed", 3}}}}};
  std::ofstream(dir / "manifest.json") << doc.dump(2);

  std::vector<std::map<std::string, std::string>> runs;
  for (const char* out : {"run1", "run1", "run2"}) {
    auto m = load_manifest(dir / "manifest.json");
    m.output = dir / out;
    run_pipeline(m);
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir / out)) {
      const auto rel = fs::relative(e.path(), dir / out).generic_string();
      if (e.is_regular_file() && (rel == "scores.csv" || rel.starts_with("partitions/"))) files[rel] = slurp(e.path());
    }
    runs.push_back(std::move(files));
  }
  c.expect(runs[0].size() == 1 + 4 * 6, std::to_string(runs[0].size()) + " score/partition files");
  for (std::size_t r = 1; r < runs.size(); ++r)
    for (const auto& [name, text] : runs[0]) {
      const auto it = runs[r].find(name);
      c.expect(it != runs[r].end() && it->second == text, name + " differs on rerun " + std::to_string(r));
    }
  c.note(std::to_string(runs[0].size()) + " files compared over 3 runs");
  fs::remove_all(dir);
}

}  // namespace

// Optional arguments select criteria by id; none runs all of them.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<Criterion> criteria{
      {1, "two-triangle quality fixture", 1.0, two_triangle_fixture},
      {2, "karate club community counts", 5.0, karate_communities},
      {3, "Louvain/CNM near-optimal on all connected graphs n<=7", 120.0, small_graph_optimality},
      {4, "validation metrics vs oracles", 0.0, validation_oracles},
      {5, "KDE similarity properties", 0.0, kde_properties},
      {6, "co-performance properties", 0.0, co_performance_properties},
      {7, "scaling slopes and median ranking", 600.0, scaling_sanity},
      {8, "determinism of scores and partitions", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    if (!only.empty() && !only.contains(cr.id)) continue;
    Check check;
    const auto start = Clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (cr.budget_seconds > 0.0)
      check.expect(seconds < cr.budget_seconds, "took " + fmt_real(seconds) + " s, budget " + fmt_real(cr.budget_seconds) + " s");
    std::string detail;
    for (const auto& n : check.notes()) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %d %s (%.2f s)%s%s\n", check.ok() ? "PASS" : "FAIL", cr.id, cr.title.c_str(), seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    for (const auto& f : check.failures()) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += check.ok() ? 0 : 1;
  }
  return failed;
}
