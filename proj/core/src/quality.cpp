#include "commprof/quality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>

#include "commprof/error.hpp"
#include "detail.hpp"

namespace commprof {
namespace {

double pairs(double k) { return 0.5 * k * (k - 1.0); }

void require_edges(const Graph& g, std::string_view metric) {
  if (g.edge_count() == 0)
    throw DomainError(std::string(metric) + " is undefined for a graph without edges");
}

void require_match(const Graph& g, const Partition& p) {
  if (g.node_count() != p.node_count()) throw Error("partition does not match graph");
}

// ln C(n, k) for integral n >= k >= 0. The falling factorial is summed as
// k ln n + sum ln(1 - i/n), which stays accurate when n is far larger than k.
double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  k = std::min(k, n - k);
  if (n <= 64.0 * k) return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  const auto count = static_cast<std::uint64_t>(k);
  const long double big = n;
  long double falling = static_cast<long double>(k) * std::log(big);
  for (std::uint64_t i = 1; i < count; ++i) falling += std::log1p(-static_cast<long double>(i) / big);
  return static_cast<double>(falling - std::lgamma(static_cast<long double>(k) + 1.0L));
}

// Online log-sum-exp with compensated summation of the scaled terms.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (empty_) {
      ref_ = log_term;
      sum_ = 1.0;
      carry_ = 0.0;
      empty_ = false;
      return;
    }
    if (log_term > ref_) {
      const double scale = std::exp(ref_ - log_term);
      sum_ *= scale;
      carry_ *= scale;
      ref_ = log_term;
      kahan(1.0);
    } else {
      kahan(std::exp(log_term - ref_));
    }
  }

  double value() const {
    return empty_ ? -std::numeric_limits<double>::infinity() : ref_ + std::log(sum_ + carry_);
  }
  double max_term() const { return ref_; }

 private:
  void kahan(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  bool empty_ = true;
  double ref_ = 0.0;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::string_view to_string(QualityMetric m) {
  switch (m) {
    case QualityMetric::QNG: return "QNG";
    case QualityMetric::QER: return "QER";
    case QualityMetric::QD: return "QD";
    case QualityMetric::QZ: return "QZ";
    case QualityMetric::SurpriseExact: return "SurpriseExact";
    case QualityMetric::SurpriseAsymptotic: return "SurpriseAsymptotic";
    case QualityMetric::Significance: return "Significance";
  }
  return "?";
}

std::optional<QualityMetric> parse_quality_metric(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '_' && c != '-') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto m : kAllQualityMetrics) {
    std::string candidate;
    for (char c : to_string(m)) candidate += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == candidate) return m;
  }
  if (key == "modularity") return QualityMetric::QNG;
  if (key == "surprise") return QualityMetric::SurpriseExact;
  return std::nullopt;
}

PartitionGlobals partition_globals(const Graph& g, const Partition& p) {
  require_match(g, p);
  const auto stats = community_stats(g, p);
  PartitionGlobals out;
  out.node_pairs = pairs(static_cast<double>(g.node_count()));
  out.edges = static_cast<double>(g.edge_count());
  out.community_density.reserve(stats.size());
  for (const auto& c : stats) {
    const double possible = pairs(static_cast<double>(c.size));
    out.intra_pairs += possible;
    out.intra_edges += static_cast<double>(c.internal_edges);
    out.community_density.push_back(possible > 0 ? static_cast<double>(c.internal_edges) / possible
                                                 : 0.0);
  }
  out.intra_fraction = out.edges > 0 ? out.intra_edges / out.edges : 0.0;
  out.expected_fraction = out.node_pairs > 0 ? out.intra_pairs / out.node_pairs : 0.0;
  out.density = out.node_pairs > 0 ? out.edges / out.node_pairs : 0.0;
  return out;
}

double kl_divergence(double q1, double q2) {
  if (!(q1 >= 0.0 && q1 <= 1.0)) throw DomainError("KL divergence: first argument outside [0, 1]");
  if (!(q2 > 0.0 && q2 < 1.0)) throw DomainError("KL divergence: second argument outside (0, 1)");
  double d = 0.0;
  if (q1 > 0.0) d += q1 * std::log(q1 / q2);
  if (q1 < 1.0) d += (1.0 - q1) * std::log((1.0 - q1) / (1.0 - q2));
  return std::max(d, 0.0);
}

double q_ng(const Graph& g, const Partition& p) {
  require_match(g, p);
  require_edges(g, "Newman-Girvan modularity");
  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (const auto& c : community_stats(g, p)) {
    const double mc = static_cast<double>(c.internal_edges);
    const double dc = static_cast<double>(c.total_degree());
    q += mc - dc * dc / (4.0 * m);
  }
  return q / m;
}

double q_er(const Graph& g, const Partition& p) {
  require_match(g, p);
  require_edges(g, "Erdos-Renyi modularity");
  const double n = static_cast<double>(g.node_count());
  if (n < 2) throw DomainError("Erdos-Renyi modularity needs at least two nodes");
  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (const auto& c : community_stats(g, p)) {
    const double nc = static_cast<double>(c.size);
    q += static_cast<double>(c.internal_edges) - m * nc * (nc - 1.0) / (n * (n - 1.0));
  }
  return q / m;
}

double q_d(const Graph& g, const Partition& p) {
  require_match(g, p);
  double q = 0.0;
  for (const auto& c : community_stats(g, p)) {
    // sum of internal degrees is 2 m_c, sum of external degrees is l_c.
    q += (2.0 * static_cast<double>(c.internal_edges) - static_cast<double>(c.boundary_edges)) /
         static_cast<double>(c.size);
  }
  return q;
}

double q_z(const Graph& g, const Partition& p) {
  require_match(g, p);
  require_edges(g, "Z-modularity");
  const double m = static_cast<double>(g.edge_count());
  double fraction = 0.0;
  double expected = 0.0;
  for (const auto& c : community_stats(g, p)) {
    const double a = static_cast<double>(c.total_degree()) / (2.0 * m);
    fraction += static_cast<double>(c.internal_edges) / m;
    expected += a * a;
  }
  const double variance = expected * (1.0 - expected);
  if (!(variance > 1e-15))
    throw DomainError("Z-modularity is 0/0 for this partition (sum of squared degree shares is " +
                      std::to_string(expected) + ")");
  return (fraction - expected) / std::sqrt(variance);
}

double surprise_exact(const Graph& g, const Partition& p) {
  require_edges(g, "Surprise");
  const auto glob = partition_globals(g, p);
  const double total = glob.node_pairs;
  const double good = glob.intra_pairs;
  const double draws = glob.edges;
  const double observed = glob.intra_edges;
  const double upper = std::min(draws, good);
  if (observed > upper)
    throw DomainError("Surprise: more intra-community edges than the hypergeometric support allows");

  // P(X = k) for X ~ Hypergeometric(total, good, draws), summed from the
  // observed count upwards. Successive terms follow
  //   T(k+1) / T(k) = (good - k)(draws - k) / ((k + 1)(total - good - draws + k + 1)).
  const double denominator = log_binomial(total, draws);
  double log_term = log_binomial(good, observed) + log_binomial(total - good, draws - observed) -
                    denominator;
  const double mode = std::floor((draws + 1.0) * (good + 1.0) / (total + 2.0));
  LogSum tail;
  for (double k = observed; k <= upper; k += 1.0) {
    tail.add(log_term);
    if (k > mode && log_term < tail.max_term() - 45.0) break;
    const double num = (good - k) * (draws - k);
    const double den = (k + 1.0) * (total - good - draws + k + 1.0);
    if (num <= 0.0 || den <= 0.0) break;
    log_term += std::log(num) - std::log(den);
  }
  return std::max(0.0, -tail.value());
}

double surprise_asymptotic(const Graph& g, const Partition& p) {
  require_edges(g, "Surprise");
  const auto glob = partition_globals(g, p);
  if (!(glob.expected_fraction > 0.0 && glob.expected_fraction < 1.0))
    throw DomainError("asymptotic Surprise needs 0 < <q> < 1 (got " +
                      std::to_string(glob.expected_fraction) + ")");
  return glob.edges * kl_divergence(glob.intra_fraction, glob.expected_fraction);
}

double significance(const Graph& g, const Partition& p) {
  require_match(g, p);
  if (g.node_count() < 2) throw DomainError("Significance needs at least two nodes");
  const auto glob = partition_globals(g, p);
  if (!(glob.density > 0.0 && glob.density < 1.0))
    throw DomainError("Significance needs graph density strictly between 0 and 1");
  const auto sizes = p.sizes();
  double z = 0.0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 2) continue;
    z += pairs(static_cast<double>(sizes[c])) * kl_divergence(glob.community_density[c], glob.density);
  }
  return z;
}

double evaluate(QualityMetric metric, const Graph& g, const Partition& p) {
  switch (metric) {
    case QualityMetric::QNG: return q_ng(g, p);
    case QualityMetric::QER: return q_er(g, p);
    case QualityMetric::QD: return q_d(g, p);
    case QualityMetric::QZ: return q_z(g, p);
    case QualityMetric::SurpriseExact: return surprise_exact(g, p);
    case QualityMetric::SurpriseAsymptotic: return surprise_asymptotic(g, p);
    case QualityMetric::Significance: return significance(g, p);
  }
  throw Error("unknown quality metric");
}

std::vector<QualityScore> score_partition(const Graph& g, const Partition& p,
                                          std::span<const QualityMetric> metrics) {
  std::vector<QualityScore> out;
  out.reserve(metrics.size());
  for (auto metric : metrics) {
    QualityScore s{metric, std::numeric_limits<double>::quiet_NaN(), {}};
    try {
      s.value = evaluate(metric, g, p);
    } catch (const DomainError& e) {
      s.error = e.what();
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace commprof
