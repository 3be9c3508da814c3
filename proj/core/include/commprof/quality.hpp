#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commprof/graph.hpp"
#include "commprof/partition.hpp"

namespace commprof {

enum class QualityMetric {
  QNG,
  QER,
  QD,
  QZ,
  SurpriseExact,
  SurpriseAsymptotic,
  Significance,
};

inline constexpr QualityMetric kAllQualityMetrics[] = {
    QualityMetric::QNG,           QualityMetric::QER,
    QualityMetric::QD,            QualityMetric::QZ,
    QualityMetric::SurpriseExact, QualityMetric::SurpriseAsymptotic,
    QualityMetric::Significance,
};

std::string_view to_string(QualityMetric m);
std::optional<QualityMetric> parse_quality_metric(std::string_view name);

/// Pair counts shared by the edge-density based scores.
struct PartitionGlobals {
  double node_pairs = 0.0;           // M = C(n, 2)
  double intra_pairs = 0.0;          // M_int = sum_c C(n_c, 2)
  double intra_edges = 0.0;          // m_int = sum_c m_c
  double edges = 0.0;                // m
  double intra_fraction = 0.0;       // q = m_int / m (0 when m = 0)
  double expected_fraction = 0.0;    // <q> = M_int / M
  double density = 0.0;              // p = m / M
  std::vector<double> community_density;  // p_c = m_c / C(n_c, 2); 0 for n_c < 2
};

PartitionGlobals partition_globals(const Graph& g, const Partition& p);

/// Binary Kullback-Leibler divergence D(q1 || q2) in nats, with 0 ln 0 = 0.
/// Throws DomainError unless q1 in [0, 1] and q2 in (0, 1).
double kl_divergence(double q1, double q2);

/// Newman-Girvan modularity. Throws DomainError when m = 0.
double q_ng(const Graph& g, const Partition& p);
/// Modularity against an Erdos-Renyi null model. Needs n >= 2 and m >= 1.
double q_er(const Graph& g, const Partition& p);
/// Modularity density: sum_c (2 m_c - l_c) / n_c. Not normalised by m.
double q_d(const Graph& g, const Partition& p);
/// Z-modularity. Throws DomainError when its variance term is zero, which
/// includes every single-community partition.
double q_z(const Graph& g, const Partition& p);
/// Surprise: -ln of the hypergeometric tail P(X >= m_int), evaluated in log space.
double surprise_exact(const Graph& g, const Partition& p);
/// m * D(q || <q>). Throws DomainError when <q> is 0 or 1.
double surprise_asymptotic(const Graph& g, const Partition& p);
/// sum_c C(n_c, 2) D(p_c || p). Throws DomainError when p is 0 or 1.
double significance(const Graph& g, const Partition& p);

double evaluate(QualityMetric metric, const Graph& g, const Partition& p);

struct QualityScore {
  QualityMetric metric;
  double value = 0.0;
  /// Set when the metric is undefined for this input; value is NaN then.
  std::string error;
  bool ok() const { return error.empty(); }
};

/// Scores every requested metric, capturing per-metric domain errors.
std::vector<QualityScore> score_partition(const Graph& g, const Partition& p,
                                          std::span<const QualityMetric> metrics);

}  // namespace commprof
