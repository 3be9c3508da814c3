#pragma once

#include <optional>
#include <string_view>

#include "commprof/partition.hpp"

namespace commprof {

enum class ValidationMetric { RI, ARI, NMI, AMI, NVI, VI };

std::string_view to_string(ValidationMetric m);
std::optional<ValidationMetric> parse_validation_metric(std::string_view name);

/// Rand index. Throws DomainError when n < 2.
double rand_index(const ContingencyTable& t);

/// Hubert-Arabie adjusted Rand index over row/column margins. When the
/// expected and maximal index coincide the result is 1 for matching
/// partitions; any other such table raises DomainError.
double adjusted_rand(const ContingencyTable& t);

/// Entropy of the row (first) or column (second) partition, in nats.
double row_entropy(const ContingencyTable& t);
double col_entropy(const ContingencyTable& t);
double mutual_information(const ContingencyTable& t);

/// 2 I / (H1 + H2). Both entropies zero gives 1; exactly one zero gives 0.
double nmi(const ContingencyTable& t);

/// E[I] over all tables with the same margins (hypergeometric model).
double expected_mutual_information(const ContingencyTable& t);

/// (I - E[I]) / (mean(H1, H2) - E[I]). Matching partitions give 1; a zero
/// denominator otherwise raises DomainError.
double ami(const ContingencyTable& t);

/// Normalised variation of information, which equals 1 - AMI.
double nvi(const ContingencyTable& t);

/// H1 + H2 - 2 I (unnormalised; reported as a derived column only).
double variation_of_information(const ContingencyTable& t);

struct ValidationScores {
  double ri = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
  double ami = 0.0;
  double nvi = 0.0;
  double vi = 0.0;

  double get(ValidationMetric m) const;
};

ValidationScores compare_partitions(const Partition& a, const Partition& b);

}  // namespace commprof
