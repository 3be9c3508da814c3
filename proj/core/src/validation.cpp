#include "commprof/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "commprof/error.hpp"

namespace commprof {
namespace {

double pairs(std::size_t k) {
  const auto x = static_cast<double>(k);
  return 0.5 * x * (x - 1.0);
}

double entropy(std::span<const std::size_t> sums, std::size_t total) {
  const auto n = static_cast<double>(total);
  double h = 0.0;
  for (auto s : sums) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

// Distinct margin values with their multiplicities.
std::map<std::size_t, std::size_t> tally(std::span<const std::size_t> sums) {
  std::map<std::size_t, std::size_t> out;
  for (auto s : sums) ++out[s];
  return out;
}

}  // namespace

std::string_view to_string(ValidationMetric m) {
  switch (m) {
    case ValidationMetric::RI: return "RI";
    case ValidationMetric::ARI: return "ARI";
    case ValidationMetric::NMI: return "NMI";
    case ValidationMetric::AMI: return "AMI";
    case ValidationMetric::NVI: return "NVI";
    case ValidationMetric::VI: return "VI";
  }
  return "?";
}

std::optional<ValidationMetric> parse_validation_metric(std::string_view name) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto m : {ValidationMetric::RI, ValidationMetric::ARI, ValidationMetric::NMI,
                 ValidationMetric::AMI, ValidationMetric::NVI, ValidationMetric::VI})
    if (key == to_string(m)) return m;
  return std::nullopt;
}

double rand_index(const ContingencyTable& t) {
  if (t.total() < 2) throw DomainError("Rand index needs at least two nodes");
  double joint = 0.0;
  for (const auto& c : t.cells()) joint += pairs(c.count);
  double rows = 0.0;
  double cols = 0.0;
  for (auto s : t.row_sums()) rows += pairs(s);
  for (auto s : t.col_sums()) cols += pairs(s);
  const double all = pairs(t.total());
  return (all + 2.0 * joint - (rows + cols)) / all;
}

double adjusted_rand(const ContingencyTable& t) {
  if (t.total() < 2) throw DomainError("adjusted Rand index needs at least two nodes");
  double joint = 0.0;
  for (const auto& c : t.cells()) joint += pairs(c.count);
  double rows = 0.0;
  double cols = 0.0;
  for (auto s : t.row_sums()) rows += pairs(s);
  for (auto s : t.col_sums()) cols += pairs(s);
  const double expected = rows * cols / pairs(t.total());
  const double maximum = 0.5 * (rows + cols);
  const double denom = maximum - expected;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, maximum)) {
    if (t.is_matching()) return 1.0;
    throw DomainError("adjusted Rand index is 0/0 for non-matching partitions");
  }
  return (joint - expected) / denom;
}

double row_entropy(const ContingencyTable& t) { return entropy(t.row_sums(), t.total()); }
double col_entropy(const ContingencyTable& t) { return entropy(t.col_sums(), t.total()); }

double mutual_information(const ContingencyTable& t) {
  const auto n = static_cast<double>(t.total());
  double mi = 0.0;
  for (const auto& c : t.cells()) {
    const double nij = static_cast<double>(c.count);
    const double ai = static_cast<double>(t.row_sums()[c.row]);
    const double bj = static_cast<double>(t.col_sums()[c.col]);
    mi += nij / n * std::log(nij * n / (ai * bj));
  }
  return std::max(mi, 0.0);
}

double nmi(const ContingencyTable& t) {
  const double h1 = row_entropy(t);
  const double h2 = col_entropy(t);
  if (h1 == 0.0 && h2 == 0.0) return 1.0;
  if (h1 == 0.0 || h2 == 0.0) return 0.0;
  return std::clamp(2.0 * mutual_information(t) / (h1 + h2), 0.0, 1.0);
}

double expected_mutual_information(const ContingencyTable& t) {
  const std::size_t n = t.total();
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double log_n = std::log(nn);
  const double lg_n = std::lgamma(nn + 1.0);

  // Equal margins contribute identically, so iterate over distinct values.
  const auto rows = tally(t.row_sums());
  const auto cols = tally(t.col_sums());
  double emi = 0.0;
  for (auto [a, ra] : rows) {
    const double da = static_cast<double>(a);
    const double lg_a = std::lgamma(da + 1.0);
    const double lg_na = std::lgamma(nn - da + 1.0);
    for (auto [b, cb] : cols) {
      const double db = static_cast<double>(b);
      const double lg_b = std::lgamma(db + 1.0);
      const double lg_nb = std::lgamma(nn - db + 1.0);
      const std::size_t lo = std::max<std::size_t>(1, a + b > n ? a + b - n : 0);
      const std::size_t hi = std::min(a, b);
      double cell = 0.0;
      for (std::size_t k = lo; k <= hi; ++k) {
        const double dk = static_cast<double>(k);
        // Hypergeometric probability of an overlap of k nodes.
        const double log_p = lg_a + lg_b + lg_na + lg_nb - lg_n - std::lgamma(dk + 1.0) -
                             std::lgamma(da - dk + 1.0) - std::lgamma(db - dk + 1.0) -
                             std::lgamma(nn - da - db + dk + 1.0);
        cell += dk / nn * (log_n + std::log(dk) - std::log(da) - std::log(db)) * std::exp(log_p);
      }
      emi += static_cast<double>(ra) * static_cast<double>(cb) * cell;
    }
  }
  return emi;
}

double ami(const ContingencyTable& t) {
  if (t.is_matching()) return 1.0;
  const double mi = mutual_information(t);
  const double emi = expected_mutual_information(t);
  const double mean_h = 0.5 * (row_entropy(t) + col_entropy(t));
  const double denom = mean_h - emi;
  if (std::abs(denom) <= 1e-15) throw DomainError("AMI is 0/0 for non-matching partitions");
  return (mi - emi) / denom;
}

double nvi(const ContingencyTable& t) { return 1.0 - ami(t); }

double variation_of_information(const ContingencyTable& t) {
  return std::max(0.0, row_entropy(t) + col_entropy(t) - 2.0 * mutual_information(t));
}

double ValidationScores::get(ValidationMetric m) const {
  switch (m) {
    case ValidationMetric::RI: return ri;
    case ValidationMetric::ARI: return ari;
    case ValidationMetric::NMI: return nmi;
    case ValidationMetric::AMI: return ami;
    case ValidationMetric::NVI: return nvi;
    case ValidationMetric::VI: return vi;
  }
  return 0.0;
}

ValidationScores compare_partitions(const Partition& a, const Partition& b) {
  const ContingencyTable t(a, b);
  ValidationScores s;
  s.ri = rand_index(t);
  s.ari = adjusted_rand(t);
  s.nmi = commprof::nmi(t);
  s.ami = commprof::ami(t);
  s.nvi = 1.0 - s.ami;
  s.vi = variation_of_information(t);
  return s;
}

}  // namespace commprof
