#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace commprof {

struct Correlation {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

/// Sample Pearson correlation with a two-sided Student-t p-value on n - 2
/// degrees of freedom. Throws DomainError when n < 3 or either variance is 0.
Correlation pearson(std::span<const double> a, std::span<const double> b);

/// Per-graph scores of one method under one quality function, aligned to a
/// shared graph list. Absent entries are runs that did not produce a score.
struct QualityVector {
  std::string method;
  std::string metric;
  std::vector<std::optional<double>> scores;
};

struct CoPerformanceCell {
  std::optional<Correlation> value;  // empty when the pair is absent
  std::string diagnostic;

  bool significant() const { return value && value->p <= 0.05; }
};

class CoPerformanceMatrix {
 public:
  CoPerformanceMatrix(std::string metric, std::vector<std::string> methods);

  const std::string& metric() const { return metric_; }
  std::span<const std::string> methods() const { return methods_; }
  std::size_t size() const { return methods_.size(); }
  const CoPerformanceCell& at(std::size_t i, std::size_t j) const { return cells_[i * size() + j]; }
  void set(std::size_t i, std::size_t j, CoPerformanceCell cell);

  /// r values with absent cells as NaN.
  std::vector<double> r_matrix() const;

 private:
  std::string metric_;
  std::vector<std::string> methods_;
  std::vector<CoPerformanceCell> cells_;
};

/// Pairwise-complete correlation of every pair of methods. Pairs sharing
/// fewer than three graphs, or with a constant scorer, become absent cells
/// carrying a diagnostic.
CoPerformanceMatrix co_performance_matrix(std::span<const QualityVector> vectors);

void write_co_performance_csv(std::ostream& out, const CoPerformanceMatrix& m, bool header = true);
std::string co_performance_csv_header();

}  // namespace commprof
