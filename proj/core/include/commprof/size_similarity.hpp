#pragma once

#include <span>
#include <string>
#include <vector>

#include "commprof/partition.hpp"

namespace commprof {

/// Half the shared mass of identical community sizes. The leading factor 1/2
/// is kept, so identical multisets score 0.5.
double exact_size_similarity(const SizeMultiset& a, const SizeMultiset& b);

/// Normal reference rule 0.9 min(sigma, IQR/1.34) N^(-1/5) with type-7
/// quartiles. A zero IQR falls back to sigma; zero sigma is a DomainError.
double silverman_bandwidth(std::span<const double> samples);
double silverman_bandwidth(const SizeMultiset& sizes);

/// Gaussian kernel density on a uniform grid.
class DensityEstimate {
 public:
  DensityEstimate(std::vector<double> samples, double bandwidth, std::vector<double> grid);

  double bandwidth() const { return h_; }
  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double evaluate(double x) const;
  /// Trapezoid integral over the grid.
  double integral() const;

 private:
  std::vector<double> samples_;
  double h_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

struct KdeOptions {
  bool log_sizes = false;
  std::size_t grid_points = 1024;
};

/// Density over [min - 4h, max + 4h]. Throws DomainError when h <= 0.
DensityEstimate kde_density(const SizeMultiset& sizes, double bandwidth, const KdeOptions& options = {});

/// Area under min(f_a, f_b), each density with its own Silverman bandwidth,
/// integrated on one grid covering both supports.
double kde_overlap_similarity(const SizeMultiset& a, const SizeMultiset& b, const KdeOptions& options = {});

struct KsResult {
  double distance = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test on the expanded samples.
KsResult ks_test(const SizeMultiset& a, const SizeMultiset& b);

struct SizeSimilarity {
  std::string a;
  std::string b;
  double s_exact = 0.0;
  double s_kde = 0.0;
  KsResult ks;
  std::string error;  // set when a bandwidth could not be chosen
};

struct NamedSizes {
  std::string name;
  SizeMultiset sizes;
};

/// Every unordered pair (i < j), row-major.
std::vector<SizeSimilarity> pairwise_size_similarity(std::span<const NamedSizes> methods,
                                                     const KdeOptions& options = {});

}  // namespace commprof
