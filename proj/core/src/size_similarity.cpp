#include "commprof/size_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "commprof/error.hpp"

namespace commprof {
namespace {

void require_samples(const SizeMultiset& s) {
  if (s.empty()) throw DomainError("community-size multiset is empty");
}

// Sample quantile, linear interpolation between order statistics (type 7).
double quantile(std::span<const double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> samples_of(const SizeMultiset& s, bool log_sizes) {
  auto x = s.expanded();
  if (log_sizes)
    for (auto& v : x) v = std::log(v);
  return x;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return area;
}

}  // namespace

double exact_size_similarity(const SizeMultiset& a, const SizeMultiset& b) {
  require_samples(a);
  require_samples(b);
  const auto na = static_cast<double>(a.total());
  const auto nb = static_cast<double>(b.total());
  const auto ea = a.entries();
  const auto eb = b.entries();
  double shared = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) {
      ++i;
    } else if (eb[j].first < ea[i].first) {
      ++j;
    } else {
      shared += std::min(static_cast<double>(ea[i].second) / na, static_cast<double>(eb[j].second) / nb);
      ++i;
      ++j;
    }
  }
  return 0.5 * shared;
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw DomainError("bandwidth needs at least two samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : sorted) ss += (x - mean) * (x - mean);
  const double sigma = std::sqrt(ss / (n - 1.0));
  if (!(sigma > 0.0)) throw DomainError("all community sizes are identical: density is degenerate");
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sigma, iqr / 1.34) : sigma;
  return 0.9 * spread * std::pow(n, -0.2);
}

double silverman_bandwidth(const SizeMultiset& sizes) {
  const auto x = sizes.expanded();
  return silverman_bandwidth(std::span<const double>(x));
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw Error("grid needs at least two points");
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

DensityEstimate::DensityEstimate(std::vector<double> samples, double bandwidth, std::vector<double> grid)
    : samples_(std::move(samples)), h_(bandwidth), grid_(std::move(grid)) {
  if (!(h_ > 0.0)) throw DomainError("bandwidth must be positive");
  if (samples_.empty()) throw DomainError("density needs at least one sample");
  values_.reserve(grid_.size());
  for (double x : grid_) values_.push_back(evaluate(x));
}

double DensityEstimate::evaluate(double x) const {
  const double norm = 1.0 / (h_ * static_cast<double>(samples_.size()) * std::sqrt(2.0 * std::numbers::pi));
  double f = 0.0;
  for (double s : samples_) {
    const double u = (s - x) / h_;
    f += std::exp(-0.5 * u * u);
  }
  return f * norm;
}

double DensityEstimate::integral() const { return trapezoid(grid_, values_); }

DensityEstimate kde_density(const SizeMultiset& sizes, double bandwidth, const KdeOptions& options) {
  require_samples(sizes);
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
  auto x = samples_of(sizes, options.log_sizes);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  auto grid = uniform_grid(*lo - 4.0 * bandwidth, *hi + 4.0 * bandwidth, options.grid_points);
  return DensityEstimate(std::move(x), bandwidth, std::move(grid));
}

double kde_overlap_similarity(const SizeMultiset& a, const SizeMultiset& b, const KdeOptions& options) {
  require_samples(a);
  require_samples(b);
  auto xa = samples_of(a, options.log_sizes);
  auto xb = samples_of(b, options.log_sizes);
  const double ha = silverman_bandwidth(std::span<const double>(xa));
  const double hb = silverman_bandwidth(std::span<const double>(xb));
  const auto [alo, ahi] = std::minmax_element(xa.begin(), xa.end());
  const auto [blo, bhi] = std::minmax_element(xb.begin(), xb.end());
  const double lo = std::min(*alo - 4.0 * ha, *blo - 4.0 * hb);
  const double hi = std::max(*ahi + 4.0 * ha, *bhi + 4.0 * hb);

  // Keep at least eight grid steps per bandwidth when the shared range is wide.
  const double step = std::min(ha, hb) / 8.0;
  const auto wanted = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  const std::size_t points = std::clamp(wanted, options.grid_points, std::size_t{1} << 20);
  const auto grid = uniform_grid(lo, hi, points);

  const DensityEstimate fa(std::move(xa), ha, grid);
  const DensityEstimate fb(std::move(xb), hb, grid);
  std::vector<double> lower(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) lower[i] = std::min(fa.values()[i], fb.values()[i]);
  return std::clamp(trapezoid(grid, lower), 0.0, 1.0);
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kTerm = 1e-10;
  if (lambda < 1.0) {
    // The alternating series converges slowly here; use the Jacobi theta form
    // P(K <= l) = sqrt(2 pi) / l * sum_k exp(-(2k-1)^2 pi^2 / (8 l^2)).
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      cdf += term;
      if (term < kTerm * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < kTerm) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_test(const SizeMultiset& a, const SizeMultiset& b) {
  require_samples(a);
  require_samples(b);
  const auto na = static_cast<double>(a.total());
  const auto nb = static_cast<double>(b.total());
  const auto ea = a.entries();
  const auto eb = b.entries();
  // Sweep distinct sizes in ascending order, advancing both CDFs past ties.
  double fa = 0.0;
  double fb = 0.0;
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() || j < eb.size()) {
    const std::size_t x = j == eb.size() || (i < ea.size() && ea[i].first <= eb[j].first) ? ea[i].first
                                                                                          : eb[j].first;
    if (i < ea.size() && ea[i].first == x) fa += static_cast<double>(ea[i++].second) / na;
    if (j < eb.size() && eb[j].first == x) fb += static_cast<double>(eb[j++].second) / nb;
    d = std::max(d, std::abs(fa - fb));
  }
  d = std::min(d, 1.0);
  const double effective = na * nb / (na + nb);
  return {d, kolmogorov_survival(std::sqrt(effective) * d)};
}

std::vector<SizeSimilarity> pairwise_size_similarity(std::span<const NamedSizes> methods,
                                                     const KdeOptions& options) {
  std::vector<SizeSimilarity> out;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      SizeSimilarity s;
      s.a = methods[i].name;
      s.b = methods[j].name;
      s.s_exact = exact_size_similarity(methods[i].sizes, methods[j].sizes);
      s.ks = ks_test(methods[i].sizes, methods[j].sizes);
      try {
        s.s_kde = kde_overlap_similarity(methods[i].sizes, methods[j].sizes, options);
      } catch (const DomainError& e) {
        s.s_kde = std::numeric_limits<double>::quiet_NaN();
        s.error = e.what();
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace commprof
