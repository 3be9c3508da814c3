#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "commprof/bench.hpp"
#include "commprof/error.hpp"

namespace commprof {
namespace {

double tricube(double u) {
  if (u >= 1.0) return 0.0;
  const double c = 1.0 - u * u * u;
  return c * c * c;
}

// Equivalent-kernel weights l_i(x0) of the local linear fit: the estimate is
// sum_i l_i y_i. `w` receives the tricube weights.
std::vector<double> smoother_row(std::span<const double> x, double span, double x0, std::vector<double>& w) {
  const std::size_t n = x.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = std::abs(x[i] - x0);
  double radius;
  if (span < 1.0) {
    const auto q = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(span * static_cast<double>(n))), 3, n);
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q - 1), sorted.end());
    radius = sorted[q - 1];
  } else {
    radius = *std::max_element(dist.begin(), dist.end()) * span;
  }
  // Keep the q-th neighbour in the fit with a small positive weight.
  radius = radius * (1.0 + 1e-6) + 1e-300;

  w.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = tricube(dist[i] / radius);
    total += w[i];
  }
  double centre = 0.0;
  for (std::size_t i = 0; i < n; ++i) centre += w[i] * x[i];
  centre /= total;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) sxx += w[i] * (x[i] - centre) * (x[i] - centre);

  std::vector<double> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = w[i] / total;
    if (sxx > 1e-14 * total) l[i] += w[i] * (x[i] - centre) * (x0 - centre) / sxx;
  }
  return l;
}

void require_points(std::span<const double> x, std::span<const double> y, double span) {
  if (x.size() != y.size()) throw Error("loess: x and y differ in length");
  if (x.size() < 5) throw Error("loess needs at least five points");
  if (!(span > 0.0)) throw Error("loess span must be positive");
}

}  // namespace

double loess_at(std::span<const double> x, std::span<const double> y, double span, double x0) {
  require_points(x, y, span);
  std::vector<double> w;
  const auto l = smoother_row(x, span, x0, w);
  return std::inner_product(l.begin(), l.end(), y.begin(), 0.0);
}

ScalingFit loess_fit(std::span<const double> x, std::span<const double> y, double span, std::size_t grid_points) {
  require_points(x, y, span);
  if (grid_points < 2) throw Error("loess grid needs at least two points");
  const std::size_t n = x.size();

  std::vector<double> residual(n);
  std::vector<double> w;
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = smoother_row(x, span, x[i], w);
    residual[i] = y[i] - std::inner_product(l.begin(), l.end(), y.begin(), 0.0);
  }

  ScalingFit fit;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double x0 =
        k + 1 == grid_points ? *hi : *lo + (*hi - *lo) * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const auto l = smoother_row(x, span, x0, w);
    const double estimate = std::inner_product(l.begin(), l.end(), y.begin(), 0.0);
    double wr = 0.0;
    double wsum = 0.0;
    double l2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wr += w[i] * residual[i] * residual[i];
      wsum += w[i];
      l2 += l[i] * l[i];
    }
    const double half = 1.96 * std::sqrt(wr / wsum) * std::sqrt(l2);
    fit.grid.push_back(x0);
    fit.estimate.push_back(estimate);
    fit.lower.push_back(estimate - half);
    fit.upper.push_back(estimate + half);
  }
  return fit;
}

double ScalingFit::slope() const {
  if (grid.size() < 2 || grid.back() == grid.front()) return 0.0;
  return (estimate.back() - estimate.front()) / (grid.back() - grid.front());
}

std::vector<ScalingFit> fit_scaling(std::span<const TimingRecord> records, Predictor predictor, double span) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> points;
  for (const auto& r : records) {
    if (r.status != TimingStatus::Ok || r.seconds.empty()) continue;
    const auto size = static_cast<double>(predictor == Predictor::Nodes ? r.nodes : r.edges);
    if (size <= 0.0) continue;
    auto& [xs, ys] = points[r.method];
    xs.push_back(std::log(size));
    ys.push_back(std::log(r.mean_seconds()));
  }
  std::vector<ScalingFit> fits;
  for (auto& [method, xy] : points) {
    if (xy.first.size() < 5) continue;
    auto fit = loess_fit(xy.first, xy.second, span);
    fit.method = method;
    fit.predictor = predictor == Predictor::Nodes ? "log_n" : "log_m";
    fits.push_back(std::move(fit));
  }
  return fits;
}

void write_fit_json(std::ostream& out, std::span<const ScalingFit> fits) {
  auto doc = nlohmann::json::array();
  for (const auto& f : fits) {
    doc.push_back({{"method", f.method},
                   {"predictor", f.predictor},
                   {"response", "log_seconds"},
                   {"slope", f.slope()},
                   {"grid", f.grid},
                   {"estimate", f.estimate},
                   {"lower", f.lower},
                   {"upper", f.upper}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace commprof
