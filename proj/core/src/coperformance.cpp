#include "commprof/coperformance.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "commprof/error.hpp"
#include "text.hpp"

namespace commprof {

Correlation pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("score sequences differ in length");
  const std::size_t n = a.size();
  if (n < 3) throw DomainError("Pearson correlation needs at least three paired scores");
  const double dn = static_cast<double>(n);
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= dn;
  mb /= dn;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw DomainError("zero variance in a score sequence");
  const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);

  Correlation out{r, 0.0, n};
  const double df = dn - 2.0;
  if (1.0 - std::abs(r) < 1e-15) return out;
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  out.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  return out;
}

CoPerformanceMatrix::CoPerformanceMatrix(std::string metric, std::vector<std::string> methods)
    : metric_(std::move(metric)), methods_(std::move(methods)), cells_(methods_.size() * methods_.size()) {}

void CoPerformanceMatrix::set(std::size_t i, std::size_t j, CoPerformanceCell cell) {
  cells_[j * size() + i] = cell;
  cells_[i * size() + j] = std::move(cell);
}

std::vector<double> CoPerformanceMatrix::r_matrix() const {
  std::vector<double> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) out.push_back(c.value ? c.value->r : std::numeric_limits<double>::quiet_NaN());
  return out;
}

CoPerformanceMatrix co_performance_matrix(std::span<const QualityVector> vectors) {
  if (vectors.size() < 2) throw Error("co-performance needs at least two methods");
  const std::size_t graphs = vectors.front().scores.size();
  std::vector<std::string> names;
  for (const auto& v : vectors) {
    if (v.scores.size() != graphs) throw Error("quality vectors are not aligned to one graph list");
    if (v.metric != vectors.front().metric) throw Error("quality vectors mix quality functions");
    names.push_back(v.method);
  }

  CoPerformanceMatrix matrix(vectors.front().metric, std::move(names));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i; j < vectors.size(); ++j) {
      std::vector<double> a;
      std::vector<double> b;
      for (std::size_t g = 0; g < graphs; ++g) {
        if (vectors[i].scores[g] && vectors[j].scores[g]) {
          a.push_back(*vectors[i].scores[g]);
          b.push_back(*vectors[j].scores[g]);
        }
      }
      CoPerformanceCell cell;
      try {
        cell.value = pearson(a, b);
        if (i == j) cell.value->r = 1.0;
      } catch (const DomainError& e) {
        cell.diagnostic = std::string(e.what()) + " (" + std::to_string(a.size()) + " shared graphs)";
      }
      matrix.set(i, j, std::move(cell));
    }
  }
  return matrix;
}

std::string co_performance_csv_header() { return "metric,methodA,methodB,r,p,n_shared,significant"; }

void write_co_performance_csv(std::ostream& out, const CoPerformanceMatrix& m, bool header) {
  using detail::csv_field;
  using detail::format_real;
  if (header) out << co_performance_csv_header() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const auto& c = m.at(i, j);
      out << csv_field(m.metric()) << ',' << csv_field(m.methods()[i]) << ',' << csv_field(m.methods()[j]) << ',';
      if (c.value)
        out << format_real(c.value->r) << ',' << format_real(c.value->p) << ',' << c.value->n << ','
            << (c.significant() ? 1 : 0) << '\n';
      else
        out << ",,,\n";
    }
  }
}

}  // namespace commprof
