#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "commprof/detectors.hpp"
#include "commprof/error.hpp"
#include "commprof/random.hpp"

namespace commprof {
namespace {

constexpr double kTolerance = 1e-10;

// Modularity matrix restricted to one community g:
//   B(g)_ij = A_ij - k_i k_j / 2m - delta_ij * sum_{l in g} B_il
class Submatrix {
 public:
  Submatrix(const Graph& g, const std::vector<NodeId>& nodes, std::vector<std::int64_t>& slot)
      : g_(g), nodes_(nodes), slot_(slot), two_m_(2.0 * static_cast<double>(g.edge_count())) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) slot_[nodes_[i]] = static_cast<std::int64_t>(i);
    degree_.resize(nodes_.size());
    double volume = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      degree_[i] = static_cast<double>(g.degree(nodes_[i]));
      volume += degree_[i];
    }
    diagonal_.resize(nodes_.size());
    bound_ = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      double inside = 0.0;
      for (NodeId w : g.neighbors(nodes_[i]))
        if (slot_[w] >= 0) inside += 1.0;
      const double expected = degree_[i] * volume / two_m_;
      diagonal_[i] = inside - expected;
      // Gershgorin radius plus |diagonal| bounds every eigenvalue's magnitude.
      bound_ = std::max(bound_, 2.0 * (inside + expected));
    }
  }

  ~Submatrix() {
    for (NodeId v : nodes_) slot_[v] = -1;
  }

  std::size_t size() const { return nodes_.size(); }
  double bound() const { return bound_; }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    double kx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) kx += degree_[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ax = 0.0;
      for (NodeId w : g_.neighbors(nodes_[i])) {
        const auto j = slot_[w];
        if (j >= 0) ax += x[static_cast<std::size_t>(j)];
      }
      y[i] = ax - degree_[i] * kx / two_m_ - diagonal_[i] * x[i];
    }
  }

 private:
  const Graph& g_;
  const std::vector<NodeId>& nodes_;
  std::vector<std::int64_t>& slot_;
  double two_m_;
  std::vector<double> degree_;
  std::vector<double> diagonal_;
  double bound_ = 0.0;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Leading eigenpair of B(g) by power iteration on B(g) + shift * I, whose
// spectrum is non-negative so the dominant eigenvalue is the largest one of B(g).
std::pair<double, std::vector<double>> leading_pair(const Submatrix& b, std::size_t max_iterations,
                                                    const Deadline& deadline) {
  const std::size_t n = b.size();
  const double shift = b.bound() + 1.0;
  std::vector<double> x(n);
  Rng rng(0x5eed);
  for (auto& xi : x) xi = 0.5 + rng.uniform();
  double norm = std::sqrt(dot(x, x));
  for (auto& xi : x) xi /= norm;

  std::vector<double> y(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (it % 1024 == 1023) deadline.check();
    b.multiply(x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
    norm = std::sqrt(dot(y, y));
    if (norm == 0.0) return {-shift, x};
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    std::swap(x, y);
    if (change < kTolerance) {
      b.multiply(x, y);
      return {dot(x, y), x};
    }
  }
  throw Error("leading eigenvector did not converge");
}

}  // namespace

Partition detect_leading_eigenvector(const Graph& g, const Deadline& deadline) {
  deadline.check();
  const std::size_t n = g.node_count();
  if (g.edge_count() == 0) return Partition::singletons(n);
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  const auto max_iterations = static_cast<std::size_t>(
      1e5 * std::max(1.0, std::log(static_cast<double>(n))));

  std::vector<std::uint32_t> label = connected_components(g);
  std::uint32_t next_label = 0;
  for (auto c : label) next_label = std::max(next_label, c + 1);
  std::deque<std::vector<NodeId>> pending(next_label);
  for (NodeId v = 0; v < n; ++v) pending[label[v]].push_back(v);

  std::vector<std::int64_t> slot(n, -1);
  while (!pending.empty()) {
    std::vector<NodeId> nodes = std::move(pending.front());
    pending.pop_front();
    if (nodes.size() < 2) continue;

    std::vector<NodeId> plus;
    std::vector<NodeId> minus;
    {
      Submatrix b(g, nodes, slot);
      std::pair<double, std::vector<double>> eig;
      try {
        eig = leading_pair(b, max_iterations, deadline);
      } catch (const TimeoutError&) {
        throw;
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " while splitting a community of " +
                    std::to_string(nodes.size()) + " nodes (first node '" + g.label(nodes.front()) +
                    "')");
      }
      const auto& [lambda, vec] = eig;
      if (lambda <= kTolerance) continue;

      std::vector<double> s(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) s[i] = vec[i] > 0.0 ? 1.0 : -1.0;
      std::vector<double> bs(nodes.size());
      b.multiply(s, bs);
      const double gain = dot(s, bs) / (2.0 * two_m);
      if (gain <= 1e-12) continue;
      for (std::size_t i = 0; i < nodes.size(); ++i) (s[i] > 0 ? plus : minus).push_back(nodes[i]);
    }
    if (plus.empty() || minus.empty()) continue;
    for (NodeId v : minus) label[v] = next_label;
    ++next_label;
    pending.push_back(std::move(plus));
    pending.push_back(std::move(minus));
  }
  return Partition::from_labels(label);
}

}  // namespace commprof
