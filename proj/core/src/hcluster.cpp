#include "commprof/hcluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "commprof/error.hpp"

namespace commprof {

std::string_view to_string(Linkage l) { return l == Linkage::Ward ? "ward" : "average"; }

namespace {

std::vector<double> distances(std::span<const double> s, std::size_t n) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = s[i * n + j];
      const double b = s[j * n + i];
      if (std::isnan(a) != std::isnan(b) || (!std::isnan(a) && std::abs(a - b) > 1e-9))
        throw Error("similarity matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (i != j && !std::isnan(a)) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
    }
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = 0.5 * (s[i * n + j] + s[j * n + i]);
      double normalised = 0.0;
      if (!std::isnan(a)) normalised = hi > lo ? (a - lo) / (hi - lo) : 1.0;
      d[i * n + j] = 1.0 - normalised;
    }
  }
  return d;
}

}  // namespace

OrderedMatrix hcluster_order(std::span<const double> similarity, std::size_t size, Linkage linkage) {
  if (similarity.size() != size * size) throw Error("similarity matrix has the wrong number of entries");
  OrderedMatrix out;
  out.size = size;
  out.similarity.assign(similarity.begin(), similarity.end());
  if (size == 0) return out;

  auto d = distances(similarity, size);
  if (linkage == Linkage::Ward)
    for (auto& x : d) x *= x;

  std::vector<std::size_t> id(size);
  std::vector<std::size_t> count(size, 1);
  std::vector<bool> alive(size, true);
  for (std::size_t i = 0; i < size; ++i) id[i] = i;

  auto height_of = [&](double x) { return linkage == Linkage::Ward ? std::sqrt(std::max(x, 0.0)) : x; };
  double floor_height = 0.0;
  for (std::size_t step = 0; step + 1 < size; ++step) {
    // Closest live pair; ties go to the smallest (i, j).
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < size; ++j) {
        if (alive[j] && d[i * size + j] < best) {
          best = d[i * size + j];
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(count[bi]);
    const double nj = static_cast<double>(count[bj]);
    for (std::size_t k = 0; k < size; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      const double nk = static_cast<double>(count[k]);
      const double dik = d[bi * size + k];
      const double djk = d[bj * size + k];
      double merged;
      if (linkage == Linkage::Ward)
        merged = ((ni + nk) * dik + (nj + nk) * djk - nk * best) / (ni + nj + nk);
      else
        merged = (ni * dik + nj * djk) / (ni + nj);
      d[bi * size + k] = d[k * size + bi] = merged;
    }
    floor_height = std::max(floor_height, height_of(best));
    out.merges.push_back({id[bi], id[bj], floor_height, count[bi] + count[bj]});
    count[bi] += count[bj];
    alive[bj] = false;
    id[bi] = size + step;
  }

  // Leaf order: depth-first, the child that merged at the smaller height
  // (a leaf counts as height 0) first; ties keep the smaller first leaf.
  auto tightness = [&](std::size_t node) { return node < size ? 0.0 : out.merges[node - size].height; };
  std::vector<std::size_t> first_leaf(size + out.merges.size());
  for (std::size_t i = 0; i < size; ++i) first_leaf[i] = i;
  for (std::size_t k = 0; k < out.merges.size(); ++k)
    first_leaf[size + k] = std::min(first_leaf[out.merges[k].left], first_leaf[out.merges[k].right]);

  std::vector<std::size_t> stack{size + out.merges.size() - 1};
  if (out.merges.empty()) stack = {0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < size) {
      out.order.push_back(node);
      continue;
    }
    auto a = out.merges[node - size].left;
    auto b = out.merges[node - size].right;
    const double ta = tightness(a);
    const double tb = tightness(b);
    if (tb < ta || (tb == ta && first_leaf[b] < first_leaf[a])) std::swap(a, b);
    stack.push_back(b);
    stack.push_back(a);
  }
  return out;
}

std::string canonical_tree(const OrderedMatrix& m, std::span<const std::string> labels) {
  if (labels.size() != m.size) throw Error("label count does not match the matrix");
  std::vector<std::string> text(m.size + m.merges.size());
  for (std::size_t i = 0; i < m.size; ++i) text[i] = labels[i];
  for (std::size_t k = 0; k < m.merges.size(); ++k) {
    auto a = text[m.merges[k].left];
    auto b = text[m.merges[k].right];
    if (b < a) std::swap(a, b);
    text[m.size + k] = "(" + a + "," + b + ")";
  }
  return text.empty() ? std::string{} : text.back();
}

}  // namespace commprof
