#include "ratchet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ratchet {

namespace {

double kahan_sum(const std::vector<double>& v) {
  double sum = 0.0, carry = 0.0;
  for (double x : v) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double DensityCurve::integral() const {
  double area = 0.0;
  for (size_t i = 1; i < x.size(); ++i) {
    area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return area;
}

double DensityCurve::value_at(double xq) const {
  if (x.empty()) return 0.0;
  if (xq < x.front() || xq > x.back()) return 0.0;
  auto it = std::lower_bound(x.begin(), x.end(), xq);
  size_t i = static_cast<size_t>(it - x.begin());
  if (i == 0) return y.front();
  if (x[i] == xq) return y[i];
  double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

double DensityCurve::max_on(double lo, double hi) const {
  double best = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lo && x[i] < hi) best = std::max(best, y[i]);
  }
  return best;
}

double density_l1_distance(const DensityCurve& f, const DensityCurve& g) {
  std::vector<double> mesh;
  mesh.reserve(f.x.size() + g.x.size());
  mesh.insert(mesh.end(), f.x.begin(), f.x.end());
  mesh.insert(mesh.end(), g.x.begin(), g.x.end());
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  // every union interval lies fully inside or fully outside each support; a
  // curve contributes zero on intervals outside its own support even when an
  // endpoint touches it
  auto endpoint_values = [](const DensityCurve& c, double a, double b, double& va,
                            double& vb) {
    if (c.x.empty() || a < c.x.front() || b > c.x.back()) {
      va = vb = 0.0;
      return;
    }
    va = c.value_at(a);
    vb = c.value_at(b);
  };
  double total = 0.0;
  for (size_t i = 1; i < mesh.size(); ++i) {
    double a = mesh[i - 1], b = mesh[i];
    double fa, fb, ga, gb;
    endpoint_values(f, a, b, fa, fb);
    endpoint_values(g, a, b, ga, gb);
    double da = fa - ga;
    double db = fb - gb;
    double w = b - a;
    if (da * db >= 0.0) {
      total += 0.5 * (std::fabs(da) + std::fabs(db)) * w;
    } else {
      // sign change: two triangles around the crossing point
      double c = da / (da - db);
      total += 0.5 * (std::fabs(da) * c + std::fabs(db) * (1.0 - c)) * w;
    }
  }
  return total;
}

LatticeDistribution LatticeDistribution::point_mass(int n, std::int64_t site) {
  if (n <= 0) throw std::invalid_argument("scale n must be positive");
  LatticeDistribution d;
  d.n = n;
  d.offset = site;
  d.probs = {1.0};
  d.parity = Parity::kSingleClass;
  return d;
}

double LatticeDistribution::prob_at(std::int64_t site) const {
  std::int64_t i = site - offset;
  if (i < 0 || i >= static_cast<std::int64_t>(probs.size())) return 0.0;
  return probs[static_cast<size_t>(i)];
}

double LatticeDistribution::total_mass() const { return kahan_sum(probs); }

double LatticeDistribution::mean_x() const {
  double sum = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    sum += static_cast<double>(offset + static_cast<std::int64_t>(i)) * probs[i];
  }
  return sum / n;
}

void LatticeDistribution::trim_tails(double threshold) {
  size_t lo = 0, hi = probs.size();
  while (lo < hi && probs[lo] < threshold) {
    truncated_mass += probs[lo];
    ++lo;
  }
  while (hi > lo && probs[hi - 1] < threshold) {
    truncated_mass += probs[hi - 1];
    --hi;
  }
  if (lo == 0 && hi == probs.size()) return;
  probs.erase(probs.begin() + hi, probs.end());
  probs.erase(probs.begin(), probs.begin() + lo);
  offset += static_cast<std::int64_t>(lo);
}

DensityCurve LatticeDistribution::to_density() const {
  DensityCurve curve;
  if (probs.empty()) return curve;
  if (parity == Parity::kMixed) {
    curve.x.reserve(probs.size());
    curve.y.reserve(probs.size());
    for (size_t i = 0; i < probs.size(); ++i) {
      curve.x.push_back(static_cast<double>(offset + static_cast<std::int64_t>(i)) / n);
      curve.y.push_back(probs[i] * n);
    }
    return curve;
  }
  // Single-class: identify the occupied parity from the first nonzero entry.
  size_t first = 0;
  while (first < probs.size() && probs[first] == 0.0) ++first;
  if (first == probs.size()) throw std::invalid_argument("to_density on an all-zero distribution");
  size_t step0 = first % 2;
  curve.x.reserve(probs.size() / 2 + 1);
  curve.y.reserve(probs.size() / 2 + 1);
  for (size_t i = step0; i < probs.size(); i += 2) {
    curve.x.push_back(static_cast<double>(offset + static_cast<std::int64_t>(i)) / n);
    curve.y.push_back(probs[i] * n / 2.0);
  }
  return curve;
}

}  // namespace ratchet
