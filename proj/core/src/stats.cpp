#include "ratchet/stats.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "ratchet/errors.hpp"
#include "ratchet/normal.hpp"

namespace ratchet {

double mean_displacement(const LatticeDistribution& d, double x0_mean) {
  return d.mean_x() - x0_mean;
}

double skewness(const LatticeDistribution& d, int l, int L) {
  const std::int64_t nl = static_cast<std::int64_t>(d.n) * l;
  const std::int64_t nL = static_cast<std::int64_t>(d.n) * L;
  double steep = 0.0, shallow = 0.0;
  for (size_t i = 0; i < d.probs.size(); ++i) {
    std::int64_t j = d.offset + static_cast<std::int64_t>(i);
    std::int64_t r = j % nL;
    if (r < 0) r += nL;
    if (r == 0 || r == nl) continue;  // boundary sites belong to neither sum
    if (r < nl) {
      steep += d.probs[i];
    } else {
      shallow += d.probs[i];
    }
  }
  return steep - shallow;
}

PeakReport peak_stats(const DensityCurve& curve, const LatticeDistribution& d, int l,
                      int L, const std::vector<int>& peaks) {
  const std::int64_t nl = static_cast<std::int64_t>(d.n) * l;
  const std::int64_t nL = static_cast<std::int64_t>(d.n) * L;
  for (size_t i = 1; i < peaks.size(); ++i) {
    if (peaks[i] <= peaks[i - 1]) throw std::invalid_argument("peak list must be ascending");
  }
  PeakReport report;
  for (size_t i = 0; i < peaks.size(); ++i) {
    const int g = peaks[i];
    std::int64_t lo = static_cast<std::int64_t>(g) * nL - (nL - nl);
    std::int64_t hi = static_cast<std::int64_t>(g) * nL + nl;
    if (i == 0) lo = std::min(lo, d.min_site());
    if (i + 1 == peaks.size()) hi = std::max(hi, d.max_site() + 1);
    double area = 0.0;
    std::int64_t from = std::max(lo, d.min_site());
    std::int64_t to = std::min(hi - 1, d.max_site());
    for (std::int64_t j = from; j <= to; ++j) area += d.prob_at(j);
    report.locations.push_back(static_cast<double>(g) * L);
    report.areas.push_back(area);
    report.heights.push_back(curve.value_at(static_cast<double>(g) * L));
  }
  return report;
}

LatticeDistribution flashing_run(double lambda, double kappa, int n, int l, int L,
                                 const FlashingSchedule& sched, WalkVariant variant) {
  ScaledWalkParams w{RatchetParams::from_lambda(l, L, lambda, kappa), n, variant};
  return propagate_flashing(LatticeDistribution::point_mass(n, 0), w, sched,
                            sched.steps_per_period(n));
}

double find_kappa0(double lambda, int n, int l, int L, const FlashingSchedule& sched,
                   double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double alpha = static_cast<double>(l) / L;
  auto mean_at = [&](double kappa) {
    return flashing_run(lambda, kappa, n, l, L, sched, WalkVariant::kImproved).mean_x();
  };
  double lo = 0.0;
  double hi = 2.0 * (0.5 - alpha) * L / sched.tau1.to_double();
  double mean_lo = mean_at(lo);
  double mean_hi = mean_at(hi);
  if (!(mean_lo > 0.0 && mean_hi < 0.0)) {
    throw NumericalError("kappa0 bracket failure: mean(" + std::to_string(lo) + ") = " +
                         std::to_string(mean_lo) + ", mean(" + std::to_string(hi) +
                         ") = " + std::to_string(mean_hi));
  }
  double mid = 0.5 * (lo + hi);
  while (hi - lo > 1e-8) {
    mid = 0.5 * (lo + hi);
    double m = mean_at(mid);
    if (std::fabs(m) < tol) return mid;
    if (m > 0.0) {
      lo = mid;  // mean decreasing in kappa
    } else {
      hi = mid;
    }
  }
  return mid;
}

double kappa0_limit(double alpha, double L, double tau1) {
  return (0.5 - alpha) * L / tau1;
}

double astumian_mean_approx(double alpha, double L, double kappa, double tau1) {
  const double sd = std::sqrt(tau1);
  auto cell_prob = [&](std::int64_t j) {
    // B_{tau1} - kappa*tau1 ~ N(-kappa*tau1, tau1)
    double z_hi = ((static_cast<double>(j) + alpha) * L + kappa * tau1) / sd;
    double z_lo = ((static_cast<double>(j) - 1.0 + alpha) * L + kappa * tau1) / sd;
    return normal_cdf(z_hi) - normal_cdf(z_lo);
  };
  double mean = 0.0;
  // expand symmetrically until both tails are below 1e-12
  for (std::int64_t j = 1;; ++j) {
    double up = cell_prob(j);
    double down = cell_prob(-j);
    mean += static_cast<double>(j) * L * (up - down);
    double z_pos = ((static_cast<double>(j) + alpha) * L + kappa * tau1) / sd;
    double z_neg = ((static_cast<double>(-j) - 1.0 + alpha) * L + kappa * tau1) / sd;
    double tail = (1.0 - normal_cdf(z_pos)) + normal_cdf(z_neg);
    if (tail < 1e-12 && j >= 2) break;
    if (j > 10000) throw NumericalError("astumian sum failed to converge");
  }
  return mean;
}

SweepGrid sweep(const std::vector<double>& lambda_values,
                const std::vector<double>& theta_values, double kappa0_ref, int n, int l,
                int L, const FlashingSchedule& sched, int threads) {
  if (lambda_values.empty() || theta_values.empty()) {
    throw std::invalid_argument("empty sweep axes");
  }
  SweepGrid grid;
  grid.lambda_values = lambda_values;
  grid.theta_values = theta_values;
  const size_t cells = lambda_values.size() * theta_values.size();
  grid.mean.assign(cells, 0.0);
  grid.skewness.assign(cells, 0.0);

  unsigned hw = std::thread::hardware_concurrency();
  int workers = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
  workers = static_cast<int>(std::min<size_t>(workers, cells));

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_guard;

  auto body = [&]() {
    for (size_t cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1)) {
      if (failed.load()) return;
      size_t il = cell / theta_values.size();
      size_t it = cell % theta_values.size();
      try {
        double kappa = theta_values[it] * kappa0_ref / 2.0;
        LatticeDistribution d =
            flashing_run(lambda_values[il], kappa, n, l, L, sched, WalkVariant::kImproved);
        grid.mean[cell] = d.mean_x();
        grid.skewness[cell] = skewness(d, l, L);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_guard);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw NumericalError("sweep failed: " + error_message);
  return grid;
}

}  // namespace ratchet
