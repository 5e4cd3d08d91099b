#include "ratchet/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratchet/errors.hpp"
#include "ratchet/rw_approx.hpp"

namespace ratchet {

namespace {

void check_stability(const RatchetParams& params, bool flash_on, double kappa_off, int n) {
  double bound;
  if (flash_on) {
    double mu0 = -params.gamma / params.alpha() - params.kappa;
    double mu1 = params.gamma / (1.0 - params.alpha()) - params.kappa;
    bound = std::max(std::fabs(mu0), std::fabs(mu1));
  } else {
    bound = std::fabs(kappa_off);
  }
  if (!(bound < n)) {
    throw NumericalError("explicit scheme unstable: max |mu| = " + std::to_string(bound) +
                         " >= n = " + std::to_string(n));
  }
}

struct FpWorker {
  std::vector<double> cur, nxt, mu;
  std::int64_t offset = 0;
  double truncated = 0.0;
  int n = 1;

  void load(const LatticeDistribution& d) {
    cur = d.probs;
    offset = d.offset;
    truncated = d.truncated_mass;
    n = d.n;
  }

  // Per-site drift values mu(y_j) for the current support.
  void fill_mu(const RatchetParams& params, bool flash_on, double kappa_off) {
    mu.resize(cur.size());
    if (!flash_on) {
      std::fill(mu.begin(), mu.end(), -kappa_off);
      return;
    }
    for (size_t i = 0; i < cur.size(); ++i) {
      double y = static_cast<double>(offset + static_cast<std::int64_t>(i)) / n;
      mu[i] = drift_mu(y, params);
    }
  }

  void advance() {
    const size_t len = cur.size();
    const double inv_n = 1.0 / n;
    nxt.resize(len + 2);
    auto down = [&](size_t i) { return 0.5 * cur[i] * (1.0 - mu[i] * inv_n); };
    auto up = [&](size_t i) { return 0.5 * cur[i] * (1.0 + mu[i] * inv_n); };
    nxt[0] = down(0);
    nxt[1] = len > 1 ? down(1) : 0.0;
    for (size_t i = 2; i < len; ++i) nxt[i] = down(i) + up(i - 2);
    if (len == 1) {
      nxt[2] = up(0);
    } else {
      nxt[len] = up(len - 2);
      nxt[len + 1] = up(len - 1);
    }
    cur.swap(nxt);
    --offset;
    size_t lo = 0, hi = cur.size();
    while (lo < hi && cur[lo] < kTailThreshold) truncated += cur[lo++];
    while (hi > lo && cur[hi - 1] < kTailThreshold) truncated += cur[--hi];
    if (lo > 0 || hi < cur.size()) {
      cur.erase(cur.begin() + hi, cur.end());
      cur.erase(cur.begin(), cur.begin() + lo);
      offset += static_cast<std::int64_t>(lo);
    }
    if (truncated > kTruncationBudget) {
      throw NumericalError("tail-truncation budget exceeded: " + std::to_string(truncated));
    }
    if (cur.empty()) throw NumericalError("grid truncated to nothing");
  }

  FpGrid store(Parity parity) const {
    FpGrid g;
    g.dist.n = n;
    g.dist.offset = offset;
    g.dist.probs = cur;
    g.dist.parity = parity;
    g.dist.truncated_mass = truncated;
    return g;
  }
};

}  // namespace

FpGrid fp_step(const FpGrid& g, const RatchetParams& params, bool flash_on,
               double kappa_off) {
  if (g.dist.probs.empty()) throw std::invalid_argument("empty grid");
  check_stability(params, flash_on, kappa_off, g.dist.n);
  FpWorker w;
  w.load(g.dist);
  w.fill_mu(params, flash_on, kappa_off);
  w.advance();
  return w.store(g.dist.parity);
}

FpGrid fp_propagate(const FpGrid& g0, const RatchetParams& params,
                    const FlashingSchedule& sched, int n, std::int64_t total_steps) {
  if (g0.dist.probs.empty()) throw std::invalid_argument("empty grid");
  if (g0.dist.n != n) throw std::invalid_argument("grid scale differs from n");
  if (total_steps < 0) throw std::invalid_argument("negative step count");
  sched.require_scale(n);
  check_stability(params, true, params.kappa, n);
  check_stability(params, false, params.kappa, n);
  const std::int64_t k1 = sched.steps_off(n);
  const std::int64_t period = k1 + sched.steps_on(n);

  FpWorker w;
  w.load(g0.dist);
  for (std::int64_t k = 0; k < total_steps; ++k) {
    bool on = k % period >= k1;
    w.fill_mu(params, on, params.kappa);
    w.advance();
  }
  return w.store(g0.dist.parity);
}

double equivalence_report(const RatchetParams& params, const FlashingSchedule& sched,
                          int n, std::int64_t steps,
                          std::optional<double> lambda_override) {
  FpGrid fp = fp_propagate(FpGrid::point_start(n, 0), params, sched, n, steps);

  double lambda = lambda_override ? *lambda_override : params.lambda();
  ScaledWalkParams w{RatchetParams::from_lambda(params.l, params.L, lambda, params.kappa),
                     n, WalkVariant::kImproved};
  LatticeDistribution rw =
      propagate_flashing(LatticeDistribution::point_mass(n, 0), w, sched, steps);

  std::int64_t lo = std::min(fp.dist.min_site(), rw.min_site());
  std::int64_t hi = std::max(fp.dist.max_site(), rw.max_site());
  double worst = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) {
    worst = std::max(worst, std::fabs(fp.dist.prob_at(j) - rw.prob_at(j)));
  }
  return worst;
}

}  // namespace ratchet
