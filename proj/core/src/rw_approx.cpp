#include "ratchet/rw_approx.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ratchet/errors.hpp"

namespace ratchet {

namespace {

void require_prob(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw NumericalError(std::string(name) + " = " + std::to_string(v) +
                         " outside (0,1); increase n or shrink lambda/kappa");
  }
}

std::int64_t wrap_mod(std::int64_t j, std::int64_t period) {
  std::int64_t r = j % period;
  return r < 0 ? r + period : r;
}

// One step of P'(j) = P(j+1)*(1 - q(j+1)) + P(j-1)*q(j-1) where q is the
// per-site up-probability of the sources. `up[i]` must hold q(offset + i).
// Output covers sites [offset-1, offset+len], i.e. len+2 entries.
void step_kernel(const std::vector<double>& in, const double* up, const double* down,
                 std::vector<double>& out) {
  const size_t len = in.size();
  out.resize(len + 2);
  out[0] = in[0] * down[0];
  out[1] = len > 1 ? in[1] * down[1] : 0.0;
  for (size_t i = 2; i < len; ++i) {
    out[i] = in[i] * down[i] + in[i - 2] * up[i - 2];
  }
  if (len == 1) {
    out[2] = in[0] * up[0];
  } else {
    out[len] = in[len - 2] * up[len - 2];
    out[len + 1] = in[len - 1] * up[len - 1];
  }
}

struct Propagator {
  std::vector<double> cur, nxt, up, down;
  std::int64_t offset = 0;
  double truncated = 0.0;

  void load(const LatticeDistribution& d) {
    cur = d.probs;
    offset = d.offset;
    truncated = d.truncated_mass;
  }

  void fill_free(double p) {
    up.assign(cur.size(), p);
    down.assign(cur.size(), 1.0 - p);
  }

  void fill_ratchet(double p0, double p1, std::int64_t nl, std::int64_t nL) {
    const size_t len = cur.size();
    up.resize(len);
    down.resize(len);
    std::int64_t r = wrap_mod(offset, nL);
    for (size_t i = 0; i < len; ++i) {
      double q = r < nl ? p0 : p1;
      up[i] = q;
      down[i] = 1.0 - q;
      if (++r == nL) r = 0;
    }
  }

  void advance() {
    step_kernel(cur, up.data(), down.data(), nxt);
    cur.swap(nxt);
    --offset;
    // trim tails below the per-site threshold
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
    if (cur.empty()) throw NumericalError("distribution truncated to nothing");
  }

  LatticeDistribution store(int n, Parity parity) const {
    LatticeDistribution d;
    d.n = n;
    d.offset = offset;
    d.probs = cur;
    d.parity = parity;
    d.truncated_mass = truncated;
    return d;
  }
};

void require_valid(const LatticeDistribution& d) {
  if (d.probs.empty()) throw std::invalid_argument("empty lattice distribution");
  if (d.n <= 0) throw std::invalid_argument("lattice distribution with nonpositive scale");
}

}  // namespace

StepProbs probs_original(const ScaledWalkParams& w) {
  const double n = w.n;
  const double lambda = w.base.lambda();
  const double alpha = w.base.alpha();
  const double rho = 1.0 - lambda / n;
  require_prob(rho, "rho");
  const double eps = w.base.kappa / (2.0 * n);
  const double powed = std::pow(rho, (1.0 - alpha) / alpha);
  StepProbs s;
  s.p = 0.5 - eps;
  s.p0 = powed / (1.0 + powed) - eps;
  s.p1 = 1.0 / (1.0 + rho) - eps;
  require_prob(s.p, "p");
  require_prob(s.p0, "p0");
  require_prob(s.p1, "p1");
  return s;
}

StepProbs probs_improved(const ScaledWalkParams& w) {
  const double n = w.n;
  const double lambda = w.base.lambda();
  const double alpha = w.base.alpha();
  const double kn = w.base.kappa / n;
  StepProbs s;
  s.p = 0.5 * (1.0 - kn);
  s.p0 = 0.5 * (1.0 - lambda * (1.0 - alpha) / (2.0 * n * alpha) - kn);
  s.p1 = 0.5 * (1.0 + lambda / (2.0 * n) - kn);
  require_prob(s.p, "p");
  require_prob(s.p0, "p0");
  require_prob(s.p1, "p1");
  return s;
}

StepProbs walk_probs(const ScaledWalkParams& w) {
  return w.variant == WalkVariant::kOriginal ? probs_original(w) : probs_improved(w);
}

int regime_index(std::int64_t j, int n, int l, int L) {
  std::int64_t nL = static_cast<std::int64_t>(n) * L;
  std::int64_t nl = static_cast<std::int64_t>(n) * l;
  std::int64_t r = j % nL;
  if (r < 0) r += nL;
  return r < nl ? 0 : 1;
}

LatticeDistribution step_free(const LatticeDistribution& d, double p) {
  require_valid(d);
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  Propagator prop;
  prop.load(d);
  prop.fill_free(p);
  prop.advance();
  return prop.store(d.n, d.parity);
}

LatticeDistribution step_ratchet(const LatticeDistribution& d, double p0, double p1,
                                 int n, int l, int L) {
  require_valid(d);
  if (!(p0 > 0.0 && p0 < 1.0) || !(p1 > 0.0 && p1 < 1.0)) {
    throw std::invalid_argument("p0 and p1 must lie in (0,1)");
  }
  Propagator prop;
  prop.load(d);
  prop.fill_ratchet(p0, p1, static_cast<std::int64_t>(n) * l,
                    static_cast<std::int64_t>(n) * L);
  prop.advance();
  return prop.store(d.n, d.parity);
}

LatticeDistribution propagate_flashing(const LatticeDistribution& d0,
                                       const ScaledWalkParams& w,
                                       const FlashingSchedule& sched,
                                       std::int64_t total_steps) {
  require_valid(d0);
  if (d0.n != w.n) throw std::invalid_argument("distribution scale differs from walk scale");
  if (total_steps < 0) throw std::invalid_argument("negative step count");
  sched.require_scale(w.n);
  const StepProbs s = walk_probs(w);
  const std::int64_t k1 = sched.steps_off(w.n);
  const std::int64_t period = k1 + sched.steps_on(w.n);
  const std::int64_t nl = static_cast<std::int64_t>(w.n) * w.base.l;
  const std::int64_t nL = static_cast<std::int64_t>(w.n) * w.base.L;

  Propagator prop;
  prop.load(d0);
  for (std::int64_t k = 0; k < total_steps; ++k) {
    if (k % period < k1) {
      prop.fill_free(s.p);
    } else {
      prop.fill_ratchet(s.p0, s.p1, nl, nL);
    }
    prop.advance();
  }
  return prop.store(w.n, d0.parity);
}

}  // namespace ratchet
