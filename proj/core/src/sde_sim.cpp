#include "ratchet/sde_sim.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ratchet/errors.hpp"
#include "ratchet/rng.hpp"

namespace ratchet {

namespace {

constexpr std::uint32_t kDomainSteps = 0;
constexpr std::uint32_t kDomainInitial = 1;
constexpr size_t kNoiseBlock = 4096;

struct EmKernel {
  double L;
  double kink;      // alpha * L = l, the drift-branch boundary
  double inv_L;
  double d_on0;     // -(gamma * (1/alpha) + kappa) * h, steep branch
  double d_on1;     // -(gamma * (-1/(1-alpha)) + kappa) * h, shallow branch
  double d_off;     // -kappa * h
  double inv_n;
  std::int64_t phase_off;     // steps per off phase (total_steps if no schedule)
  std::int64_t phase_period;  // off + on steps
  bool always_on;

  explicit EmKernel(const EmConfig& cfg) {
    const RatchetParams& p = cfg.base;
    const double h = 1.0 / (static_cast<double>(cfg.n) * cfg.n);
    L = p.L;
    kink = p.l;
    inv_L = 1.0 / L;
    d_on0 = -(p.gamma / p.alpha() + p.kappa) * h;
    d_on1 = (p.gamma / (1.0 - p.alpha()) - p.kappa) * h;
    d_off = -p.kappa * h;
    inv_n = 1.0 / cfg.n;
    if (cfg.sched) {
      cfg.sched->require_scale(cfg.n);
      phase_off = cfg.sched->steps_off(cfg.n);
      phase_period = phase_off + cfg.sched->steps_on(cfg.n);
      always_on = false;
    } else {
      phase_off = 0;
      phase_period = 1;
      always_on = true;
    }
  }

  bool on_at(std::int64_t k) const {
    return always_on || (k % phase_period) >= phase_off;
  }

  // First step index > k at which the phase indicator changes.
  std::int64_t phase_end(std::int64_t k) const {
    if (always_on) return std::numeric_limits<std::int64_t>::max();
    const std::int64_t r = k % phase_period;
    return k - r + (r < phase_off ? phase_off : phase_period);
  }

  // Runs steps [k0, k1) of a single path. Steps are processed in blocks that
  // stay inside one phase, so the inner loops carry no per-step phase test,
  // and the noise buffer is refilled per block so the Philox/quantile work
  // pipelines independently of the serial recurrence.
  double run(double x0, const EmConfig& cfg, std::int64_t path, std::int64_t k0,
             std::int64_t k1, std::vector<double>* trace) const {
    CounterStream stream{cfg.seed, static_cast<std::uint32_t>(path), kDomainSteps};
    double x = x0;
    double noise[kNoiseBlock];
    std::int64_t k = k0;
    while (k < k1) {
      const std::int64_t seg_end = std::min(k1, phase_end(k));
      const std::int64_t block = std::min<std::int64_t>(kNoiseBlock, seg_end - k);
      if (cfg.force_zero_noise) {
        std::fill(noise, noise + block, 0.0);
      } else {
        std::int64_t i = 0;
        while (i < block) {
          const std::uint64_t gi = static_cast<std::uint64_t>(k + i);
          if ((gi & 1) == 0 && i + 1 < block) {
            auto u = stream.uniform_pair(gi >> 1);
            noise[i] = normal_inv_cdf(u[0]);
            noise[i + 1] = normal_inv_cdf(u[1]);
            i += 2;
          } else {
            noise[i] = stream.normal(gi);
            ++i;
          }
        }
      }
      if (on_at(k)) {
        for (std::int64_t i = 0; i < block; ++i) {
          const double r = x - L * std::floor(x * inv_L);
          x += (r < kink ? d_on0 : d_on1) + noise[i] * inv_n;
          if (trace) trace->push_back(x);
        }
      } else {
        for (std::int64_t i = 0; i < block; ++i) {
          x += d_off + noise[i] * inv_n;
          if (trace) trace->push_back(x);
        }
      }
      k += block;
    }
    return x;
  }
};

void validate(const EmConfig& cfg) {
  if (cfg.n <= 0) throw std::invalid_argument("n must be positive");
  if (cfg.paths < 1) throw std::invalid_argument("paths must be >= 1");
  if (cfg.total_steps < 0) throw std::invalid_argument("negative step count");
  if (cfg.paths > (std::int64_t(1) << 32)) {
    throw std::invalid_argument("path count exceeds counter capacity");
  }
}

double draw_initial(const DiscreteInitial& initial, const std::vector<double>& cdf,
                    const EmConfig& cfg, std::int64_t path) {
  CounterStream stream{cfg.seed, static_cast<std::uint32_t>(path), kDomainInitial};
  double u = stream.uniform_pair(0)[0];
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  size_t idx = std::min(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
  return initial.positions[idx];
}

template <typename InitialFn>
SampleSet run_ensemble(InitialFn&& initial_of, const EmConfig& cfg) {
  validate(cfg);
  EmKernel kernel(cfg);
  SampleSet out;
  out.config = cfg;
  out.values.assign(static_cast<size_t>(cfg.paths), 0.0);

  unsigned hw = std::thread::hardware_concurrency();
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw ? hw : 1);
  threads = static_cast<int>(std::min<std::int64_t>(threads, cfg.paths));

  auto worker = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t path = begin; path < end; ++path) {
      double x0 = initial_of(path);
      out.values[static_cast<size_t>(path)] =
          kernel.run(x0, cfg, path, 0, cfg.total_steps, nullptr);
    }
  };

  if (threads <= 1) {
    worker(0, cfg.paths);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    std::int64_t chunk = (cfg.paths + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::int64_t begin = t * chunk;
      std::int64_t end = std::min<std::int64_t>(begin + chunk, cfg.paths);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace

DiscreteInitial DiscreteInitial::from_lattice(const LatticeDistribution& d) {
  DiscreteInitial init;
  init.positions.reserve(d.probs.size());
  init.weights.reserve(d.probs.size());
  for (size_t i = 0; i < d.probs.size(); ++i) {
    if (d.probs[i] <= 0.0) continue;
    init.positions.push_back(static_cast<double>(d.offset + static_cast<std::int64_t>(i)) / d.n);
    init.weights.push_back(d.probs[i]);
  }
  if (init.positions.empty()) throw std::invalid_argument("empty initial distribution");
  return init;
}

double em_terminal(double x0, const EmConfig& cfg, std::int64_t path_index) {
  validate(cfg);
  EmKernel kernel(cfg);
  return kernel.run(x0, cfg, path_index, 0, cfg.total_steps, nullptr);
}

std::vector<double> em_path(double x0, const EmConfig& cfg, std::int64_t path_index) {
  validate(cfg);
  EmKernel kernel(cfg);
  std::vector<double> trace;
  trace.reserve(static_cast<size_t>(cfg.total_steps) + 1);
  trace.push_back(x0);
  kernel.run(x0, cfg, path_index, 0, cfg.total_steps, &trace);
  return trace;
}

SampleSet em_ensemble(double x0, const EmConfig& cfg) {
  return run_ensemble([x0](std::int64_t) { return x0; }, cfg);
}

SampleSet em_ensemble(const DiscreteInitial& initial, const EmConfig& cfg) {
  if (initial.positions.size() != initial.weights.size() || initial.positions.empty()) {
    throw std::invalid_argument("malformed discrete initial law");
  }
  double total = 0.0;
  for (double w : initial.weights) {
    if (w < 0.0) throw std::invalid_argument("negative initial weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("zero-mass initial law");
  std::vector<double> cdf(initial.weights.size());
  double acc = 0.0;
  for (size_t i = 0; i < initial.weights.size(); ++i) {
    acc += initial.weights[i] / total;
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
  return run_ensemble(
      [&initial, &cdf, &cfg](std::int64_t path) {
        return draw_initial(initial, cdf, cfg, path);
      },
      cfg);
}

DensityCurve histogram_density(const SampleSet& s, double bin_width, double lo, double hi) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
  if (s.values.empty()) throw std::invalid_argument("empty sample set");
  if (!(lo < hi)) throw std::invalid_argument("empty histogram range");
  const std::int64_t i_lo = static_cast<std::int64_t>(std::floor(lo / bin_width));
  const std::int64_t i_hi = static_cast<std::int64_t>(std::ceil(hi / bin_width));
  const size_t bins = static_cast<size_t>(i_hi - i_lo);
  std::vector<double> counts(bins, 0.0);
  for (double v : s.values) {
    std::int64_t b = static_cast<std::int64_t>(std::floor(v / bin_width)) - i_lo;
    if (b >= 0 && b < static_cast<std::int64_t>(bins)) counts[static_cast<size_t>(b)] += 1.0;
  }
  const double scale = 1.0 / (static_cast<double>(s.values.size()) * bin_width);
  DensityCurve curve;
  curve.x.reserve(bins);
  curve.y.reserve(bins);
  for (size_t b = 0; b < bins; ++b) {
    curve.x.push_back((static_cast<double>(i_lo + static_cast<std::int64_t>(b)) + 0.5) * bin_width);
    curve.y.push_back(counts[b] * scale);
  }
  return curve;
}

}  // namespace ratchet
