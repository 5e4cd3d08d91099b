#include "ratchet/wrapped.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ratchet/errors.hpp"

namespace ratchet {

namespace {

// --- dense row-stochastic matrix helpers -----------------------------------

std::vector<double> identity(int s) {
  std::vector<double> m(static_cast<size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i) m[static_cast<size_t>(i) * s + i] = 1.0;
  return m;
}

// C = A * B; the contraction index runs ascending so the summation order is
// fixed regardless of any future row-level parallelism.
std::vector<double> multiply(const std::vector<double>& A, const std::vector<double>& B,
                             int s) {
  std::vector<double> C(static_cast<size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i) {
    double* ci = C.data() + static_cast<size_t>(i) * s;
    const double* ai = A.data() + static_cast<size_t>(i) * s;
    for (int k = 0; k < s; ++k) {
      const double a = ai[k];
      if (a == 0.0) continue;
      const double* bk = B.data() + static_cast<size_t>(k) * s;
      for (int j = 0; j < s; ++j) ci[j] += a * bk[j];
    }
  }
  return C;
}

std::vector<double> matrix_power(std::vector<double> base, std::int64_t e, int s) {
  std::vector<double> acc = identity(s);
  while (e > 0) {
    if (e & 1) acc = multiply(acc, base, s);
    e >>= 1;
    if (e > 0) base = multiply(base, base, s);
  }
  return acc;
}

std::vector<double> one_step_matrix(const ScaledWalkParams& w, PhaseKind phase) {
  const StepProbs s = walk_probs(w);
  const int nL = w.n * w.base.L;
  const int nl = w.n * w.base.l;
  std::vector<double> m(static_cast<size_t>(nL) * nL, 0.0);
  for (int i = 0; i < nL; ++i) {
    double q = phase == PhaseKind::kFree ? s.p : (i < nl ? s.p0 : s.p1);
    m[static_cast<size_t>(i) * nL + (i + 1) % nL] += q;
    m[static_cast<size_t>(i) * nL + (i + nL - 1) % nL] += 1.0 - q;
  }
  return m;
}

// --- closed-form exponential moments of linear pieces -----------------------
//
// e1(z) = (e^z - 1)/z
// e2(z) = (e^z - 1 - z)/z^2
// gg(z) = int_0^1 s e^{zs} ds = (e^z (z-1) + 1)/z^2
// gg2(z) = (gg(z) - 1/2)/z
// The small-|z| branches avoid the cancellation in the closed forms.

double fn_e1(double z) {
  if (z == 0.0) return 1.0;
  return std::expm1(z) / z;
}

double fn_e2(double z) {
  if (std::fabs(z) < 1.0) {
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 64; ++k) {
      term *= z / (k + 2);
      sum += term;
      if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

double fn_gg(double z) {
  if (std::fabs(z) < 1.0) {
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 64; ++k) {
      term *= z * (k + 1) / (static_cast<double>(k) * (k + 2));
      sum += term;
      if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

double fn_gg2(double z) {
  if (std::fabs(z) < 1.0) {
    double term = 1.0 / 3.0, sum = term;
    for (int k = 2; k < 64; ++k) {
      term *= z * (k + 1) / (static_cast<double>(k) * (k + 2));
      sum += term;
      if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
    }
    return sum;
  }
  return (fn_gg(z) - 0.5) / z;
}

struct PieceCoeffs {
  double c1;  // e^{2 m_start} (1 - B * i_start / I_L)
  double c2;  // B / I_L
  double a;   // slope of M on the piece
};

PieceCoeffs coeffs_for(const AnalyticStationary& st, const AnalyticStationary::Piece& p) {
  PieceCoeffs c;
  c.c2 = st.bracket_B / st.i_total;
  c.c1 = std::exp(2.0 * p.m_start) * (1.0 - st.bracket_B * p.i_start / st.i_total);
  c.a = p.slope;
  return c;
}

// int_0^U of phi/phi0 on a piece
double piece_mass(const PieceCoeffs& c, double U) {
  const double z = 2.0 * c.a * U;
  return c.c1 * U * fn_e1(z) - c.c2 * U * U * fn_e2(z);
}

// int_0^U of u * phi/phi0 on a piece
double piece_first_moment(const PieceCoeffs& c, double U) {
  const double z = 2.0 * c.a * U;
  return c.c1 * U * U * fn_gg(z) - c.c2 * U * U * U * fn_gg2(z);
}

}  // namespace

PeriodMatrix build_phase_matrix(const ScaledWalkParams& w, PhaseKind phase,
                                std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  PeriodMatrix P;
  P.n = w.n;
  P.states = w.n * w.base.L;
  P.steps_used = steps;
  P.entries = matrix_power(one_step_matrix(w, phase), steps, P.states);
  return P;
}

PeriodMatrix build_period_matrix(const ScaledWalkParams& w, const FlashingSchedule& sched) {
  sched.require_scale(w.n);
  const int states = w.n * w.base.L;
  const std::int64_t k1 = sched.steps_off(w.n);
  const std::int64_t k2 = sched.steps_on(w.n);
  // With nL and the step count both even, the two parity classes are closed
  // under the period map; one extra ratchet step restores irreducibility.
  const bool parity_fix = states % 2 == 0 && (k1 + k2) % 2 == 0;
  const std::int64_t k2_used = k2 + (parity_fix ? 1 : 0);

  std::vector<double> free_part = matrix_power(one_step_matrix(w, PhaseKind::kFree), k1, states);
  std::vector<double> ratchet_part =
      matrix_power(one_step_matrix(w, PhaseKind::kRatchet), k2_used, states);

  PeriodMatrix P;
  P.n = w.n;
  P.states = states;
  P.steps_used = k1 + k2_used;
  P.entries = multiply(free_part, ratchet_part, states);
  return P;
}

WrappedDistribution stationary_vector(const PeriodMatrix& P) {
  const int s = P.states;
  if (s <= 0 || P.entries.size() != static_cast<size_t>(s) * s) {
    throw std::invalid_argument("malformed period matrix");
  }
  std::vector<double> x(s, 1.0 / s), y(s);
  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < s; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const double* row = P.entries.data() + static_cast<size_t>(i) * s;
      for (int j = 0; j < s; ++j) out[j] += vi * row[j];
    }
  };

  constexpr std::int64_t kCap = 1'000'000;
  double change = 1.0;
  std::int64_t it = 0;
  for (; it < kCap && change >= 1e-13; ++it) {
    apply(x, y);
    // renormalize: rounding in the matrix powers leaves row sums off by
    // O(1e-13), which would otherwise drift the iterate's mass forever
    double mass = 0.0;
    for (int j = 0; j < s; ++j) mass += y[j];
    change = 0.0;
    for (int j = 0; j < s; ++j) {
      double next = 0.5 * (x[j] + y[j] / mass);  // half-lazy sweep
      change += std::fabs(next - x[j]);
      x[j] = next;
    }
  }
  if (it >= kCap) throw NumericalError("stationary power iteration did not converge");

  // one averaging refinement, then renormalize
  apply(x, y);
  double mass = 0.0;
  for (int j = 0; j < s; ++j) {
    x[j] = 0.5 * (x[j] + y[j]);
    mass += x[j];
  }
  for (int j = 0; j < s; ++j) x[j] /= mass;

  apply(x, y);
  double residual = 0.0;
  for (int j = 0; j < s; ++j) residual += std::fabs(y[j] - x[j]);
  if (!(residual < 1e-12)) {
    throw NumericalError("stationary residual " + std::to_string(residual) + " too large");
  }
  WrappedDistribution d;
  d.n = P.n;
  d.probs = std::move(x);
  return d;
}

LatticeDistribution lift_stationary(const WrappedDistribution& d, int l, int L) {
  const int nL = static_cast<int>(d.probs.size());
  if (nL != d.n * L) throw std::invalid_argument("wrapped vector size differs from nL");
  const int nl = d.n * l;
  LatticeDistribution out;
  out.n = d.n;
  out.offset = -static_cast<std::int64_t>(d.n) * (L - l);
  out.parity = Parity::kMixed;
  out.probs.resize(static_cast<size_t>(nL));
  for (int j = 0; j < nL; ++j) {
    // sites j < nl keep index j; sites j >= nl map to j - nL
    std::int64_t lifted = j < nl ? j : j - nL;
    out.probs[static_cast<size_t>(lifted - out.offset)] = d.probs[static_cast<size_t>(j)];
  }
  return out;
}

StationaryRun run_from_stationarity(const ScaledWalkParams& w, const FlashingSchedule& sched) {
  PeriodMatrix P = build_period_matrix(w, sched);
  StationaryRun run;
  run.steps_used = P.steps_used;
  run.pi = stationary_vector(P);
  run.initial = lift_stationary(run.pi, w.base.l, w.base.L);

  const std::int64_t k1 = sched.steps_off(w.n);
  const std::int64_t k2 = sched.steps_on(w.n);
  const std::int64_t extra = P.steps_used - k1 - k2;

  run.at_tau1 = propagate_flashing(run.initial, w, sched, k1);
  LatticeDistribution cur = propagate_flashing(run.initial, w, sched, k1 + k2);
  const StepProbs s = walk_probs(w);
  for (std::int64_t i = 0; i < extra; ++i) {
    cur = step_ratchet(cur, s.p0, s.p1, w.n, w.base.l, w.base.L);
  }
  run.final_ = std::move(cur);
  run.mean_displacement = run.final_.mean_x() - run.initial.mean_x();
  return run;
}

double mean_displacement_from_stationarity(const ScaledWalkParams& w,
                                           const FlashingSchedule& sched) {
  return run_from_stationarity(w, sched).mean_displacement;
}

double AnalyticStationary::evaluate(double x) const {
  if (x < 0.0 || x > static_cast<double>(params.L)) {
    throw std::invalid_argument("phi is defined on [0, L]");
  }
  const Piece& p = x < pieces[1].x_start ? pieces[0] : pieces[1];
  const PieceCoeffs c = coeffs_for(*this, p);
  const double u = x - p.x_start;
  return phi0 * (c.c1 * std::exp(2.0 * c.a * u) - c.c2 * u * fn_e1(2.0 * c.a * u));
}

double AnalyticStationary::mass_between(double a, double b) const {
  if (a > b) throw std::invalid_argument("mass_between requires a <= b");
  a = std::max(a, 0.0);
  b = std::min(b, static_cast<double>(params.L));
  double total = 0.0;
  for (const Piece& p : pieces) {
    double lo = std::max(a, p.x_start);
    double hi = std::min(b, p.x_end);
    if (lo >= hi) continue;
    const PieceCoeffs c = coeffs_for(*this, p);
    total += piece_mass(c, hi - p.x_start) - piece_mass(c, lo - p.x_start);
  }
  return phi0 * total;
}

double AnalyticStationary::mean() const {
  double total = 0.0;
  for (const Piece& p : pieces) {
    const PieceCoeffs c = coeffs_for(*this, p);
    const double U = p.x_end - p.x_start;
    total += p.x_start * piece_mass(c, U) + piece_first_moment(c, U);
  }
  return phi0 * total;
}

double AnalyticStationary::mean_lifted() const {
  return mean() - params.L * mass_between(pieces[1].x_start, params.L);
}

double AnalyticStationary::skewness() const {
  const double split = pieces[1].x_start;  // alpha * L
  return mass_between(0.0, split) - mass_between(split, params.L);
}

AnalyticStationary analytic_stationary(const RatchetParams& params) {
  const double l = params.l;
  const double L = params.L;
  const double a0 = -params.gamma / params.alpha() - params.kappa;
  const double a1 = params.gamma / (1.0 - params.alpha()) - params.kappa;
  const double m_l = -(params.gamma * L + params.kappa * l);
  const double m_L = -params.kappa * L;
  if (std::max(std::fabs(2.0 * m_l), std::fabs(2.0 * m_L)) > 700.0) {
    throw NumericalError("exponent 2|M| exceeds 700; parameters out of range");
  }

  AnalyticStationary st;
  st.params = params;
  const double i_l = l * fn_e1(-2.0 * a0 * l);
  const double i_L = i_l + std::exp(-2.0 * m_l) * (L - l) * fn_e1(-2.0 * a1 * (L - l));
  st.bracket_B = -std::expm1(-2.0 * m_L);
  st.i_total = i_L;
  st.pieces[0] = {0.0, l, 0.0, a0, 0.0};
  st.pieces[1] = {l, L, m_l, a1, i_l};

  st.phi0 = 1.0;
  double raw_mass = 0.0;
  for (const auto& p : st.pieces) {
    raw_mass += piece_mass(coeffs_for(st, p), p.x_end - p.x_start);
  }
  if (!(raw_mass > 0.0) || !std::isfinite(raw_mass)) {
    throw NumericalError("stationary normalization failed");
  }
  st.phi0 = 1.0 / raw_mass;
  return st;
}

}  // namespace ratchet
