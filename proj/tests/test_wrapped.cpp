#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "ratchet/errors.hpp"
#include "ratchet/potential.hpp"
#include "ratchet/stats.hpp"
#include "ratchet/wrapped.hpp"

using namespace ratchet;

namespace {

const FlashingSchedule kSched = FlashingSchedule::make(Rational(12, 5), Rational(12, 5));

// Adaptive Simpson quadrature; the independent oracle for every closed-form
// integral of the analytic stationary density.
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12) {
  // scale the split tolerance by a coarse magnitude estimate so integrands
  // spanning many orders (e.g. exp(-2M)) terminate
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double coarse = std::fabs((b - a) / 6.0 * (fa + 4.0 * fm + fb));
  double tol = rel_tol * std::max(1.0, coarse);
  return simpson(f, a, b, fa, fm, fb, tol, 32);
}

// integral with splits at the kinks of M
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           double kink) {
  if (a < kink && kink < b) return integrate(f, a, kink) + integrate(f, kink, b);
  return integrate(f, a, b);
}

ScaledWalkParams walk(double lambda, double kappa, int n) {
  return {RatchetParams::from_lambda(1, 4, lambda, kappa), n, WalkVariant::kImproved};
}

}  // namespace

TEST_CASE("free-phase matrix of the untilted walk is doubly stochastic") {
  ScaledWalkParams w{RatchetParams::from_gamma(1, 4, 0.0, 0.0), 5, WalkVariant::kImproved};
  auto P = build_phase_matrix(w, PhaseKind::kFree, 7);
  const int s = P.states;
  for (int i = 0; i < s; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < s; ++j) {
      row += P.at(i, j);
      col += P.at(j, i);
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
  }
  auto pi = stationary_vector(build_period_matrix(w, kSched));
  for (double v : pi.probs) CHECK(v == doctest::Approx(1.0 / s).epsilon(1e-8));
}

TEST_CASE("three-step phase matrix equals brute-force enumeration") {
  ScaledWalkParams w{RatchetParams::from_lambda(1, 4, 0.8, 0.1), 2, WalkVariant::kImproved};
  auto probs = walk_probs(w);
  auto P = build_phase_matrix(w, PhaseKind::kRatchet, 3);
  const int nL = 8;
  for (int start = 0; start < nL; ++start) {
    std::map<int, double> oracle;
    for (int word = 0; word < 8; ++word) {
      int site = start;
      double prob = 1.0;
      for (int s = 0; s < 3; ++s) {
        double up = site % nL < 2 ? probs.p0 : probs.p1;
        if (word >> s & 1) {
          prob *= up;
          site = (site + 1) % nL;
        } else {
          prob *= 1.0 - up;
          site = (site + nL - 1) % nL;
        }
      }
      oracle[site] += prob;
    }
    for (int j = 0; j < nL; ++j) {
      double expect = oracle.count(j) ? oracle[j] : 0.0;
      CHECK(P.at(start, j) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("period matrix: parity fix and row stochasticity") {
  auto P = build_period_matrix(walk(2.0, 0.1, 10), kSched);
  CHECK(P.steps_used == kSched.steps_per_period(10) + 1);  // nL and steps both even
  for (int i = 0; i < P.states; ++i) {
    double row = 0.0;
    for (int j = 0; j < P.states; ++j) row += P.at(i, j);
    CHECK(std::fabs(row - 1.0) < 1e-10);
  }
  // odd nL needs no fix
  ScaledWalkParams w5{RatchetParams::from_lambda(1, 5, 2.0, 0.1), 5, WalkVariant::kImproved};
  auto sched1 = FlashingSchedule::make(Rational(1), Rational(1));
  ScaledWalkParams w3{RatchetParams::from_lambda(1, 3, 2.0, 0.1), 3, WalkVariant::kImproved};
  CHECK(build_period_matrix(w3, sched1).steps_used == sched1.steps_per_period(3));
}

TEST_CASE("period matrix row equals wrapped propagation") {
  auto w = walk(2.0, 0.1, 5);
  auto P = build_period_matrix(w, kSched);
  const int nL = P.states;
  for (int start : {0, 3, 17}) {
    auto d = propagate_flashing(LatticeDistribution::point_mass(5, start), w, kSched,
                                kSched.steps_per_period(5));
    auto s = walk_probs(w);
    d = step_ratchet(d, s.p0, s.p1, 5, 1, 4);  // the appended parity-fix step
    std::vector<double> wrapped(nL, 0.0);
    for (std::int64_t j = d.min_site(); j <= d.max_site(); ++j) {
      wrapped[static_cast<size_t>(((j % nL) + nL) % nL)] += d.prob_at(j);
    }
    for (int j = 0; j < nL; ++j) {
      CHECK(P.at(start, j) == doctest::Approx(wrapped[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("stationary vector of a hand-solved two-state chain") {
  PeriodMatrix P;
  P.n = 1;
  P.states = 2;
  P.steps_used = 1;
  P.entries = {0.9, 0.1, 0.2, 0.8};
  auto pi = stationary_vector(P);
  CHECK(pi.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(pi.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("lifting the wrapped law onto [-(1-alpha)L, alphaL)") {
  WrappedDistribution d;
  d.n = 10;
  d.probs.assign(40, 0.0);
  d.probs[10] = 1.0;  // site nl
  auto lifted = lift_stationary(d, 1, 4);
  CHECK(lifted.prob_at(10 - 40) == 1.0);  // x = alphaL - L = -3
  CHECK(lifted.min_site() == -30);
  CHECK(lifted.max_site() == 9);

  WrappedDistribution at0;
  at0.n = 10;
  at0.probs.assign(40, 0.0);
  at0.probs[0] = 1.0;
  CHECK(lift_stationary(at0, 1, 4).prob_at(0) == 1.0);

  WrappedDistribution uni;
  uni.n = 10;
  uni.probs.assign(40, 1.0 / 40.0);
  auto lu = lift_stationary(uni, 1, 4);
  // mean of the lattice uniform on [-3, 1): (alpha - 1/2)L - 1/(2n)
  CHECK(lu.mean_x() == doctest::Approx(-1.0 - 0.05).epsilon(1e-12));
  CHECK(lu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stationarity: one full period returns the lifted law") {
  auto w = walk(2.0, 0.2, 10);
  auto run = run_from_stationarity(w, kSched);
  const int nL = 40;
  std::vector<double> wrapped(nL, 0.0);
  for (std::int64_t j = run.final_.min_site(); j <= run.final_.max_site(); ++j) {
    wrapped[static_cast<size_t>(((j % nL) + nL) % nL)] += run.final_.prob_at(j);
  }
  double l1 = 0.0;
  for (int j = 0; j < nL; ++j) l1 += std::fabs(wrapped[j] - run.pi.probs[j]);
  CHECK(l1 < 1e-10);
  CHECK(run.at_tau1.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no potential: displacement from stationarity is pure drift") {
  // lambda = 0 degenerates both phases to the same biased free walk
  auto w = walk(0.0, 0.5, 10);
  auto run = run_from_stationarity(w, kSched);
  double per_step = -0.5 / 100.0;  // -kappa / n^2 in x units
  CHECK(run.mean_displacement ==
        doctest::Approx(per_step * static_cast<double>(run.steps_used)).epsilon(1e-9));
  CHECK(std::fabs(run.mean_displacement - (-0.5 * 4.8)) <= 1.0 / 10.0);
}

TEST_CASE("analytic stationary: untilted density is Boltzmann-like") {
  auto st = analytic_stationary(RatchetParams::from_gamma(1, 4, 1.875, 0.0));
  // phi proportional to e^{-2 gamma V}: check pointwise ratios
  auto params = RatchetParams::from_gamma(1, 4, 1.875, 0.0);
  for (double x : {0.2, 0.7, 1.0, 2.3, 3.6}) {
    double expect = std::exp(-2.0 * 1.875 * (sawtooth_V(x, params) - sawtooth_V(0.5, params)));
    CHECK(st.evaluate(x) / st.evaluate(0.5) == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK(st.mass_between(0, 4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.evaluate(0.0) == doctest::Approx(st.evaluate(4.0)).epsilon(1e-12));
}

TEST_CASE("analytic stationary: skewness identity at kappa = 0") {
  for (double gamma : {0.5, 1.875, 5.0}) {
    for (auto [l, L] : std::initializer_list<std::pair<int, int>>{{1, 4}, {1, 3}, {2, 3}}) {
      auto st = analytic_stationary(RatchetParams::from_gamma(l, L, gamma, 0.0));
      double alpha = static_cast<double>(l) / L;
      CHECK(std::fabs(st.skewness() - (2.0 * alpha - 1.0)) < 1e-10);
    }
  }
}

TEST_CASE("analytic stationary: constant drift wraps to the uniform density") {
  // gamma = 0 makes the wrapped process rotation invariant, so phi = 1/L
  // regardless of kappa (the exponential profile would violate phi(0)=phi(L))
  auto st = analytic_stationary(RatchetParams::from_gamma(1, 4, 0.0, 0.7));
  for (double x : {0.0, 0.9, 1.7, 3.2, 4.0}) {
    CHECK(st.evaluate(x) == doctest::Approx(0.25).epsilon(1e-12));
  }
  auto quad = integrate([&](double x) { return st.evaluate(x); }, 0.0, 4.0);
  CHECK(quad == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("analytic stationary against adaptive quadrature") {
  std::mt19937 gen(987);
  std::uniform_real_distribution<double> gammas(0.2, 3.0);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const std::pair<int, int> shapes[] = {{1, 4}, {1, 3}, {2, 3}, {3, 4}};
  for (int draw = 0; draw < 20; ++draw) {
    auto [l, L] = shapes[draw % 4];
    double alpha = static_cast<double>(l) / L;
    double gamma = gammas(gen);
    // stay inside the ratchet regime
    double kappa = -gamma / alpha + unit(gen) * (gamma / (1 - alpha) + gamma / alpha);
    auto params = RatchetParams::from_gamma(l, L, gamma, kappa);
    REQUIRE(params.is_ratchet());
    auto st = analytic_stationary(params);
    double mass = integrate_piecewise([&](double x) { return st.evaluate(x); }, 0.0, L,
                                      static_cast<double>(l));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    double mean = integrate_piecewise([&](double x) { return x * st.evaluate(x); }, 0.0, L,
                                      static_cast<double>(l));
    CHECK(st.mean() == doctest::Approx(mean).epsilon(1e-8));
    double split_mass =
        integrate([&](double x) { return st.evaluate(x); }, 0.0, static_cast<double>(l));
    CHECK(st.mass_between(0, l) == doctest::Approx(split_mass).epsilon(1e-8));
  }
}

TEST_CASE("analytic stationary matches the alternative convolution form") {
  // phi(x) proportional to e^{2M(x)} * int_x^{x+L} e^{-2M(y)} dy with
  // M(y+L) = M(y) + M(L); proportionality checked by quadrature
  std::mt19937 gen(555);
  std::uniform_real_distribution<double> gammas(0.3, 2.0);
  std::uniform_real_distribution<double> kappas(-0.5, 0.5);
  for (int draw = 0; draw < 5; ++draw) {
    auto params = RatchetParams::from_gamma(1, 4, gammas(gen), kappas(gen));
    auto st = analytic_stationary(params);
    const double L = 4.0;
    auto M_ext = [&](double y) {
      if (y <= L) return potential_M(y, params);
      return potential_M(y - L, params) + potential_M(L, params);
    };
    auto reimann = [&](double x) {
      double inner = integrate([&](double y) { return std::exp(-2.0 * M_ext(y)); }, x, x + L,
                               1e-13);
      return std::exp(2.0 * potential_M(x, params)) * inner;
    };
    double ref = st.evaluate(0.5) / reimann(0.5);
    for (double x : {0.1, 1.5, 2.5, 3.7}) {
      CHECK(st.evaluate(x) / reimann(x) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("analytic stationary overflow guard") {
  CHECK_THROWS_AS(analytic_stationary(RatchetParams::from_gamma(1, 4, 100.0, 0.0)),
                  NumericalError);
}

TEST_CASE("analytic lifted mean of the uniform density") {
  auto st = analytic_stationary(RatchetParams::from_gamma(1, 4, 0.0, 0.0));
  // continuous uniform lifted onto [-3, 1): mean (alpha - 1/2) L = -1
  CHECK(st.mean_lifted() == doctest::Approx(-1.0).epsilon(1e-12));
}
