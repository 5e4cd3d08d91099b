#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "ratchet/errors.hpp"
#include "ratchet/fokker_planck.hpp"
#include "ratchet/parrondo.hpp"
#include "ratchet/sde_sim.hpp"
#include "ratchet/stats.hpp"
#include "ratchet/version.hpp"
#include "ratchet/wrapped.hpp"
#include "run_io.hpp"

namespace ratchet::cli {

namespace {

void echo_model(Manifest& m, const ModelOpts& model) {
  m.set("alpha", model.alpha);
  m.set("L", static_cast<long long>(model.L));
  if (model.gamma) {
    m.set("gamma", *model.gamma);
  } else {
    m.set("lambda", model.lambda);
  }
  if (model.kappa) {
    m.set("kappa", *model.kappa);
  } else {
    m.set("theta", model.theta);
    m.set("kappa0", model.kappa0);
    m.set("kappa", model.resolve_kappa());
  }
  m.set("tau1", model.tau1);
  m.set("tau2", model.tau2);
  m.set("n", static_cast<long long>(model.n));
}

void write_density_csv(CsvWriter& csv, const DensityCurve& curve) {
  for (size_t i = 0; i < curve.x.size(); ++i) csv.row({curve.x[i], curve.y[i]});
}

// tilted potential gamma V + kappa x, shrunk vertically by 1/L, sampled on
// the lattice over the density's support
void write_potential_csv(CsvWriter& csv, const RatchetParams& params, int n, double lo,
                         double hi) {
  std::int64_t j0 = static_cast<std::int64_t>(std::floor(lo * n));
  std::int64_t j1 = static_cast<std::int64_t>(std::ceil(hi * n));
  for (std::int64_t j = j0; j <= j1; ++j) {
    double x = static_cast<double>(j) / n;
    csv.row({x, tilted_potential(x, params) / params.L});
  }
}

std::vector<double> parse_range(const std::string& text) {
  // "a:b:count" inclusive linear range
  auto c1 = text.find(':');
  auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("range must be start:stop:count, got " + text);
  }
  double a = std::stod(text.substr(0, c1));
  double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  int count = std::stoi(text.substr(c2 + 1));
  if (count < 1) throw std::invalid_argument("range count must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  }
  return out;
}

struct TableRow {
  double theta;
  PeakReport peaks;
  double mean;
  double skew;
};

void write_table(CsvWriter& csv, const std::vector<TableRow>& rows) {
  for (const auto& r : rows) {
    csv.row({r.theta, r.peaks.areas[0], r.peaks.areas[1], r.peaks.areas[2],
             r.peaks.heights[0], r.peaks.heights[1], r.peaks.heights[2], r.mean, r.skew});
  }
}

}  // namespace

int ModelOpts::resolve_l() const {
  Rational a = parse_rational(alpha);
  if (!(Rational(0) < a) || !(a < Rational(1))) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  if (L % a.den != 0) {
    throw std::invalid_argument("alpha * L must be an integer (alpha=" + alpha +
                                ", L=" + std::to_string(L) + ")");
  }
  return static_cast<int>(a.num * (L / a.den));
}

RatchetParams ModelOpts::params() const {
  int l = resolve_l();
  if (gamma) return RatchetParams::from_gamma(l, L, *gamma, resolve_kappa());
  return RatchetParams::from_lambda(l, L, lambda, resolve_kappa());
}

FlashingSchedule ModelOpts::schedule() const {
  return FlashingSchedule::make(parse_rational(tau1), parse_rational(tau2));
}

int cmd_density(const ModelOpts& model, const DensityOpts& opts, const CommonOpts& common) {
  const RatchetParams params = model.params();
  const FlashingSchedule sched = model.schedule();
  const int n = model.n;
  sched.require_scale(n);
  const std::int64_t k1 = sched.steps_off(n);
  const std::int64_t total = sched.steps_per_period(n);

  const bool from_stationary = opts.start == "stationary";
  double x0 = 0.0;
  std::int64_t start_site = 0;
  if (!from_stationary) {
    if (opts.start.rfind("point:", 0) != 0) {
      throw std::invalid_argument("start must be point:<x> or stationary");
    }
    Rational x = parse_rational(opts.start.substr(6));
    x0 = x.to_double();
    Rational site = x * n;
    if (!site.is_integer()) {
      throw std::invalid_argument("point start must lie on the lattice: x*n integral");
    }
    start_site = site.num;
  }

  OutputDir out(common.out_dir, common.force);
  auto density_path = out.claim("density.csv");
  auto potential_path = out.claim("potential.csv");
  std::filesystem::path t0_path, tau1_path;
  if (from_stationary) {
    t0_path = out.claim("density_t0.csv");
    tau1_path = out.claim("density_tau1.csv");
  }
  auto manifest_path = out.claim("density.manifest");

  Manifest manifest;
  manifest.set("command", "density");
  manifest.set("version", kVersion);
  echo_model(manifest, model);
  manifest.set("method", opts.method);
  manifest.set("start", opts.start);

  DensityCurve final_curve, t0_curve, tau1_curve;
  double truncated = 0.0;
  long long steps_used = total;

  const WalkVariant variant =
      opts.method == "rw" ? WalkVariant::kOriginal : WalkVariant::kImproved;
  ScaledWalkParams w{params, n, variant};

  if (opts.method == "rw" || opts.method == "rw-improved" || opts.method == "fp") {
    LatticeDistribution initial;
    std::int64_t extra = 0;
    if (from_stationary) {
      ScaledWalkParams w_imp{params, n, WalkVariant::kImproved};
      PeriodMatrix P = build_period_matrix(w_imp, sched);
      steps_used = P.steps_used;
      extra = P.steps_used - total;
      initial = lift_stationary(stationary_vector(P), params.l, params.L);
      t0_curve = initial.to_density();
    } else {
      initial = LatticeDistribution::point_mass(n, start_site);
    }
    if (opts.method == "fp") {
      if (from_stationary) {
        tau1_curve = fp_propagate(FpGrid{initial}, params, sched, n, k1).dist.to_density();
      }
      FpGrid fin = fp_propagate(FpGrid{initial}, params, sched, n, total);
      for (std::int64_t e = 0; e < extra; ++e) fin = fp_step(fin, params, true, params.kappa);
      final_curve = fin.dist.to_density();
      truncated = fin.dist.truncated_mass;
    } else {
      if (from_stationary) {
        tau1_curve = propagate_flashing(initial, w, sched, k1).to_density();
      }
      LatticeDistribution fin = propagate_flashing(initial, w, sched, total);
      auto probs = walk_probs(w);
      for (std::int64_t e = 0; e < extra; ++e) {
        fin = step_ratchet(fin, probs.p0, probs.p1, n, params.l, params.L);
      }
      final_curve = fin.to_density();
      truncated = fin.truncated_mass;
    }
  } else if (opts.method == "em") {
    EmConfig cfg;
    cfg.base = params;
    cfg.sched = sched;
    cfg.n = n;
    cfg.paths = opts.paths;
    cfg.seed = common.seed;
    cfg.threads = common.threads;
    manifest.set("paths", static_cast<long long>(opts.paths));
    manifest.set("seed", static_cast<long long>(common.seed));
    manifest.set("bin_width", opts.bin_width);
    auto histogram = [&](const SampleSet& s) {
      double lo = s.values[0], hi = s.values[0];
      for (double v : s.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return histogram_density(s, opts.bin_width, lo, hi + opts.bin_width);
    };
    if (from_stationary) {
      ScaledWalkParams w_imp{params, n, WalkVariant::kImproved};
      PeriodMatrix P = build_period_matrix(w_imp, sched);
      steps_used = P.steps_used;
      auto initial = lift_stationary(stationary_vector(P), params.l, params.L);
      t0_curve = initial.to_density();
      auto law = DiscreteInitial::from_lattice(initial);
      cfg.total_steps = k1;
      tau1_curve = histogram(em_ensemble(law, cfg));
      cfg.total_steps = steps_used;
      final_curve = histogram(em_ensemble(law, cfg));
    } else {
      cfg.total_steps = total;
      final_curve = histogram(em_ensemble(x0, cfg));
    }
  } else {
    throw std::invalid_argument("unknown method " + opts.method);
  }

  CsvWriter density_csv(density_path, {"x", "density"});
  write_density_csv(density_csv, final_curve);
  density_csv.close();

  CsvWriter potential_csv(potential_path, {"x", "tilted_potential_over_L"});
  write_potential_csv(potential_csv, params, n, final_curve.x.front(), final_curve.x.back());
  potential_csv.close();

  if (from_stationary) {
    CsvWriter t0_csv(t0_path, {"x", "density"});
    write_density_csv(t0_csv, t0_curve);
    t0_csv.close();
    CsvWriter tau1_csv(tau1_path, {"x", "density"});
    write_density_csv(tau1_csv, tau1_curve);
    tau1_csv.close();
  }

  manifest.set("steps_used", static_cast<long long>(steps_used));
  manifest.set("truncated_mass", truncated);
  manifest.write(manifest_path, out.names());
  std::printf("density: wrote %zu files to %s (steps_used=%lld)\n", out.names().size(),
              common.out_dir.c_str(), steps_used);
  return 0;
}

int cmd_table(int which, const ModelOpts& model, const CommonOpts& common) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("table --which must be 1 or 2");
  }
  const RatchetParams base = model.params();
  const FlashingSchedule sched = model.schedule();
  const int n = model.n;
  sched.require_scale(n);

  OutputDir out(common.out_dir, common.force);
  auto csv_path = out.claim("table" + std::to_string(which) + ".csv");
  auto manifest_path = out.claim("table" + std::to_string(which) + ".manifest");

  std::vector<TableRow> rows;
  long long steps_used = sched.steps_per_period(n);
  double truncated = 0.0;
  for (int i = 0; i < 13; ++i) {
    double theta = -1.5 + 0.5 * i;
    double kappa = theta * model.kappa0 / 2.0;
    TableRow row;
    row.theta = theta;
    if (which == 1) {
      auto d = flashing_run(base.lambda(), kappa, n, base.l, base.L, sched,
                            WalkVariant::kImproved);
      row.peaks = peak_stats(d.to_density(), d, base.l, base.L, {-1, 0, 1});
      row.mean = mean_displacement(d, 0.0);
      row.skew = skewness(d, base.l, base.L);
      truncated = std::max(truncated, d.truncated_mass);
    } else {
      ScaledWalkParams w{RatchetParams::from_lambda(base.l, base.L, base.lambda(), kappa),
                         n, WalkVariant::kImproved};
      auto run = run_from_stationarity(w, sched);
      row.peaks = peak_stats(run.final_.to_density(), run.final_, base.l, base.L, {-1, 0, 1});
      row.mean = run.mean_displacement;
      row.skew = skewness(run.final_, base.l, base.L);
      steps_used = run.steps_used;
      truncated = std::max(truncated, run.final_.truncated_mass);
    }
    rows.push_back(std::move(row));
  }

  CsvWriter csv(csv_path, {"theta", "area_m1", "area_0", "area_p1", "height_m1", "height_0",
                           "height_p1", "mean", "skewness"});
  write_table(csv, rows);
  csv.close();

  Manifest manifest;
  manifest.set("command", "table");
  manifest.set("version", kVersion);
  manifest.set("which", static_cast<long long>(which));
  echo_model(manifest, model);
  manifest.set("steps_used", static_cast<long long>(steps_used));
  manifest.set("truncated_mass", truncated);
  manifest.write(manifest_path, out.names());
  std::printf("table %d: 13 rows -> %s\n", which, csv_path.string().c_str());
  return 0;
}

int cmd_kappa0(const ModelOpts& model, double tol, const CommonOpts& common) {
  const RatchetParams base = model.params();
  const FlashingSchedule sched = model.schedule();
  double k0 = find_kappa0(base.lambda(), model.n, base.l, base.L, sched, tol);
  auto d = flashing_run(base.lambda(), k0, model.n, base.l, base.L, sched,
                        WalkVariant::kImproved);
  double residual_mean = mean_displacement(d, 0.0);

  OutputDir out(common.out_dir, common.force);
  auto csv_path = out.claim("kappa0.csv");
  auto manifest_path = out.claim("kappa0.manifest");
  CsvWriter csv(csv_path, {"lambda", "n", "tol", "kappa0", "mean_at_kappa0"});
  csv.row({base.lambda(), static_cast<double>(model.n), tol, k0, residual_mean});
  csv.close();

  Manifest manifest;
  manifest.set("command", "kappa0");
  manifest.set("version", kVersion);
  echo_model(manifest, model);
  manifest.set("tol", tol);
  manifest.set("kappa0", k0);
  manifest.set("mean_at_kappa0", residual_mean);
  manifest.set("steps_used", static_cast<long long>(sched.steps_per_period(model.n)));
  manifest.write(manifest_path, out.names());
  std::printf("kappa0 = %.10g (mean displacement %.3g)\n", k0, residual_mean);
  return 0;
}

int cmd_sweep(const ModelOpts& model, const std::string& lambda_range,
              const std::string& theta_range, const CommonOpts& common) {
  const RatchetParams base = model.params();
  const FlashingSchedule sched = model.schedule();
  auto lambdas = parse_range(lambda_range);
  auto thetas = parse_range(theta_range);
  auto grid = sweep(lambdas, thetas, model.kappa0, model.n, base.l, base.L, sched,
                    common.threads);

  OutputDir out(common.out_dir, common.force);
  auto mean_path = out.claim("sweep_mean.csv");
  auto skew_path = out.claim("sweep_skewness.csv");
  auto manifest_path = out.claim("sweep.manifest");

  auto write_grid = [&](const std::filesystem::path& path, const std::vector<double>& m) {
    std::vector<std::string> header = {"lambda"};
    for (double t : thetas) header.push_back("theta=" + format_double(t));
    CsvWriter csv(path, header);
    for (size_t il = 0; il < lambdas.size(); ++il) {
      std::vector<double> row = {lambdas[il]};
      for (size_t it = 0; it < thetas.size(); ++it) {
        row.push_back(m[il * thetas.size() + it]);
      }
      csv.row(row);
    }
    csv.close();
  };
  write_grid(mean_path, grid.mean);
  write_grid(skew_path, grid.skewness);

  Manifest manifest;
  manifest.set("command", "sweep");
  manifest.set("version", kVersion);
  echo_model(manifest, model);
  manifest.set("lambda_range", lambda_range);
  manifest.set("theta_range", theta_range);
  manifest.set("steps_used", static_cast<long long>(sched.steps_per_period(model.n)));
  manifest.write(manifest_path, out.names());
  std::printf("sweep: %zu x %zu grid -> %s\n", lambdas.size(), thetas.size(),
              common.out_dir.c_str());
  return 0;
}

int cmd_parrondo(double rho, int l, int L, double eps, double c,
                 const std::string& pattern, const CommonOpts& common) {
  auto spec = GameSpec::from_rho(rho, l, L, eps);
  auto fair = is_fair_B(spec.p0, spec.p1, l, L);

  OutputDir out(common.out_dir, common.force);
  auto csv_path = out.claim("parrondo.csv");
  auto manifest_path = out.claim("parrondo.manifest");

  CsvWriter csv(csv_path, {"schedule", "rate"});
  double rate_a = long_run_rate(spec, PlaySchedule::single_a());
  double rate_b = long_run_rate(spec, PlaySchedule::single_b());
  double rate_m = long_run_rate(spec, PlaySchedule::mixture(c));
  csv.raw_row("A," + format_double(rate_a));
  csv.raw_row("B," + format_double(rate_b));
  csv.raw_row("mixture," + format_double(rate_m));
  if (!pattern.empty()) {
    double rate_p = long_run_rate(spec, PlaySchedule::from_pattern(pattern));
    csv.raw_row(pattern + "," + format_double(rate_p));
  }
  csv.close();

  Manifest manifest;
  manifest.set("command", "parrondo");
  manifest.set("version", kVersion);
  manifest.set("rho", rho);
  manifest.set("l", static_cast<long long>(l));
  manifest.set("L", static_cast<long long>(L));
  manifest.set("eps", eps);
  manifest.set("c", c);
  if (!pattern.empty()) manifest.set("pattern", pattern);
  manifest.set("p", spec.p);
  manifest.set("p0", spec.p0);
  manifest.set("p1", spec.p1);
  manifest.set("fair_b_log_residual", fair.log_residual);
  manifest.write(manifest_path, out.names());
  std::printf("parrondo: rate(A)=%.6g rate(B)=%.6g rate(mixture)=%.6g\n", rate_a, rate_b,
              rate_m);
  return 0;
}

int cmd_stationary(const std::string& kind, const ModelOpts& model, int points,
                   const CommonOpts& common) {
  const RatchetParams params = model.params();
  OutputDir out(common.out_dir, common.force);

  if (kind == "analytic") {
    if (points < 2) throw std::invalid_argument("--points must be >= 2");
    auto st = analytic_stationary(params);
    auto csv_path = out.claim("stationary_analytic.csv");
    auto manifest_path = out.claim("stationary.manifest");
    CsvWriter csv(csv_path, {"x", "phi"});
    for (int i = 0; i < points; ++i) {
      double x = params.L * static_cast<double>(i) / (points - 1);
      csv.row({x, st.evaluate(x)});
    }
    csv.close();
    Manifest manifest;
    manifest.set("command", "stationary");
    manifest.set("version", kVersion);
    manifest.set("kind", kind);
    echo_model(manifest, model);
    manifest.set("phi0", st.phi0);
    manifest.set("skewness", st.skewness());
    manifest.set("mean", st.mean());
    manifest.set("mean_lifted", st.mean_lifted());
    manifest.write(manifest_path, out.names());
    std::printf("stationary analytic: skewness=%.10g\n", st.skewness());
    return 0;
  }
  if (kind == "flashing-empirical") {
    const FlashingSchedule sched = model.schedule();
    ScaledWalkParams w{params, model.n, WalkVariant::kImproved};
    PeriodMatrix P = build_period_matrix(w, sched);
    auto pi = stationary_vector(P);
    auto lifted = lift_stationary(pi, params.l, params.L);
    auto csv_path = out.claim("stationary_empirical.csv");
    auto manifest_path = out.claim("stationary.manifest");
    CsvWriter csv(csv_path, {"x", "prob", "density"});
    for (std::int64_t j = lifted.min_site(); j <= lifted.max_site(); ++j) {
      double p = lifted.prob_at(j);
      csv.row({static_cast<double>(j) / model.n, p, p * model.n});
    }
    csv.close();
    Manifest manifest;
    manifest.set("command", "stationary");
    manifest.set("version", kVersion);
    manifest.set("kind", kind);
    echo_model(manifest, model);
    manifest.set("steps_used", static_cast<long long>(P.steps_used));
    manifest.write(manifest_path, out.names());
    std::printf("stationary empirical: %d states, steps_used=%lld\n", P.states,
                static_cast<long long>(P.steps_used));
    return 0;
  }
  throw std::invalid_argument("stationary --kind must be analytic or flashing-empirical");
}

int cmd_verify_fp(const ModelOpts& model, long long steps, double tolerance,
                  const CommonOpts& common) {
  const RatchetParams params = model.params();
  const FlashingSchedule sched = model.schedule();
  if (steps <= 0) steps = sched.steps_per_period(model.n);
  double diff = equivalence_report(params, sched, model.n, steps);

  OutputDir out(common.out_dir, common.force);
  auto csv_path = out.claim("verify_fp_equivalence.csv");
  auto manifest_path = out.claim("verify.manifest");
  CsvWriter csv(csv_path, {"n", "steps", "max_abs_diff", "tolerance"});
  csv.row({static_cast<double>(model.n), static_cast<double>(steps), diff, tolerance});
  csv.close();

  Manifest manifest;
  manifest.set("command", "verify fp-equivalence");
  manifest.set("version", kVersion);
  echo_model(manifest, model);
  manifest.set("steps_used", static_cast<long long>(steps));
  manifest.set("max_abs_diff", diff);
  manifest.set("tolerance", tolerance);
  manifest.write(manifest_path, out.names());

  std::printf("fp-equivalence: max |difference| = %.3e over %lld steps (tolerance %.1e)\n",
              diff, steps, tolerance);
  if (!(diff <= tolerance)) {
    throw NumericalError("fp-equivalence difference exceeds tolerance");
  }
  return 0;
}

}  // namespace ratchet::cli
