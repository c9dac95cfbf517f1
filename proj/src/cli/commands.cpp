#include "oppenheim/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "oppenheim/cli/output.hpp"
#include "oppenheim/cli/selftest.hpp"
#include "oppenheim/experiments.hpp"
#include "oppenheim/oppenheim_pipeline.hpp"
#include "oppenheim/parallel.hpp"

namespace oppenheim::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void append_matrix(std::vector<Cell>& row, const Mat3& m) {
  for (double x : m.a) row.emplace_back(x);
}

json summary_base(const std::string& command, const RunConfig& cfg) {
  return {{"command", command}, {"config", cfg.to_json()}, {"version", version()}};
}

void finish(json& summary, const RunConfig& cfg, Clock::time_point t0) {
  summary["wall_time_s"] = seconds_since(t0);
  write_json(cfg.out / "summary.json", summary);
}

CsvWriter open_csv(const RunConfig& cfg, const std::string& command) {
  const CommandInfo& info = command_info(command);
  std::vector<std::string> header;
  std::istringstream is(info.columns);
  for (std::string c; std::getline(is, c, ',');) header.push_back(c);
  return CsvWriter(cfg.out / info.csv, header);
}

TargetFamily make_family(const RunConfig& cfg) {
  if (cfg.family == "point") return TargetFamily::point(LatticePoint::standard(), cfg.delta);
  if (cfg.family == "frozen") return TargetFamily::frozen(TargetFamily::cusp(), cfg.frozen_t);
  return TargetFamily::cusp();
}

/// Haar point i of the experiment's x-stream.
LatticePoint x_point(const RunConfig& cfg, std::size_t i) {
  RandomStream s = RandomStream(cfg.seed).split(1).split(i);
  return sample_x3_haar(s);
}

/// Stream for task i of the experiment's search stage.
RandomStream task_stream(const RunConfig& cfg, std::size_t i) {
  return RandomStream(cfg.seed).split(2).split(i);
}

/// Type-7 quantile that tolerates -infinity entries.
double quantile_inf(std::vector<double> v, double q) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double f = pos - static_cast<double>(lo);
  if (v[lo] == v[hi] || f == 0.0) return v[lo];
  if (std::isinf(v[lo])) return v[lo];
  return v[lo] + f * (v[hi] - v[lo]);
}

void require_ladder(const RunConfig& cfg, std::size_t min_count, const std::string& command) {
  if (cfg.t_count < min_count)
    throw ConfigError(command + " needs t_count >= " + std::to_string(min_count));
  if (!(cfg.t_start > std::sqrt(3.0)))
    throw ConfigError(command + " needs t_start > sqrt(3)");
}

}  // namespace

std::string version() { return OPPENHEIM_VERSION; }

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table = {
      {"oppenheim-scan", "forms.csv",
       "min |Q(n)| over ||n|| <= T for Haar-random forms; slope fit per form (--samples = forms)",
       "form_id,g11,g12,g13,g21,g22,g23,g31,g32,g33,T,min_abs_q,n1,n2,n3,engine,elapsed_s"},
      {"oppenheim-one", "certificates.csv",
       "orbit pipeline for one form (config key g, else Haar): certified n per ladder radius",
       "T,tau,eta,status,n1,n2,n3,value,t_tilde,value_bound,inverse_norm_bound,norm_bound_holds,"
       "value_bound_holds,inverse_norm_bound_holds,direct_min_abs_q,elapsed_s"},
      {"targets-hit", "hits.csv",
       "hit test x iota(H_T) in A_{T^eta} over Haar points (--samples = points)",
       "point_id,T,eta,level,hit,evaluated,w_theta,w_t,w_theta_prime,w_norm"},
      {"critical-exponent", "ladder.csv",
       "bisection estimate of the critical exponent per Haar point (--samples = points)",
       "point_id,T,best_score,hit"},
      {"loglaw-cusp", "beta.csv",
       "running max cusp distance beta_T and beta_T / log T (--samples = points)",
       "point_id,T,beta_raw,beta,ratio"},
      {"loglaw-point", "beta.csv",
       "running min distance to a Haar point y and -log beta_T / log T (approximate distance)",
       "point_id,T,beta_raw,beta,ratio"},
      {"met-decay", "met.csv",
       "L2 error of ball averages against m(H_T) and fitted decay exponent (--samples = points)",
       "T,ball_measure,l2_error,noise_floor,corrected"},
      {"measure", "measure.csv", "Monte Carlo mu(A_t) along the t ladder (--samples = lattices)",
       "t,fraction"},
      {"sample", "samples.csv",
       "Haar lattices (config space = x3) or Haar points of H_{t_start} (space = h-ball)",
       "sample_id,kind,v1,v2,v3,v4,v5,v6,v7,v8,v9,alpha1,cusp_distance,norm"},
      {"selftest", "selftest.csv",
       "brute-force oracle suites: shortest vector, form minimum at T = 25, spin battery",
       "suite,passed,cases,first_failure,elapsed_s"},
  };
  return table;
}

const CommandInfo& command_info(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

int cmd_oppenheim_scan(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "oppenheim-scan";
  TauOptions opts;
  opts.engine = cfg.engine == "orbit" ? TauEngine::orbit : TauEngine::direct;
  opts.norm = cfg.norm;
  opts.budget = cfg.budget;
  opts.tau = cfg.tau;
  opts.workers = cfg.samples == 1 ? cfg.workers : 1;
  if (!(cfg.t_start >= 1.0)) throw ConfigError("oppenheim-scan needs t_start >= 1");
  const auto ladder = cfg.ladder();
  CsvWriter csv = open_csv(cfg, name);

  struct FormOut {
    Mat3 g;
    std::vector<TauRow> rows;
    double elapsed = 0.0;
  };
  std::vector<double> slopes;
  json forms = json::array();
  std::size_t zeros = 0;
  const std::size_t n = cfg.samples;
  const std::size_t chunk = std::max<std::size_t>(cfg.workers, 1);
  for (std::size_t base = 0; base < n; base += chunk) {
    const std::size_t m = std::min(chunk, n - base);
    std::vector<FormOut> out(m);
    parallel_for(m, cfg.workers, [&](std::size_t k) {
      const auto f0 = Clock::now();
      const std::size_t i = base + k;
      out[k].g = x_point(cfg, i).basis();
      RandomStream rng = task_stream(cfg, i);
      out[k].rows = tau_rows(form_from_g(out[k].g), ladder, opts, rng);
      out[k].elapsed = seconds_since(f0);
    });
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = base + k;
      for (const auto& r : out[k].rows) {
        std::vector<Cell> row{static_cast<std::uint64_t>(i)};
        append_matrix(row, out[k].g);
        row.insert(row.end(), {r.T, r.min_abs_q, r.n[0], r.n[1], r.n[2], cfg.engine, out[k].elapsed});
        csv.row(row);
      }
      const TauEstimate est = fit_tau_series(out[k].rows);
      const bool fitted = est.zero_attained || est.rows.size() >= 2;
      if (fitted) slopes.push_back(est.slope);
      zeros += est.zero_attained;
      forms.push_back({{"form_id", i},
                       {"slope", est.zero_attained ? json("-inf") : json_number(est.slope)},
                       {"intercept", json_number(est.fit.intercept)},
                       {"residual", json_number(est.fit.residual)},
                       {"zero_attained", est.zero_attained},
                       {"n_rows", est.rows.size()}});
    }
  }
  json s = summary_base(name, cfg);
  s["n_forms"] = n;
  s["engine"] = cfg.engine;
  s["ladder"] = ladder;
  s["n_zero_attained"] = zeros;
  s["median_slope"] = json_number(quantile_inf(slopes, 0.5));
  s["q25"] = json_number(quantile_inf(slopes, 0.25));
  s["q75"] = json_number(quantile_inf(slopes, 0.75));
  s["forms"] = forms;
  finish(s, cfg, t0);
  log << name << ": " << n << " forms, median slope " << format_double(quantile_inf(slopes, 0.5))
      << "\n";
  return kExitOk;
}

int cmd_oppenheim_one(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "oppenheim-one";
  if (!(cfg.t_start >= 1.0)) throw ConfigError("oppenheim-one needs t_start >= 1");
  Mat3 g;
  if (cfg.g) {
    std::copy(cfg.g->begin(), cfg.g->end(), g.a.begin());
    if (!is_finite(g) || !(std::fabs(det(g) - 1.0) <= 1e-8))
      throw ConfigError("config g must have determinant 1 (to 1e-8)");
  } else {
    g = x_point(cfg, 0).basis();
  }
  const QuadForm q = form_from_g(g);
  const auto ladder = cfg.ladder();
  CsvWriter csv = open_csv(cfg, name);
  std::vector<TauRow> found;
  bool all_verified = true;
  std::size_t n_found = 0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto r0 = Clock::now();
    const double T = ladder[i];
    RandomStream rng = task_stream(cfg, i);
    std::vector<Cell> row{T, cfg.tau, eta_for_tau(cfg.tau)};
    try {
      const auto cert = effective_oppenheim(g, cfg.tau, T, cfg.budget, rng, cfg.norm);
      if (!cert) {
        row.insert(row.end(), {std::string("not-found-budget-limited"), std::int64_t{0},
                               std::int64_t{0}, std::int64_t{0}, kNaN, kNaN, kNaN, kNaN, false,
                               false, false, kNaN});
      } else {
        ++n_found;
        all_verified = all_verified && cert->verified();
        found.push_back({cert->t_tilde, std::fabs(cert->result.value), cert->result.n});
        // The direct search is a global optimum over the same ball; skip it when too large.
        double direct = kNaN;
        if (cert->t_tilde <= 2000.0)
          direct = std::fabs(min_form_value_direct(q, cert->t_tilde, cfg.norm, cfg.workers).value);
        const auto& n = cert->result.n;
        row.insert(row.end(),
                   {std::string(cert->verified() ? "certified" : "certificate-failed"), n[0], n[1],
                    n[2], cert->result.value, cert->t_tilde, cert->value_bound,
                    cert->inverse_norm_bound, cert->norm_bound_holds, cert->value_bound_holds,
                    cert->inverse_norm_bound_holds, direct});
      }
    } catch (const RoundingFailure& e) {
      log << name << ": T = " << format_double(T) << ": " << e.what() << "\n";
      row.insert(row.end(), {std::string("rounding-failure"), std::int64_t{0}, std::int64_t{0},
                             std::int64_t{0}, kNaN, kNaN, kNaN, kNaN, false, false, false, kNaN});
    }
    row.emplace_back(seconds_since(r0));
    csv.row(row);
  }
  const TauEstimate est = fit_tau_series(found);
  json s = summary_base(name, cfg);
  s["g"] = g.a;
  s["tau"] = cfg.tau;
  s["eta"] = eta_for_tau(cfg.tau);
  s["n_radii"] = ladder.size();
  s["n_found"] = n_found;
  s["all_certificates_verified"] = all_verified;
  s["slope"] = est.zero_attained ? json("-inf") : json_number(est.rows.size() >= 2 ? est.slope : kNaN);
  finish(s, cfg, t0);
  log << name << ": " << n_found << "/" << ladder.size() << " radii certified\n";
  return kExitOk;
}

int cmd_targets_hit(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "targets-hit";
  require_ladder(cfg, 1, name);
  const auto ladder = cfg.ladder();
  const TargetFamily family = make_family(cfg);
  const std::size_t n = cfg.samples;
  std::vector<std::vector<HitResult>> res(n, std::vector<HitResult>(ladder.size()));
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    const LatticePoint x = x_point(cfg, i);
    const RandomStream base = task_stream(cfg, i);
    for (std::size_t j = 0; j < ladder.size(); ++j) {
      RandomStream rng = base.split(j);
      res[i][j] = hit_test(x, ladder[j], cfg.eta, family, cfg.budget, rng);
    }
  });
  CsvWriter csv = open_csv(cfg, name);
  json per_t = json::array();
  for (std::size_t j = 0; j < ladder.size(); ++j) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += res[i][j].hit;
    per_t.push_back({{"T", ladder[j]},
                     {"hits", hits},
                     {"hit_fraction", static_cast<double>(hits) / static_cast<double>(n)}});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ladder.size(); ++j) {
      const HitResult& r = res[i][j];
      const KAKCoords w = r.witness ? r.witness->kak : KAKCoords{kNaN, kNaN, kNaN};
      csv.row({static_cast<std::uint64_t>(i), ladder[j], cfg.eta, std::pow(ladder[j], cfg.eta),
               r.hit, static_cast<std::uint64_t>(r.evaluated), w.theta, w.t, w.theta_prime,
               r.witness ? r.witness->norm : kNaN});
    }
  json s = summary_base(name, cfg);
  s["family"] = family.describe();
  s["n_points"] = n;
  s["per_T"] = per_t;
  s["negatives"] = "not found within budget";
  finish(s, cfg, t0);
  log << name << ": " << per_t.dump() << "\n";
  return kExitOk;
}

int cmd_critical_exponent(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "critical-exponent";
  require_ladder(cfg, 4, name);
  const auto ladder = cfg.ladder();
  const TargetFamily family = make_family(cfg);
  const std::size_t n = cfg.samples;
  std::vector<ExponentEstimate> est(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    RandomStream rng = task_stream(cfg, i);
    est[i] = critical_exponent_estimate(x_point(cfg, i), family, ladder, cfg.budget, rng);
  });
  CsvWriter csv = open_csv(cfg, name);
  json points = json::array();
  std::vector<double> mids;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : est[i].ladder)
      csv.row({static_cast<std::uint64_t>(i), e.T, e.best_score, e.hit});
    mids.push_back(0.5 * (est[i].eta_lower + est[i].eta_upper));
    points.push_back({{"point_id", i},
                      {"eta_lower", est[i].eta_lower},
                      {"eta_upper", est[i].eta_upper},
                      {"saturated", est[i].saturated}});
  }
  json s = summary_base(name, cfg);
  s["family"] = family.describe();
  s["estimates"] = points;
  s["median_estimate"] = json_number(quantile_inf(mids, 0.5));
  s["bracket_width"] = kEtaBracketWidth;
  s["negatives"] = "infeasible means not found within budget";
  finish(s, cfg, t0);
  log << name << ": median estimate " << format_double(quantile_inf(mids, 0.5)) << "\n";
  return kExitOk;
}

int cmd_loglaw(const RunConfig& cfg, bool point, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = point ? "loglaw-point" : "loglaw-cusp";
  require_ladder(cfg, 1, name);
  const auto ladder = cfg.ladder();
  std::optional<LatticePoint> y;
  if (point) {
    RandomStream ys = RandomStream(cfg.seed).split(3);
    y = sample_x3_haar(ys);
  }
  const std::size_t n = cfg.samples;
  std::vector<ExcursionSeries> series(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    RandomStream rng = task_stream(cfg, i);
    series[i] = beta_series(x_point(cfg, i), y, ladder, cfg.budget, rng);
  });
  CsvWriter csv = open_csv(cfg, name);
  std::vector<double> terminal;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& r : series[i].rows)
      csv.row({static_cast<std::uint64_t>(i), r.T, r.beta_raw, r.beta, r.ratio});
    terminal.push_back(series[i].rows.back().ratio);
  }
  json s = summary_base(name, cfg);
  s["n_points"] = n;
  s["terminal_T"] = ladder.back();
  s["mean_terminal_ratio"] = json_number(mean(terminal));
  json t = json::array();
  for (double r : terminal) t.push_back(json_number(r));
  s["terminal_ratios"] = t;
  s["approximate_distance"] = point;
  if (y) s["target_basis"] = y->basis().a;
  finish(s, cfg, t0);
  log << name << ": mean terminal ratio " << format_double(mean(terminal)) << "\n";
  return kExitOk;
}

int cmd_met_decay(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "met-decay";
  require_ladder(cfg, 1, name);
  const Observable f = Observable::parse(cfg.observable, cfg.observable_param);
  MetOptions o;
  o.ball_samples = cfg.ball_samples;
  o.mean_samples = cfg.mean_samples;
  o.floor_check_points = std::min<std::size_t>(100, cfg.samples);
  o.workers = cfg.workers;
  RandomStream rng(cfg.seed);
  const MetDecayReport r = met_decay(f, cfg.ladder(), cfg.samples, o, rng);
  CsvWriter csv = open_csv(cfg, name);
  for (const auto& row : r.rows)
    csv.row({row.T, row.ball_measure, row.l2_error, row.noise_floor, row.corrected});
  json s = summary_base(name, cfg);
  s["observable"] = r.observable;
  s["mean"] = r.mean;
  s["kappa_hat"] = r.kappa_hat;
  s["fit_residual"] = r.fit_residual;
  s["monotone_decreasing"] = r.monotone_decreasing;
  s["floor_n"] = r.floor_n;
  s["floor_2n"] = r.floor_2n;
  s["n_points"] = cfg.samples;
  finish(s, cfg, t0);
  log << name << ": kappa_hat " << format_double(r.kappa_hat) << " residual "
      << format_double(r.fit_residual) << "\n";
  return kExitOk;
}

int cmd_measure(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "measure";
  if (cfg.samples < 10000) throw ConfigError("measure needs samples >= 10000");
  if (cfg.t_count < 2) throw ConfigError("measure needs t_count >= 2");
  if (!(cfg.t_start >= 1.0)) throw ConfigError("measure needs t_start >= 1");
  const TargetFamily family = make_family(cfg);
  RandomStream rng(cfg.seed);
  const MeasureFit m = target_measure_estimate(family, cfg.ladder(), cfg.samples, rng, cfg.workers);
  CsvWriter csv = open_csv(cfg, name);
  for (const auto& r : m.rows) csv.row({r.t, r.fraction});
  json s = summary_base(name, cfg);
  s["family"] = family.describe();
  s["nominal_decay_exponent"] = family.decay_exponent();
  s["slope"] = m.fit.slope;
  s["intercept"] = m.fit.intercept;
  s["residual"] = m.fit.residual;
  s["n_fit_points"] = m.fit.n;
  finish(s, cfg, t0);
  log << name << ": slope " << format_double(m.fit.slope) << "\n";
  return kExitOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const std::string name = "sample";
  const std::size_t n = cfg.samples;
  const bool ball = cfg.space == "h-ball";
  if (ball && !(cfg.t_start > std::sqrt(3.0)))
    throw ConfigError("sample h-ball needs t_start > sqrt(3)");
  std::vector<std::vector<Cell>> rows(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    std::vector<Cell>& row = rows[i];
    row.emplace_back(static_cast<std::uint64_t>(i));
    if (ball) {
      RandomStream s = task_stream(cfg, i);
      const HElement h = sample_h_ball(cfg.t_start, s);
      row.emplace_back(std::string("h"));
      row.insert(row.end(), {h.kak.theta, h.kak.t, h.kak.theta_prime, h.matrix.a, h.matrix.b,
                             h.matrix.c, h.matrix.d, kNaN, kNaN, kNaN, kNaN, h.norm});
    } else {
      const LatticePoint x = x_point(cfg, i);
      row.emplace_back(std::string("x3"));
      append_matrix(row, x.reduced_basis());
      row.insert(row.end(), {x.alpha1(), cusp_distance(x), kNaN});
    }
  });
  CsvWriter csv = open_csv(cfg, name);
  std::vector<double> stat;
  for (std::size_t i = 0; i < n; ++i) {
    csv.row(rows[i]);
    stat.push_back(std::get<double>(rows[i][ball ? 13 : 12]));
  }
  json s = summary_base(name, cfg);
  s["space"] = cfg.space;
  s["n_samples"] = n;
  s[ball ? "mean_norm" : "mean_cusp_distance"] = mean(stat);
  finish(s, cfg, t0);
  log << name << ": " << n << " samples\n";
  return kExitOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const auto suites = run_selftest(cfg.seed, cfg.corrupt_spin);
  bool ok = true;
  CsvWriter csv = open_csv(cfg, "selftest");
  json s = summary_base("selftest", cfg);
  json list = json::array();
  for (const auto& r : suites) {
    std::string failure = r.first_failure.value_or("");
    std::replace(failure.begin(), failure.end(), ',', ';');
    csv.row({r.name, r.passed, static_cast<std::uint64_t>(r.cases), failure, r.elapsed_s});
    list.push_back({{"suite", r.name}, {"passed", r.passed}, {"cases", r.cases}});
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, "
        << format_double(std::round(r.elapsed_s * 100) / 100) << " s)\n";
    if (!r.passed && ok) log << "  first failing case: " << *r.first_failure << "\n";
    ok = ok && r.passed;
  }
  s["suites"] = list;
  s["passed"] = ok;
  finish(s, cfg, t0);
  return ok ? kExitOk : kExitSelftestFailed;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log,
                std::ostream& err) {
  try {
    (void)command_info(name);
    cfg.validate();
    ensure_output_dir(cfg.out);
    if (name == "oppenheim-scan") return cmd_oppenheim_scan(cfg, log);
    if (name == "oppenheim-one") return cmd_oppenheim_one(cfg, log);
    if (name == "targets-hit") return cmd_targets_hit(cfg, log);
    if (name == "critical-exponent") return cmd_critical_exponent(cfg, log);
    if (name == "loglaw-cusp") return cmd_loglaw(cfg, false, log);
    if (name == "loglaw-point") return cmd_loglaw(cfg, true, log);
    if (name == "met-decay") return cmd_met_decay(cfg, log);
    if (name == "measure") return cmd_measure(cfg, log);
    if (name == "sample") return cmd_sample(cfg, log);
    return cmd_selftest(cfg, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

namespace {

struct Flags {
  std::uint64_t seed = 0;
  std::string norm;
  double t_start = 0, t_ratio = 0, tau = 0, eta = 0;
  std::size_t t_count = 0, budget = 0, samples = 0;
  unsigned workers = 0;
  std::string out, config;
  bool corrupt_spin = false;
  std::vector<std::pair<std::string, CLI::Option*>> opts;

  void attach(CLI::App* app) {
    opts = {
        {"seed", app->add_option("--seed", seed, "64-bit seed")},
        {"norm", app->add_option("--norm", norm, "norm on R^3 for ||n|| <= T")
                     ->check(CLI::IsMember({"euclidean", "sup"}))},
        {"t_start", app->add_option("--t-start", t_start, "first ladder radius")},
        {"t_ratio", app->add_option("--t-ratio", t_ratio, "ladder ratio (> 1)")},
        {"t_count", app->add_option("--t-count", t_count, "ladder length")},
        {"budget", app->add_option("--budget", budget, "search budget per radius")},
        {"samples", app->add_option("--samples", samples, "points, forms or samples")},
        {"workers", app->add_option("--workers", workers, "worker threads")},
        {"out", app->add_option("--out", out, "output directory")},
        {"config", app->add_option("--config", config, "JSON file mirroring RunConfig")},
        {"tau", app->add_option("--tau", tau, "Oppenheim exponent in (0, 1)")},
        {"eta", app->add_option("--eta", eta, "target exponent for targets-hit")},
    };
  }

  bool given(const std::string& key) const {
    for (const auto& [k, o] : opts)
      if (k == key) return o->count() > 0;
    return false;
  }

  void overlay(RunConfig& c) const {
    if (given("seed")) c.seed = seed;
    if (given("norm")) c.norm = parse_norm_choice(norm);
    if (given("t_start")) c.t_start = t_start;
    if (given("t_ratio")) c.t_ratio = t_ratio;
    if (given("t_count")) c.t_count = t_count;
    if (given("budget")) c.budget = budget;
    if (given("samples")) c.samples = samples;
    if (given("workers")) c.workers = workers;
    if (given("out")) c.out = out;
    if (given("tau")) c.tau = tau;
    if (given("eta")) c.eta = eta;
  }
};

}  // namespace

int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Shrinking targets on SL3(Z)\\SL3(R) along spin SL2(R) orbits, and effective "
               "Oppenheim searches.\nExit codes: 0 ok, 1 selftest failure, 2 config error, 3 IO "
               "error."};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  std::vector<Flags> flags(command_table().size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < command_table().size(); ++i) {
    const auto& info = command_table()[i];
    CLI::App* sub = app.add_subcommand(info.name, info.summary);
    sub->footer("Writes " + info.csv + " with columns:\n  " + info.columns +
                "\nand summary.json (config echo, version, aggregate results).");
    flags[i].attach(sub);
    if (info.name == "selftest")
      sub->add_flag("--corrupt-spin", flags[i].corrupt_spin,
                    "negative control: use ab + cd for spin entry (2,1)");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, log, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, log, err);
    return kExitConfig;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const std::string name = command_table()[i].name;
    RunConfig cfg;
    try {
      cfg = defaults_for(name);
      if (flags[i].given("config")) apply_json_file(cfg, flags[i].config);
      flags[i].overlay(cfg);
      if (flags[i].corrupt_spin) cfg.corrupt_spin = true;
    } catch (const IoError& e) {
      err << "io error: " << e.what() << "\n";
      return kExitIo;
    } catch (const std::exception& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    return run_command(name, cfg, log, err);
  }
  return kExitConfig;
}

}  // namespace oppenheim::cli
