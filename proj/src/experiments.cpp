#include "oppenheim/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "oppenheim/parallel.hpp"
#include "oppenheim/search.hpp"

namespace oppenheim {

namespace {

Mat3 orbit_basis(const LatticePoint& x, const KAKCoords& c) {
  return x.reduced_basis() * spin_cover(kak_compose(c));
}

bool deeper(const TargetFamily& f, double a, double b) {
  return f.larger_is_deeper() ? a > b : a < b;
}

}  // namespace

HitResult search_target(const LatticePoint& x, double T, double level, const TargetFamily& family,
                        std::size_t budget, RandomStream& rng) {
  const auto candidates = search_candidates(T, budget, rng);
  HitResult r;
  for (const auto& c : candidates) {
    ++r.evaluated;
    if (family.contains(orbit_basis(x, c), level)) {
      r.hit = true;
      r.witness = HElement::from_kak(c);
      return r;
    }
  }
  return r;
}

HitResult hit_test(const LatticePoint& x, double T, double eta, const TargetFamily& family,
                   std::size_t budget, RandomStream& rng) {
  return search_target(x, T, std::pow(T, eta), family, budget, rng);
}

DeepestPoint deepest_in_ball(const LatticePoint& x, double T, const TargetFamily& family,
                             std::size_t budget, RandomStream& rng) {
  const auto candidates = search_candidates(T, budget, rng);
  DeepestPoint best;
  best.score = family.larger_is_deeper() ? -std::numeric_limits<double>::infinity()
                                         : std::numeric_limits<double>::infinity();
  const KAKCoords* arg = &candidates.front();
  for (const auto& c : candidates) {
    const double s = family.score(orbit_basis(x, c));
    if (deeper(family, s, best.score)) {
      best.score = s;
      arg = &c;
    }
  }
  best.h = HElement::from_kak(*arg);
  return best;
}

ExponentEstimate critical_exponent_estimate(const LatticePoint& x, const TargetFamily& family,
                                            std::span<const double> ladder, std::size_t budget,
                                            RandomStream& rng) {
  if (ladder.size() < 4) throw DomainError("critical_exponent_estimate: ladder needs >= 4 radii");
  ExponentEstimate est;
  est.budget = budget;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (i > 0 && !(ladder[i] > ladder[i - 1])) throw DomainError("ladder must increase");
    RandomStream sub = rng.split(i);
    est.ladder.push_back({ladder[i], deepest_in_ball(x, ladder[i], family, budget, sub).score});
  }
  // The candidate set of each radius does not depend on eta, so a hit at
  // level T^eta exists exactly when the deepest candidate is in A_{T^eta}.
  auto feasible = [&](double eta) {
    return std::all_of(est.ladder.begin(), est.ladder.end(), [&](const LadderEntry& e) {
      return family.score_in_target(e.best_score, std::pow(e.T, eta));
    });
  };

  if (feasible(kEtaRangeMax)) {
    est.eta_lower = est.eta_upper = kEtaRangeMax;
    est.saturated = true;
  } else if (!feasible(0.0)) {
    est.eta_lower = est.eta_upper = 0.0;
  } else {
    double lo = 0.0, hi = kEtaRangeMax;
    while (hi - lo > kEtaBracketWidth) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
    est.eta_lower = lo;
    est.eta_upper = hi;
  }
  for (auto& e : est.ladder)
    e.hit = family.score_in_target(e.best_score, std::pow(e.T, est.eta_lower));
  return est;
}

namespace {

// Moves h along H so that x iota(h) approaches y, using the displacement of y
// relative to x iota(h) projected back through the spin cover.
double refine_towards(const LatticePoint& x, const LatticePoint& y, double T, SL2Element& h) {
  const Mat3 y_basis = y.reduced_basis();
  double best = displacement(x.reduced_basis() * spin_cover(h), y_basis).distance;
  for (int iter = 0; iter < 8 && std::isfinite(best) && best > 0.0; ++iter) {
    const PointDisplacement d = displacement(x.reduced_basis() * spin_cover(h), y_basis);
    if (!d.found) break;
    const SL2Element step = spin_preimage(Mat3::identity() + d.delta);
    const SL2Element next = h * step;
    if (!(std::fabs(next.det() - 1.0) < 1e-6) || h_norm(next) > T) break;
    const double dist = displacement(x.reduced_basis() * spin_cover(next), y_basis).distance;
    if (!(dist < best)) break;
    best = dist;
    h = next;
  }
  return best;
}

}  // namespace

ExcursionSeries beta_series(const LatticePoint& x, const std::optional<LatticePoint>& point_target,
                            std::span<const double> ladder, std::size_t budget,
                            RandomStream& rng) {
  ExcursionSeries series;
  series.kind = point_target ? TargetKind::point : TargetKind::cusp;
  double running = point_target ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double T = ladder[i];
    if (i > 0 && !(T > ladder[i - 1])) throw DomainError("ladder must increase");
    RandomStream sub = rng.split(i);
    const auto candidates = search_candidates(T, budget, sub);
    ExcursionRow row;
    row.T = T;
    if (!point_target) {
      double best = 0.0;
      for (const auto& c : candidates) best = std::max(best, alpha1_of_basis(orbit_basis(x, c)));
      row.beta_raw = cusp_distance_from_alpha1(best);
      running = std::max(running, row.beta_raw);
      row.beta = running;
      row.ratio = running / std::log(T);
    } else {
      const Mat3 y_basis = point_target->reduced_basis();
      constexpr std::size_t kRefine = 4;
      std::vector<std::pair<double, std::size_t>> scored;
      scored.reserve(candidates.size());
      for (std::size_t k = 0; k < candidates.size(); ++k)
        scored.emplace_back(displacement(orbit_basis(x, candidates[k]), y_basis).distance, k);
      const std::size_t keep = std::min(kRefine, scored.size());
      std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                        scored.end());
      double best = scored.front().first;
      for (std::size_t k = 0; k < keep; ++k) {
        SL2Element h = kak_compose(candidates[scored[k].second]);
        best = std::min(best, refine_towards(x, *point_target, T, h));
      }
      row.beta_raw = best;
      running = std::min(running, best);
      row.beta = running;
      row.ratio = running > 0.0 ? -std::log(running) / std::log(T)
                                : std::numeric_limits<double>::infinity();
    }
    series.rows.push_back(row);
  }
  return series;
}

double Observable::operator()(double a) const {
  switch (kind) {
    case ObservableKind::alpha1_below:
      return a <= param ? 1.0 : 0.0;
    case ObservableKind::cusp_complement:
      return cusp_distance_from_alpha1(a) <= param ? 1.0 : 0.0;
    case ObservableKind::cusp_bump: {
      const double d = cusp_distance_from_alpha1(a) / param;
      return std::exp(-d * d);
    }
    case ObservableKind::constant:
      return 1.0;
  }
  return 0.0;
}

std::string Observable::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ObservableKind::alpha1_below:
      os << "indicator{alpha1 <= " << param << "}";
      break;
    case ObservableKind::cusp_complement:
      os << "indicator{cusp_distance <= " << param << "}";
      break;
    case ObservableKind::cusp_bump:
      os << "exp(-(cusp_distance/" << param << ")^2)";
      break;
    case ObservableKind::constant:
      os << "constant 1";
      break;
  }
  return os.str();
}

Observable Observable::parse(const std::string& name, double param) {
  if (name == "alpha1-below") return {ObservableKind::alpha1_below, param};
  if (name == "cusp-complement") return {ObservableKind::cusp_complement, param};
  if (name == "cusp-bump") return {ObservableKind::cusp_bump, param};
  if (name == "constant") return {ObservableKind::constant, param};
  throw DomainError("unknown observable '" + name +
                    "' (alpha1-below, cusp-complement, cusp-bump, constant)");
}

namespace {

struct BallStats {
  double mean = 0.0;
  double var = 0.0;  // unbiased sample variance of f
};

BallStats ball_average(const Observable& f, const LatticePoint& x, double T, std::size_t n,
                       RandomStream& rng) {
  double s = 0.0, ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const HElement h = sample_h_ball(T, rng);
    const double v = f(alpha1_of_basis(x.reduced_basis() * spin_cover(h.matrix)));
    s += v;
    ss += v * v;
  }
  const double nd = static_cast<double>(n);
  BallStats b;
  b.mean = s / nd;
  b.var = n > 1 ? std::max(0.0, (ss - s * s / nd) / (nd - 1.0)) : 0.0;
  return b;
}

double haar_mean(const Observable& f, std::size_t n, unsigned workers, RandomStream& rng) {
  constexpr std::size_t kChunk = 1000;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks, 0.0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    RandomStream sub = rng.split(c);
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) sums[c] += f(sample_x3_haar(sub).alpha1());
  });
  double total = 0.0;
  for (double s : sums) total += s;
  return total / static_cast<double>(n);
}

}  // namespace

MetDecayReport met_decay(const Observable& f, std::span<const double> ladder, std::size_t n_points,
                         const MetOptions& options, RandomStream& rng) {
  if (ladder.empty() || n_points == 0 || options.ball_samples < 2 || options.mean_samples == 0)
    throw DomainError("met_decay: ladder, points and sample counts must be positive");
  MetDecayReport rep;
  rep.observable = f.describe();
  RandomStream mean_rng = rng.split(0);
  rep.mean = haar_mean(f, options.mean_samples, options.workers, mean_rng);

  std::vector<LatticePoint> xs;
  xs.reserve(n_points);
  RandomStream x_rng = rng.split(1);
  for (std::size_t i = 0; i < n_points; ++i) xs.push_back(sample_x3_haar(x_rng));

  for (std::size_t j = 0; j < ladder.size(); ++j) {
    const double T = ladder[j];
    std::vector<BallStats> stats(n_points);
    const RandomStream t_rng = rng.split(2).split(j);
    parallel_for(n_points, options.workers, [&](std::size_t i) {
      RandomStream sub = t_rng.split(i);
      stats[i] = ball_average(f, xs[i], T, options.ball_samples, sub);
    });
    double err2 = 0.0, floor2 = 0.0;
    for (const auto& s : stats) {
      err2 += (s.mean - rep.mean) * (s.mean - rep.mean);
      floor2 += s.var / static_cast<double>(options.ball_samples);
    }
    err2 /= static_cast<double>(n_points);
    floor2 /= static_cast<double>(n_points);
    MetRow row;
    row.T = T;
    row.ball_measure = ball_measure(T);
    row.l2_error = std::sqrt(err2);
    row.noise_floor = std::sqrt(floor2);
    row.corrected = std::sqrt(std::max(0.0, err2 - floor2));
    rep.rows.push_back(row);
  }

  // Noise floor measured from independent replicate averages with N and 2N samples.
  {
    const std::size_t m = std::min(options.floor_check_points, n_points);
    const std::size_t n = options.ball_samples;
    std::vector<std::array<double, 4>> reps(m);
    const RandomStream f_rng = rng.split(3);
    parallel_for(m, options.workers, [&](std::size_t i) {
      RandomStream sub = f_rng.split(i);
      for (auto& r : reps[i]) r = ball_average(f, xs[i], ladder.front(), n, sub).mean;
    });
    double fn = 0.0, f2n = 0.0;
    for (const auto& r : reps) {
      fn += 0.5 * (r[0] - r[1]) * (r[0] - r[1]);
      const double b1 = 0.5 * (r[0] + r[1]), b2 = 0.5 * (r[2] + r[3]);
      f2n += 0.5 * (b1 - b2) * (b1 - b2);
    }
    rep.floor_n = std::sqrt(fn / static_cast<double>(m));
    rep.floor_2n = std::sqrt(f2n / static_cast<double>(m));
  }

  std::vector<double> lx, ly;
  rep.monotone_decreasing = true;
  for (std::size_t j = 0; j < rep.rows.size(); ++j) {
    const auto& r = rep.rows[j];
    if (j > 0 && !(r.corrected < rep.rows[j - 1].corrected)) rep.monotone_decreasing = false;
    if (r.corrected > 0.0) {
      lx.push_back(std::log(r.ball_measure));
      ly.push_back(std::log(r.corrected));
    }
  }
  if (lx.size() >= 2) {
    const LineFit fit = fit_line(lx, ly);
    rep.kappa_hat = -fit.slope;
    rep.fit_residual = fit.residual;
  }
  return rep;
}

MeasureFit target_measure_estimate(const TargetFamily& family, std::span<const double> t_ladder,
                                   std::size_t n_samples, RandomStream& rng, unsigned workers) {
  if (n_samples < 10000) throw DomainError("target_measure_estimate: need >= 1e4 samples");
  if (t_ladder.size() < 2) throw DomainError("target_measure_estimate: need >= 2 levels");
  std::vector<double> scores(n_samples);
  constexpr std::size_t kChunk = 1000;
  const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    RandomStream sub = rng.split(c);
    const std::size_t end = std::min(n_samples, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k)
      scores[k] = family.score(sample_x3_haar(sub).reduced_basis());
  });
  MeasureFit out;
  std::vector<double> lx, ly;
  for (double t : t_ladder) {
    const auto inside = std::count_if(scores.begin(), scores.end(),
                                      [&](double s) { return family.score_in_target(s, t); });
    const double frac = static_cast<double>(inside) / static_cast<double>(n_samples);
    out.rows.push_back({t, frac});
    if (frac > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(frac));
    }
  }
  if (lx.size() >= 2) out.fit = fit_line(lx, ly);
  return out;
}

}  // namespace oppenheim
