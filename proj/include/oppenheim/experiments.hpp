#ifndef OPPENHEIM_EXPERIMENTS_HPP
#define OPPENHEIM_EXPERIMENTS_HPP

// Shrinking-target experiments along orbits x * iota(H_T): hit tests,
// critical exponents, excursion (logarithm law) series, mean ergodic decay
// and target measures. A negative search result always means "not found
// within budget".

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oppenheim/lattice.hpp"
#include "oppenheim/random.hpp"
#include "oppenheim/spin.hpp"
#include "oppenheim/stats.hpp"
#include "oppenheim/targets.hpp"

namespace oppenheim {

struct HitResult {
  bool hit = false;
  std::optional<HElement> witness;
  std::size_t evaluated = 0;
};

/// Searches H_T for h with x iota(h) in A_level.
HitResult search_target(const LatticePoint& x, double T, double level, const TargetFamily& family,
                        std::size_t budget, RandomStream& rng);

/// search_target with level T^eta.
HitResult hit_test(const LatticePoint& x, double T, double eta, const TargetFamily& family,
                   std::size_t budget, RandomStream& rng);

/// Deepest score over the search candidates of H_T, with its element.
struct DeepestPoint {
  double score = 0.0;
  HElement h;
};
DeepestPoint deepest_in_ball(const LatticePoint& x, double T, const TargetFamily& family,
                             std::size_t budget, RandomStream& rng);

struct LadderEntry {
  double T = 0.0;
  double best_score = 0.0;
  /// Whether a hit at eta_lower was found for this T.
  bool hit = false;
};

struct ExponentEstimate {
  double eta_lower = 0.0;
  double eta_upper = 0.0;
  /// Every eta up to the top of the range was feasible.
  bool saturated = false;
  std::vector<LadderEntry> ladder;
  std::size_t budget = 0;
};

inline constexpr double kEtaRangeMax = 3.0;
inline constexpr double kEtaBracketWidth = 0.05;

/// Bisection over eta in [0, 3]: eta is feasible when a hit at level T^eta
/// is found for every T of the ladder. Needs at least 4 ladder entries.
ExponentEstimate critical_exponent_estimate(const LatticePoint& x, const TargetFamily& family,
                                            std::span<const double> ladder, std::size_t budget,
                                            RandomStream& rng);

struct ExcursionRow {
  double T = 0.0;
  /// Extremum over this ball's candidates only.
  double beta_raw = 0.0;
  /// Running extremum over the ladder so far (monotone).
  double beta = 0.0;
  /// beta / log T (cusp) or -log beta / log T (point).
  double ratio = 0.0;
};

struct ExcursionSeries {
  TargetKind kind = TargetKind::cusp;
  std::vector<ExcursionRow> rows;
};

/// Cusp: beta_T = max cusp_distance(x iota(h)). Point: beta_T = min
/// point_distance(x iota(h), y), refined by projecting the best
/// candidates onto the orbit.
ExcursionSeries beta_series(const LatticePoint& x, const std::optional<LatticePoint>& point_target,
                            std::span<const double> ladder, std::size_t budget,
                            RandomStream& rng);

enum class ObservableKind { alpha1_below, cusp_complement, cusp_bump, constant };

/// Observables on X3 that depend on the lattice through alpha_1 only.
struct Observable {
  ObservableKind kind = ObservableKind::alpha1_below;
  double param = 1.2;

  double operator()(double alpha1) const;
  std::string describe() const;
  static Observable parse(const std::string& name, double param);
};

struct MetOptions {
  std::size_t ball_samples = 1000;
  std::size_t mean_samples = 100000;
  /// Points used for the noise-floor scaling check at the first ladder radius.
  std::size_t floor_check_points = 100;
  unsigned workers = 1;
};

struct MetRow {
  double T = 0.0;
  double ball_measure = 0.0;
  double l2_error = 0.0;
  /// Monte Carlo variance of the ball averages, averaged over x, as an L2 level.
  double noise_floor = 0.0;
  /// sqrt(max(l2_error^2 - noise_floor^2, 0)).
  double corrected = 0.0;
};

struct MetDecayReport {
  std::string observable;
  double mean = 0.0;
  std::vector<MetRow> rows;
  /// -slope of log corrected error against log m(H_T).
  double kappa_hat = 0.0;
  double fit_residual = 0.0;
  bool monotone_decreasing = false;
  /// Measured noise floors (L2) with N and 2N ball samples at the first radius.
  double floor_n = 0.0;
  double floor_2n = 0.0;
};

MetDecayReport met_decay(const Observable& f, std::span<const double> ladder, std::size_t n_points,
                         const MetOptions& options, RandomStream& rng);

struct MeasureRow {
  double t = 0.0;
  double fraction = 0.0;
};

struct MeasureFit {
  LineFit fit;
  std::vector<MeasureRow> rows;
};

/// Monte Carlo mu(A_t) over one common set of Haar samples and the
/// log-log slope. Needs n_samples >= 1e4.
MeasureFit target_measure_estimate(const TargetFamily& family, std::span<const double> t_ladder,
                                   std::size_t n_samples, RandomStream& rng, unsigned workers = 1);

}  // namespace oppenheim

#endif  // OPPENHEIM_EXPERIMENTS_HPP
