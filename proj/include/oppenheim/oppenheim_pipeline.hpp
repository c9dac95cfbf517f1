#ifndef OPPENHEIM_OPPENHEIM_PIPELINE_HPP
#define OPPENHEIM_OPPENHEIM_PIPELINE_HPP

// Effective Oppenheim search through the orbit Z^3 g iota(H): a lattice
// deep in the cusp has a short vector v = n g iota(h), and n is then an
// integer vector with |Q0^g(n)| = |Q0(v)| <= |v|^2.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "oppenheim/forms.hpp"
#include "oppenheim/lattice.hpp"
#include "oppenheim/spin.hpp"
#include "oppenheim/stats.hpp"

namespace oppenheim {

class RoundingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrbitHit {
  HElement h;
  /// Basis g * iota(h) of the lattice Z^3 g iota(h).
  Mat3 lattice_basis;
  /// Shortest vector; coeffs are relative to lattice_basis.
  ShortVectorResult v;
  double alpha1 = 0.0;
};

/// First candidate h of H_T (grid, then random) with
/// alpha_1(Z^3 g iota(h)) >= T^{eta/3}. Throws NotUnimodular.
std::optional<OrbitHit> orbit_short_vector_search(const Mat3& g, double T, double eta,
                                                  std::size_t budget, RandomStream& rng);

/// 3 tau / (tau + 2).
double eta_for_tau(double tau);

inline constexpr double kRoundingTol = 1e-4;
inline constexpr double kCertificateSlack = 1e-6;

struct OppenheimCertificate {
  FormValueResult result;
  double tau = 0.0;
  double eta = 0.0;
  /// Radius of the H-ball that was searched.
  double T = 0.0;
  /// ||g||_2 T^{(3 - eta) / 3}.
  double t_tilde = 0.0;
  /// T^{-2 eta / 3}.
  double value_bound = 0.0;
  /// ||g^{-1}||_2 T^{(3 - eta) / 3}, the bound that follows from
  /// n = v iota(h)^{-1} g^{-1}.
  double inverse_norm_bound = 0.0;
  bool norm_bound_holds = false;
  bool value_bound_holds = false;
  bool inverse_norm_bound_holds = false;
  HElement h;
  Vec3 v{};
  double rounding_residual = 0.0;

  bool verified() const { return norm_bound_holds && value_bound_holds; }
};

/// Runs the orbit search with eta = 3 tau / (tau + 2), recovers n and
/// re-checks both bounds by direct evaluation. Requires 0 < tau < 1 and T >= 1;
/// throws RoundingFailure when n is not recovered to 1e-4.
std::optional<OppenheimCertificate> effective_oppenheim(const Mat3& g, double tau, double T,
                                                        std::size_t budget, RandomStream& rng,
                                                        NormChoice norm = NormChoice::euclidean);

enum class TauEngine { direct, orbit };

std::string to_string(TauEngine e);

struct TauRow {
  double T = 0.0;
  double min_abs_q = 0.0;
  IntVec3 n{};
};

struct TauEstimate {
  LineFit fit;
  /// A zero value was attained; the slope is reported as -infinity.
  bool zero_attained = false;
  double slope = 0.0;
  std::vector<TauRow> rows;
};

struct TauOptions {
  TauEngine engine = TauEngine::direct;
  NormChoice norm = NormChoice::euclidean;
  std::size_t budget = 1000;
  /// Exponent handed to the orbit engine.
  double tau = 0.5;
  unsigned workers = 1;
};

/// The per-radius minima behind estimate_tau, for ladders of any length.
/// Ladder entry i uses rng.split(i).
std::vector<TauRow> tau_rows(const QuadForm& q, std::span<const double> ladder,
                             const TauOptions& options, RandomStream& rng);

/// Least-squares slope of log min|Q(n)| against log T. The direct engine
/// searches ||n|| <= T; the orbit engine treats ladder entries as H-ball
/// radii and records (T~, |Q(n)|) for each success. Needs >= 5 ladder entries.
TauEstimate estimate_tau(const QuadForm& q, std::span<const double> ladder,
                         const TauOptions& options, RandomStream& rng);

/// Slope fit of an externally supplied series, with the same zero handling.
TauEstimate fit_tau_series(std::vector<TauRow> rows);

}  // namespace oppenheim

#endif  // OPPENHEIM_OPPENHEIM_PIPELINE_HPP
