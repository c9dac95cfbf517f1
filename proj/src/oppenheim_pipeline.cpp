#include "oppenheim/oppenheim_pipeline.hpp"

#include <cmath>
#include <limits>

#include "oppenheim/search.hpp"

namespace oppenheim {

std::optional<OrbitHit> orbit_short_vector_search(const Mat3& g, double T, double eta,
                                                  std::size_t budget, RandomStream& rng) {
  if (!is_finite(g) || !(std::fabs(det(g) - 1.0) <= 1e-8))
    throw NotUnimodular("orbit_short_vector_search: det g must be 1 (to 1e-8)");
  const Mat3 g_reduced = reduce_basis(g);
  const double level = std::pow(T, eta / 3.0);
  for (const auto& c : search_candidates(T, budget, rng)) {
    const Mat3 m = spin_cover(kak_compose(c));
    if (alpha1_of_basis(g_reduced * m) < level) continue;
    OrbitHit hit;
    hit.h = HElement::from_kak(c);
    hit.lattice_basis = g * m;
    const LatticePoint lattice = LatticePoint::from_basis(hit.lattice_basis);
    hit.v = lattice.shortest();
    hit.alpha1 = lattice.alpha1();
    return hit;
  }
  return std::nullopt;
}

double eta_for_tau(double tau) { return 3.0 * tau / (tau + 2.0); }

std::optional<OppenheimCertificate> effective_oppenheim(const Mat3& g, double tau, double T,
                                                        std::size_t budget, RandomStream& rng,
                                                        NormChoice norm) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("effective_oppenheim: need 0 < tau < 1");
  if (!(T >= 1.0)) throw DomainError("effective_oppenheim: need T >= 1");
  const double eta = eta_for_tau(tau);
  const auto hit = orbit_short_vector_search(g, T, eta, budget, rng);
  if (!hit) return std::nullopt;

  // n = v iota(h)^{-1} g^{-1}.
  const Vec3 n_real = hit->v.vector * spin_cover(hit->h.matrix.inverse()) * mat3_inv(g);
  IntVec3 n{};
  double residual = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double r = std::nearbyint(n_real[k]);
    residual = std::max(residual, std::fabs(n_real[k] - r));
    n[k] = static_cast<std::int64_t>(r);
  }
  if (!(residual < kRoundingTol))
    throw RoundingFailure("integer recovery residual " + std::to_string(residual) +
                          " exceeds 1e-4");

  const QuadForm q = form_from_g(g);
  OppenheimCertificate cert;
  cert.tau = tau;
  cert.eta = eta;
  cert.T = T;
  cert.h = hit->h;
  cert.v = hit->v.vector;
  cert.rounding_residual = residual;
  const double growth = std::pow(T, (3.0 - eta) / 3.0);
  cert.t_tilde = hs_norm(g) * growth;
  cert.inverse_norm_bound = hs_norm(mat3_inv(g)) * growth;
  cert.value_bound = std::pow(T, -2.0 * eta / 3.0);

  cert.result.n = canonical_sign(n);
  cert.result.value = eval_form(q, cert.result.n);
  cert.result.T = cert.t_tilde;
  const double n_norm = vector_norm(to_real(cert.result.n), norm);
  cert.norm_bound_holds = n_norm <= cert.t_tilde * (1.0 + kCertificateSlack);
  cert.inverse_norm_bound_holds = n_norm <= cert.inverse_norm_bound * (1.0 + kCertificateSlack);
  cert.value_bound_holds =
      std::fabs(cert.result.value) <= cert.value_bound * (1.0 + kCertificateSlack);
  return cert;
}

std::string to_string(TauEngine e) { return e == TauEngine::orbit ? "orbit" : "direct"; }

TauEstimate fit_tau_series(std::vector<TauRow> rows) {
  TauEstimate est;
  est.rows = std::move(rows);
  std::vector<double> lx, ly;
  for (const auto& r : est.rows) {
    if (r.min_abs_q == 0.0) est.zero_attained = true;
    lx.push_back(std::log(r.T));
    ly.push_back(std::log(r.min_abs_q));
  }
  if (est.zero_attained) {
    est.slope = -std::numeric_limits<double>::infinity();
    return est;
  }
  if (lx.size() >= 2) {
    est.fit = fit_line(lx, ly);
    est.slope = est.fit.slope;
  } else {
    est.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

std::vector<TauRow> tau_rows(const QuadForm& q, std::span<const double> ladder,
                             const TauOptions& options, RandomStream& rng) {
  std::vector<TauRow> rows;
  if (options.engine == TauEngine::direct) {
    for (double T : ladder) {
      const FormValueResult r = min_form_value_direct(q, T, options.norm, options.workers);
      rows.push_back({T, std::fabs(r.value), r.n});
      if (r.value == 0.0) break;
    }
  } else {
    if (!q.source_g) throw DomainError("estimate_tau: orbit engine needs a form built from g");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      RandomStream sub = rng.split(i);
      const auto cert =
          effective_oppenheim(*q.source_g, options.tau, ladder[i], options.budget, sub, options.norm);
      if (cert) rows.push_back({cert->t_tilde, std::fabs(cert->result.value), cert->result.n});
    }
  }
  return rows;
}

TauEstimate estimate_tau(const QuadForm& q, std::span<const double> ladder,
                         const TauOptions& options, RandomStream& rng) {
  if (ladder.size() < 5) throw DomainError("estimate_tau: ladder needs >= 5 entries");
  return fit_tau_series(tau_rows(q, ladder, options, rng));
}

}  // namespace oppenheim
