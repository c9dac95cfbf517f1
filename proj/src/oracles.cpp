#include "oppenheim/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "oppenheim/spin.hpp"

namespace oppenheim::oracle {

ShortVectorResult shortest_in_box(const Mat3& basis, int box) {
  ShortVectorResult best;
  double best_sq = -1.0;
  for (int i = -box; i <= box; ++i)
    for (int j = -box; j <= box; ++j)
      for (int k = -box; k <= box; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const IntVec3 c = canonical_sign({i, j, k});
        if (c != IntVec3{i, j, k}) continue;
        const Vec3 v = to_real(c) * basis;
        const double sq = dot(v, v);
        bool take = best_sq < 0.0 || sq < best_sq * (1.0 - 1e-12);
        if (!take && sq <= best_sq * (1.0 + 1e-12)) take = tie_prefers(c, best.coeffs);
        if (take) {
          best = {c, v, std::sqrt(sq)};
          best_sq = sq;
        }
      }
  return best;
}

FormValueResult min_form_value_full(const QuadForm& q, double T, NormChoice norm) {
  const double t_eff = T * (1.0 + kBallRelTol);
  const auto b = static_cast<std::int64_t>(std::floor(t_eff));
  FormValueResult best;
  bool found = false;
  for (std::int64_t i = -b; i <= b; ++i)
    for (std::int64_t j = -b; j <= b; ++j)
      for (std::int64_t k = -b; k <= b; ++k) {
        const IntVec3 n{i, j, k};
        if (i == 0 && j == 0 && k == 0) continue;
        if (canonical_sign(n) != n) continue;
        if (norm == NormChoice::euclidean && static_cast<double>(i * i + j * j + k * k) > t_eff * t_eff)
          continue;
        const FormValueResult cand{n, eval_form(q, n), T, 0.0};
        if (!found || better_form_value(cand, best)) {
          best = cand;
          found = true;
        }
      }
  return best;
}

SL2Element random_sl2(RandomStream& rng, double radius) { return sample_h_ball(radius, rng).matrix; }

SpinBattery spin_battery(std::size_t trials, RandomStream& rng, bool corrupt) {
  auto iota = [corrupt](const SL2Element& h) { return detail::spin_cover_variant(h, corrupt); };
  const Mat3 s0 = Mat3::diag(1.0, 1.0, -1.0);
  SpinBattery r;
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const SL2Element h1 = random_sl2(rng), h2 = random_sl2(rng);
    const Mat3 m1 = iota(h1);
    r.homomorphism = std::max(r.homomorphism, max_abs_diff(iota(h1 * h2), m1 * iota(h2)));
    r.determinant = std::max(r.determinant, std::fabs(det(m1) - 1.0));
    // Q0(v iota(h)) = Q0(v) for unit v, relative to |Q0| scale 1.
    Vec3 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double len = norm2(v);
    for (auto& x : v) x /= len;
    const Vec3 w = v * m1;
    const double q_before = dot(v * s0, v), q_after = dot(w * s0, w);
    r.form_preservation = std::max(r.form_preservation, std::fabs(q_after - q_before));
    r.kernel = std::max(r.kernel, max_abs_diff(iota(-h1), m1));
  }
  r.kernel = std::max(r.kernel, max_abs_diff(iota(-SL2Element::identity()), Mat3::identity()));
  return r;
}

}  // namespace oppenheim::oracle
