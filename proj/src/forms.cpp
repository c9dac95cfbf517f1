#include "oppenheim/forms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "oppenheim/lattice.hpp"
#include "oppenheim/parallel.hpp"

namespace oppenheim {

std::string to_string(NormChoice n) { return n == NormChoice::sup ? "sup" : "euclidean"; }

NormChoice parse_norm_choice(const std::string& s) {
  if (s == "euclidean") return NormChoice::euclidean;
  if (s == "sup") return NormChoice::sup;
  throw DomainError("unknown norm '" + s + "' (expected euclidean or sup)");
}

double vector_norm(const Vec3& v, NormChoice choice) {
  return choice == NormChoice::sup ? sup_norm(v) : norm2(v);
}

QuadForm QuadForm::from_symmetric(const Mat3& s) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(std::fabs(s(i, j) - s(j, i)) <= 1e-12)) throw DomainError("form matrix not symmetric");
  if (!(std::fabs(det(s) + 1.0) <= 1e-8)) throw DomainError("form determinant must be -1");
  return QuadForm{s, std::nullopt};
}

QuadForm q0() { return QuadForm{Mat3::diag(1.0, 1.0, -1.0), Mat3::identity()}; }

QuadForm form_from_g(const Mat3& g) {
  if (!is_finite(g) || !(std::fabs(det(g) - 1.0) <= 1e-8))
    throw NotUnimodular("form_from_g: det g must be 1 (to 1e-8)");
  Mat3 s = g * Mat3::diag(1.0, 1.0, -1.0) * transpose(g);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) s(j, i) = s(i, j);
  return QuadForm{s, g};
}

double eval_form(const QuadForm& q, const Vec3& v) {
  const Mat3& s = q.sym;
  return v[0] * (s(0, 0) * v[0] + s(0, 1) * v[1] + s(0, 2) * v[2]) +
         v[1] * (s(1, 0) * v[0] + s(1, 1) * v[1] + s(1, 2) * v[2]) +
         v[2] * (s(2, 0) * v[0] + s(2, 1) * v[1] + s(2, 2) * v[2]);
}

double eval_form(const QuadForm& q, const IntVec3& n) { return eval_form(q, to_real(n)); }

bool better_form_value(const FormValueResult& a, const FormValueResult& b) {
  const double va = std::fabs(a.value), vb = std::fabs(b.value);
  if (va != vb) return va < vb;
  return a.n < b.n;
}

namespace {

struct Slicing {
  int plane0, plane1, axis;
};

Slicing choose_slicing(const Mat3& s) {
  if (std::fabs(s(2, 2)) >= 1e-6) return {0, 1, 2};
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::fabs(s(k, k)) > std::fabs(s(axis, axis))) axis = k;
  if (axis == 0) return {1, 2, 0};
  return {0, 2, 1};
}

// Largest r with r^2 <= rem for integer r >= 0.
std::int64_t isqrt_floor(double rem) {
  if (rem < 0.0) return -1;
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
  while (static_cast<double>((r + 1) * (r + 1)) <= rem) ++r;
  while (r > 0 && static_cast<double>(r * r) > rem) --r;
  return r;
}

struct Stripe {
  FormValueResult best;
  bool found = false;
};

}  // namespace

FormValueResult min_form_value_direct(const QuadForm& q, double T, NormChoice norm,
                                      unsigned workers) {
  if (!(T >= 1.0)) throw DomainError("min_form_value_direct: T < 1");
  const auto start = std::chrono::steady_clock::now();
  const Mat3& s = q.sym;
  const Slicing sl = choose_slicing(s);
  const double c2 = s(sl.axis, sl.axis);
  const double t_eff = T * (1.0 + kBallRelTol);
  const double t_sq = t_eff * t_eff;
  const auto bound = static_cast<std::int64_t>(std::floor(t_eff));

  // Half-space over (plane0, plane1): plane0 > 0, or plane0 = 0 and plane1 >= 0.
  const std::size_t n_stripes = static_cast<std::size_t>(bound) + 1;
  std::vector<Stripe> stripes(n_stripes);

  parallel_for(n_stripes, workers, [&](std::size_t idx) {
    const auto a = static_cast<std::int64_t>(idx);
    Stripe& out = stripes[idx];
    std::int64_t b_lim = bound;
    if (norm == NormChoice::euclidean) b_lim = isqrt_floor(t_sq - static_cast<double>(a * a));
    const std::int64_t b_lo = a == 0 ? 0 : -b_lim;

    auto consider = [&](std::int64_t b, std::int64_t c) {
      IntVec3 n{};
      n[sl.plane0] = a;
      n[sl.plane1] = b;
      n[sl.axis] = c;
      if (n[0] == 0 && n[1] == 0 && n[2] == 0) return;
      n = canonical_sign(n);
      const FormValueResult cand{n, eval_form(q, n), T, 0.0};
      if (!out.found || better_form_value(cand, out.best)) {
        out.best = cand;
        out.found = true;
      }
    };

    for (std::int64_t b = b_lo; b <= b_lim; ++b) {
      std::int64_t c_lim = bound;
      if (norm == NormChoice::euclidean)
        c_lim = isqrt_floor(t_sq - static_cast<double>(a * a + b * b));
      if (a == 0 && b == 0) {
        consider(0, 1);
        continue;
      }
      const double ad = static_cast<double>(a), bd = static_cast<double>(b);
      const double c1 = 2.0 * (s(sl.plane0, sl.axis) * ad + s(sl.plane1, sl.axis) * bd);
      const double c0 = s(sl.plane0, sl.plane0) * ad * ad +
                        2.0 * s(sl.plane0, sl.plane1) * ad * bd +
                        s(sl.plane1, sl.plane1) * bd * bd;

      auto around = [&](double x) {
        if (!std::isfinite(x)) return;
        const double f = std::floor(x);
        for (double y : {f, f + 1.0}) {
          if (y < static_cast<double>(-c_lim) || y > static_cast<double>(c_lim)) continue;
          consider(b, static_cast<std::int64_t>(y));
        }
      };

      consider(b, -c_lim);
      consider(b, c_lim);
      if (std::fabs(c2) < 1e-12) {
        if (c1 != 0.0) around(-c0 / c1);
        continue;
      }
      const double disc = c1 * c1 - 4.0 * c2 * c0;
      if (disc >= 0.0) {
        // Numerically stable root pair.
        const double sq = std::sqrt(disc);
        const double qq = -0.5 * (c1 + std::copysign(sq, c1));
        if (qq != 0.0) {
          around(qq / c2);
          around(c0 / qq);
        } else {
          around(0.0);
        }
      } else {
        around(-c1 / (2.0 * c2));
      }
    }
  });

  FormValueResult best;
  bool found = false;
  for (const auto& st : stripes) {
    if (!st.found) continue;
    if (!found || better_form_value(st.best, best)) {
      best = st.best;
      found = true;
    }
  }
  best.T = T;
  best.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace oppenheim
