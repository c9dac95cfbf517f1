#include "oppenheim/search.hpp"

#include <algorithm>
#include <cmath>

#include "oppenheim/spin.hpp"

namespace oppenheim {

GridShape grid_shape(std::size_t budget) {
  if (budget < 64) return {1, std::max<std::size_t>(budget, 1), 1};
  const auto ang = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(budget)))));
  return {std::max<std::size_t>(1, budget / (ang * ang)), ang, ang};
}

std::vector<KAKCoords> search_grid(double T, std::size_t budget) {
  const double t_max = t_max_for_radius(T);
  const GridShape shape = grid_shape(budget);
  std::vector<KAKCoords> out;
  out.reserve(shape.size());
  for (std::size_t i = 0; i < shape.t_strata; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(shape.t_strata);
    const double t = ball_t_quantile(t_max, u);
    for (std::size_t j = 0; j < shape.theta; ++j)
      for (std::size_t k = 0; k < shape.theta_prime; ++k)
        out.push_back({kTwoPi * static_cast<double>(j) / static_cast<double>(shape.theta), t,
                       kTwoPi * static_cast<double>(k) / static_cast<double>(shape.theta_prime)});
  }
  return out;
}

std::vector<KAKCoords> search_candidates(double T, std::size_t budget, RandomStream& rng) {
  if (!(T > std::sqrt(3.0))) throw DomainError("search radius must exceed sqrt(3)");
  if (budget == 0) throw DomainError("search budget must be >= 1");
  std::vector<KAKCoords> out = search_grid(T, budget);
  const double t_max = t_max_for_radius(T);
  out.reserve(out.size() + budget);
  for (std::size_t i = 0; i < budget; ++i) {
    KAKCoords c;
    c.theta = rng.uniform(0.0, kTwoPi);
    c.t = ball_t_quantile(t_max, rng.uniform());
    c.theta_prime = rng.uniform(0.0, kTwoPi);
    out.push_back(c);
  }
  return out;
}

}  // namespace oppenheim
