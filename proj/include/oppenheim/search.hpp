#ifndef OPPENHEIM_SEARCH_HPP
#define OPPENHEIM_SEARCH_HPP

// Candidate points of the norm ball H_T: a deterministic KAK grid whose
// t-strata are equiprobable under the Haar density, followed by the same
// number of Haar-random points.

#include <cstddef>
#include <vector>

#include "oppenheim/linalg.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim {

struct GridShape {
  std::size_t t_strata = 1;
  std::size_t theta = 1;
  std::size_t theta_prime = 1;
  std::size_t size() const { return t_strata * theta * theta_prime; }
};

/// At least 8 x 8 angles once the budget allows it, roughly budget points.
GridShape grid_shape(std::size_t budget);

/// Grid in order of increasing t, then theta, then theta'.
std::vector<KAKCoords> search_grid(double T, std::size_t budget);

/// search_grid(T, budget) followed by `budget` Haar-random points of H_T.
/// Throws DomainError for T <= sqrt(3) or budget == 0.
std::vector<KAKCoords> search_candidates(double T, std::size_t budget, RandomStream& rng);

}  // namespace oppenheim

#endif  // OPPENHEIM_SEARCH_HPP
