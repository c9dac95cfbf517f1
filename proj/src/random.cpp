#include "oppenheim/random.hpp"

namespace oppenheim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::split(std::uint64_t key) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(key + 0x632be59bd9b4e019ULL)));
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t RandomStream::below(std::uint64_t n) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} / n) * n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace oppenheim
