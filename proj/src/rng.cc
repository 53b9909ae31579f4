#include "stylevox/rng.h"

#include <limits>

namespace stylevox {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t state, std::uint64_t value) {
  return splitmix64(state ^ splitmix64(value));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t mr_id,
                          std::span<const PersonalityId> voices, std::uint64_t order_index) {
  std::uint64_t h = splitmix64(master);
  h = mix_seed(h, mr_id);
  h = mix_seed(h, voices.size());
  for (PersonalityId p : voices) h = mix_seed(h, static_cast<std::uint64_t>(p) + 1);
  return mix_seed(h, order_index);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace stylevox
