#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "stylevox/mr.h"

namespace stylevox {

std::uint64_t splitmix64(std::uint64_t x);

// Folds `value` into `state`; the result is stable across platforms.
std::uint64_t mix_seed(std::uint64_t state, std::uint64_t value);

// Per-job seed from (master seed, MR index, ordered voice list, order index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t mr_id,
                          std::span<const PersonalityId> voices, std::uint64_t order_index);

// mt19937_64 with portable helpers; std distributions are avoided because
// their output differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();                  // [0, 1), 53-bit resolution
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n), n > 0
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stylevox
