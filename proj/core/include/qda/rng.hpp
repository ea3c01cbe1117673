#pragma once

#include <cstdint>
#include <random>

namespace qda {

// Derives an independent stream seed from a base seed. Used so that parallel
// units (optimizer restarts, per-sample shot draws) never share RNG state.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic random source. mt19937_64 has a standard-mandated sequence and
// the uniform/normal mappings below are hand-rolled, so identical seeds give
// identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace qda
