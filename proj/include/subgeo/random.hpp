#pragma once

#include <cstdint>

#include "subgeo/core.hpp"

namespace subgeo {

// Small deterministic generator (splitmix64 core) so identical seeds give
// identical subspaces on every platform, independent of libc distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  int uniform_int(int lo, int hi);     // inclusive bounds
  double normal();                     // standard Gaussian (Box-Muller)
  Complex scalar(Field field);         // standard real or complex Gaussian

  // Independent stream for a numbered trial of a seeded run.
  static Rng for_trial(std::uint64_t seed, long trial);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed p-dimensional subspace of F^n.
Subspace random_subspace(int n, int p, Field field, Rng& rng);
Subspace random_subspace(int n, int p, Field field, std::uint64_t seed);

// Random p-dimensional subspace of a given one.
Subspace random_subspace_of(const Subspace& whole, int p, Rng& rng);

// Random unit vector in F^n.
Vector random_unit(int n, Field field, Rng& rng);

}  // namespace subgeo
