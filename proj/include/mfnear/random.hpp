#pragma once

// Seeded sampling. std::uniform_int_distribution is implementation-defined,
// so bounded draws use rejection on the raw 64-bit engine output instead;
// the same seed gives the same samples with every standard library.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mfnear/gf2.hpp"
#include "mfnear/mmf.hpp"

namespace mfnear {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  bool bit() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

mmf::Permutation random_permutation(Rng& rng, int n);
boolfun::TruthTable random_function(Rng& rng, int m);
mmf::MMFunction random_mmf(Rng& rng, int n);
gf2::Gf2Matrix random_invertible(Rng& rng, int n);
/// Uniform over the k-dimensional linear subspaces of Z2^n.
gf2::LinearSubspace random_linear_subspace(Rng& rng, int n, int k);

}  // namespace mfnear
