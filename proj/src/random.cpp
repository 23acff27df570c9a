#include "mfnear/random.hpp"

#include <stdexcept>

namespace mfnear {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return r % bound;
}

mmf::Permutation random_permutation(Rng& rng, int n) {
  std::vector<gf2::Word> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<gf2::Word>(i);
  rng.shuffle(t);
  return mmf::Permutation(std::move(t), n);
}

boolfun::TruthTable random_function(Rng& rng, int m) {
  boolfun::TruthTable f(m);
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set(static_cast<gf2::Word>(x), rng.bit());
  return f;
}

mmf::MMFunction random_mmf(Rng& rng, int n) {
  auto pi = random_permutation(rng, n);
  auto phi = random_function(rng, n);
  return mmf::MMFunction(std::move(pi), std::move(phi));
}

gf2::Gf2Matrix random_invertible(Rng& rng, int n) {
  // Rows drawn uniformly outside the span of the previous ones.
  std::vector<gf2::Word> rows;
  while (static_cast<int>(rows.size()) < n) {
    const auto v = static_cast<gf2::Word>(rng.below(std::uint64_t{1} << n));
    rows.push_back(v);
    if (gf2::LinearSubspace::span(rows, n).dim() != static_cast<int>(rows.size())) rows.pop_back();
  }
  return gf2::Gf2Matrix::from_words(rows, n);
}

gf2::LinearSubspace random_linear_subspace(Rng& rng, int n, int k) {
  // The span of k random independent vectors is uniform over S(n, k).
  std::vector<gf2::Word> rows;
  while (static_cast<int>(rows.size()) < k) {
    const auto v = static_cast<gf2::Word>(rng.below(std::uint64_t{1} << n));
    rows.push_back(v);
    if (gf2::LinearSubspace::span(rows, n).dim() != static_cast<int>(rows.size())) rows.pop_back();
  }
  return gf2::LinearSubspace::span(rows, n);
}

}  // namespace mfnear
