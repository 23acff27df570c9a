#pragma once

// Maiorana-McFarland functions f(x, y) = <x, pi(y)> + phi(y) and their
// closest bent functions.
//
// An n-dimensional affine subspace U of Z2^2n is written through a triple
// (L, R, H): L is the y-side projection, R = U meet (Z2^n x {0}) read on the
// x side, and H: L -> Z2^k places the x side of each fibre, so that
//   U = { (embed(H(y), I) + z, y) : y in L, z in R },  I = iota(R^perp).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mfnear/bigint.hpp"
#include "mfnear/boolfun.hpp"
#include "mfnear/gf2.hpp"

namespace mfnear::mmf {

using boolfun::TruthTable;
using gf2::AffineMap;
using gf2::AffineSubspace;
using gf2::IndexSet;
using gf2::LinearSubspace;
using gf2::Word;

class Permutation {
 public:
  Permutation() = default;
  /// table[y] = pi(y); throws unless it is a bijection of Z2^n.
  Permutation(std::vector<Word> table, int n);

  static Permutation identity(int n);

  int n() const { return n_; }
  const std::vector<Word>& table() const { return table_; }
  Word operator()(Word y) const { return table_[y]; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  int n_ = 0;
  std::vector<Word> table_;
};

struct MMFunction {
  Permutation pi;
  TruthTable phi;

  MMFunction() = default;
  MMFunction(Permutation p, TruthTable f);
  int n() const { return pi.n(); }
};

TruthTable build_mmf(const MMFunction& g);

/// pi(U) is an affine subspace (for k >= 3 pi need not be affine on U).
bool maps_to_subspace(const Permutation& pi, const AffineSubspace& u);

/// A_k(pi) in canonical subspace order.
std::vector<AffineSubspace> image_subspaces(const Permutation& pi, int k);
std::uint64_t image_subspace_count(const Permutation& pi, int k);

struct SubspaceTriple {
  AffineSubspace L;
  LinearSubspace R;
  AffineMap H;
};

/// I = iota(R^perp) unless `info` is supplied.
AffineSubspace compose_subspace(const SubspaceTriple& t, const IndexSet* info = nullptr);
SubspaceTriple decompose_subspace(const AffineSubspace& u);

/// 2 x 64-bit coefficient vector. Unknown j < k is H(b)_j (b = canonical base
/// of L); unknown k(i+1)+j is bit j of H(b + s_i) + H(b) for basis row s_i.
struct CoefficientVector {
  std::array<std::uint64_t, 2> w{};

  bool get(int j) const { return ((w[static_cast<std::size_t>(j >> 6)] >> (j & 63)) & 1U) != 0; }
  void flip(int j) { w[static_cast<std::size_t>(j >> 6)] ^= std::uint64_t{1} << (j & 63); }
  bool is_zero() const { return w[0] == 0 && w[1] == 0; }
  int lowest() const;
  CoefficientVector& operator^=(const CoefficientVector& o) {
    w[0] ^= o.w[0];
    w[1] ^= o.w[1];
    return *this;
  }
  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

/// All affine H: L -> Z2^k with y -> <H(y), pi_I(y)> + phi(y) affine on L.
class HSolutionSpace {
 public:
  HSolutionSpace() = default;
  HSolutionSpace(AffineSubspace l, IndexSet info, std::optional<CoefficientVector> particular,
                 std::vector<CoefficientVector> kernel);

  const AffineSubspace& L() const { return l_; }
  const IndexSet& info() const { return info_; }
  int k() const { return l_.dim(); }
  bool empty() const { return !particular_; }
  /// 0 or 2^|kernel|.
  std::uint64_t count() const;
  int kernel_dim() const { return static_cast<int>(kernel_.size()); }

  AffineMap particular() const;
  std::vector<AffineMap> kernel_basis() const;
  /// Member number `index` in coefficient-lexicographic order.
  AffineMap member(std::uint64_t index) const;
  std::vector<AffineMap> members() const;

  AffineMap to_map(const CoefficientVector& z) const;
  CoefficientVector coefficients(const AffineMap& h) const;

 private:
  AffineSubspace l_;
  IndexSet info_;
  std::optional<CoefficientVector> particular_;
  std::vector<CoefficientVector> kernel_;
};

/// I = iota(<pi(L)>). Throws if L is not in A_k(pi).
IndexSet near_info_set(const Permutation& pi, const AffineSubspace& l);

HSolutionSpace h_solution_space(const MMFunction& g, const AffineSubspace& l);

/// The 32 maps for dim L = 2 straight from the free-bit parametrization,
/// in the same order as h_solution_space(g, l).members().
std::vector<AffineMap> h_solutions_dim2(const MMFunction& g, const AffineSubspace& l);

struct NearBentWitness {
  AffineSubspace L;
  AffineMap H;
  IndexSet I;
  AffineSubspace U;
};

/// Every (L, H): canonical L order by dimension, then H in coefficient order.
std::vector<NearBentWitness> near_enumerate(const MMFunction& g);
/// Witnesses for one dimension of L only.
std::vector<NearBentWitness> near_enumerate(const MMFunction& g, int k);

BigCount lambda_count(int n);
BigCount near_count(const MMFunction& g);

/// Makes the witness (and its realized U) for an already-solved H.
NearBentWitness make_witness(const MMFunction& g, const AffineSubspace& l, const AffineMap& h);
TruthTable realize_near(const MMFunction& g, const NearBentWitness& w);

struct Parent {
  MMFunction g;
  AffineMap H;
};

/// The 24 (pi', phi', H') with the same realized function (dim L = 2).
std::vector<Parent> coincidence_parents(const MMFunction& g, const NearBentWitness& w);

/// f_{pi,phi} affine on every coset of the linear n-dimensional U.
bool member_of_mf_u(const MMFunction& g, const AffineSubspace& u);

/// All U in S(2n, n) with f affine on each coset of U.
std::vector<LinearSubspace> m_subspaces(const TruthTable& f);

/// Recovers (pi, phi) when f is affine on every coset of Z2^n x {0} and the
/// slope map is a bijection.
std::optional<MMFunction> mf_from_truth_table(const TruthTable& f);

}  // namespace mfnear::mmf
