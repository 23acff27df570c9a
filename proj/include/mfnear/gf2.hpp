#pragma once

// Linear algebra over GF(2) on packed words.
//
// Bit order: x = (x_1, ..., x_n) is stored as the integer sum x_i 2^(i-1), so
// coordinate x_1 is the least-significant bit. Row echelon forms use the
// lowest set bit of a row as its pivot, which makes the pivot set the
// lexicographically smallest information set of the row space.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfnear/bigint.hpp"

namespace mfnear::gf2 {

using Word = std::uint32_t;
inline constexpr int kMaxWidth = 16;

constexpr Word low_mask(int width) {
  return width >= 32 ? ~Word{0} : (Word{1} << width) - 1;
}
constexpr bool parity(Word w) { return (std::popcount(w) & 1) != 0; }
constexpr bool inner(Word a, Word b) { return parity(a & b); }

/// Gathers the bits of `x` at the set positions of `mask` into the low bits.
constexpr Word extract_bits(Word x, Word mask) {
  Word out = 0;
  int k = 0;
  for (Word m = mask; m != 0; m &= m - 1, ++k) {
    if (x & (m & -m)) out |= Word{1} << k;
  }
  return out;
}

/// Scatters the low bits of `y` onto the set positions of `mask`.
constexpr Word deposit_bits(Word y, Word mask) {
  Word out = 0;
  int k = 0;
  for (Word m = mask; m != 0; m &= m - 1, ++k) {
    if ((y >> k) & 1U) out |= (m & -m);
  }
  return out;
}

class BitVector {
 public:
  constexpr BitVector() = default;
  BitVector(Word bits, int width);

  static BitVector zero(int width) { return BitVector(0, width); }
  /// e_i for a 1-based coordinate i.
  static BitVector unit(int coordinate, int width);
  /// Parses a coordinate tuple written x_1 first, e.g. "10110".
  static BitVector parse(std::string_view tuple);

  Word bits() const { return bits_; }
  int width() const { return width_; }
  bool operator[](int coordinate) const;
  int weight() const { return std::popcount(bits_); }
  bool is_zero() const { return bits_ == 0; }
  std::string to_string() const;

  BitVector operator^(const BitVector& other) const;
  BitVector& operator^=(const BitVector& other);

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector&, const BitVector&) = default;

 private:
  Word bits_ = 0;
  int width_ = 0;
};

bool inner(const BitVector& a, const BitVector& b);

/// Row-major matrix; a row vector x maps to xM (XOR of the rows selected by x).
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  explicit Gf2Matrix(int width) : width_(check_width(width)) {}
  Gf2Matrix(std::vector<BitVector> rows, int width);

  static Gf2Matrix identity(int n);
  static Gf2Matrix from_words(std::span<const Word> rows, int width);

  int row_count() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  const BitVector& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  std::vector<Word> words() const;

  void append(const BitVector& row);

  BitVector apply(const BitVector& x) const;
  Word apply(Word x) const;
  Gf2Matrix operator*(const Gf2Matrix& rhs) const;
  Gf2Matrix transpose() const;
  int rank() const;
  std::optional<Gf2Matrix> inverse() const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  static int check_width(int width);

  int width_ = 0;
  std::vector<BitVector> rows_;
};

/// Strictly increasing subset of {1, ..., n}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<int> indices, int ambient);

  static IndexSet from_mask(Word mask, int ambient);
  static IndexSet all(int ambient);

  const std::vector<int>& indices() const { return indices_; }
  BitVector mask() const { return BitVector(mask_, ambient_); }
  Word mask_bits() const { return mask_; }
  int size() const { return static_cast<int>(indices_.size()); }
  int ambient() const { return ambient_; }
  IndexSet complement() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.ambient_ == b.ambient_ && a.mask_ == b.mask_;
  }

 private:
  std::vector<int> indices_;
  Word mask_ = 0;
  int ambient_ = 0;
};

/// (x_{i_1}, ..., x_{i_k}).
BitVector project(const BitVector& x, const IndexSet& positions);
/// z with z_{i_j} = y_j and zeros elsewhere; project(embed(y, I), I) == y.
BitVector embed(const BitVector& y, const IndexSet& positions);

struct RrefResult {
  Gf2Matrix basis;
  IndexSet pivots;
};

/// Reduced row echelon form with zero rows dropped.
RrefResult rref(const Gf2Matrix& m);

/// Linear subspace stored as its reduced row echelon basis.
class LinearSubspace {
 public:
  LinearSubspace() = default;

  static LinearSubspace zero(int ambient);
  static LinearSubspace whole(int ambient);
  static LinearSubspace span(const Gf2Matrix& generators);
  static LinearSubspace span(std::span<const Word> generators, int ambient);
  /// Trusts that `rows` are already in reduced echelon form, sorted by pivot.
  static LinearSubspace from_rref(std::span<const Word> rows, int ambient);

  int dim() const { return dim_; }
  int ambient() const { return ambient_; }
  std::span<const Word> rows() const { return {rows_.data(), static_cast<std::size_t>(dim_)}; }
  Gf2Matrix basis() const;
  Word pivot_mask() const { return pivots_; }
  IndexSet pivots() const { return IndexSet::from_mask(pivots_, ambient_); }
  std::uint64_t size() const { return std::uint64_t{1} << dim_; }

  bool contains(Word v) const { return reduce(v) == 0; }
  bool contains(const BitVector& v) const;
  /// Clears every pivot coordinate of v by adding basis rows.
  Word reduce(Word v) const;
  /// sum_i u_i row_i for the coefficient vector u.
  Word element(Word coefficients) const;
  /// Elements in increasing coefficient order.
  std::vector<Word> elements() const;
  /// Coefficient vector of a member (its pivot coordinates).
  Word coordinates(Word member) const { return extract_bits(member, pivots_); }

  LinearSubspace orthogonal() const;
  LinearSubspace intersect(const LinearSubspace& other) const;
  bool is_subspace_of(const LinearSubspace& other) const;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && std::equal(a.rows().begin(), a.rows().end(), b.rows().begin());
  }
  friend std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b);

 private:
  std::array<Word, kMaxWidth> rows_{};
  Word pivots_ = 0;
  std::uint8_t dim_ = 0;
  std::uint8_t ambient_ = 0;
};

/// base + direction with the base reduced against the direction (its pivot
/// coordinates are zero), which makes the representation canonical.
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(const BitVector& base, const LinearSubspace& direction);
  AffineSubspace(Word base, const LinearSubspace& direction);
  explicit AffineSubspace(const LinearSubspace& direction) : AffineSubspace(Word{0}, direction) {}

  static AffineSubspace point(const BitVector& v);
  static AffineSubspace whole(int ambient);

  Word base_bits() const { return base_; }
  BitVector base() const { return BitVector(base_, direction_.ambient()); }
  const LinearSubspace& direction() const { return direction_; }
  int dim() const { return direction_.dim(); }
  int ambient() const { return direction_.ambient(); }
  std::uint64_t size() const { return direction_.size(); }
  bool is_linear() const { return base_ == 0; }

  bool contains(Word v) const { return direction_.reduce(v) == base_; }
  bool contains(const BitVector& v) const;
  Word element(Word coefficients) const { return base_ ^ direction_.element(coefficients); }
  std::vector<Word> elements() const;

  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
  friend std::strong_ordering operator<=>(const AffineSubspace& a, const AffineSubspace& b);

 private:
  Word base_ = 0;
  LinearSubspace direction_;
};

/// H(x) = xA + c, optionally tagged with the affine subspace it is meant for.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(Gf2Matrix matrix, BitVector constant, std::optional<AffineSubspace> domain = std::nullopt);

  /// The canonical map on `domain`: rows of A vanish off the pivot coordinates
  /// of the domain's direction, c = H(base). `increments[i]` is
  /// H(base + row_i) + H(base).
  static AffineMap on_subspace(const AffineSubspace& domain, Word at_base, std::span<const Word> increments,
                               int target_width);

  const Gf2Matrix& matrix() const { return matrix_; }
  const BitVector& constant() const { return constant_; }
  const std::optional<AffineSubspace>& domain() const { return domain_; }
  int source_width() const { return matrix_.row_count(); }
  int target_width() const { return constant_.width(); }

  BitVector operator()(const BitVector& x) const;
  Word apply(Word x) const { return matrix_.apply(x) ^ constant_.bits(); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  Gf2Matrix matrix_;
  BitVector constant_;
  std::optional<AffineSubspace> domain_;
};

BigCount gaussian_binomial(int n, int k);

/// Pivot columns of the direction's reduced basis.
IndexSet information_set(const AffineSubspace& u);
IndexSet information_set(const LinearSubspace& l);

/// The canonical affine subspace equal to the point set, if the set is one.
std::optional<AffineSubspace> affine_hull_or_none(std::span<const Word> points, int ambient);
std::optional<AffineSubspace> affine_hull_or_none(std::span<const BitVector> points);

/// Calls `visit(rows, pivot_mask)` once per k-dimensional linear subspace of
/// Z2^n, in canonical order (pivot sets by increasing mask, then free entries
/// by increasing counter).
void for_each_linear_rref(int n, int k, const std::function<void(std::span<const Word>, Word)>& visit);

/// Every k-dimensional (affine or linear) subspace exactly once, canonical form.
void for_each_subspace(int n, int k, bool affine, const std::function<void(const AffineSubspace&)>& visit);
std::vector<AffineSubspace> enumerate_subspaces(int n, int k, bool affine);

/// Cached list of all k-dimensional linear subspaces of Z2^n.
const std::vector<LinearSubspace>& linear_subspaces(int n, int k);

}  // namespace mfnear::gf2
