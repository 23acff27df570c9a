#pragma once

// Boolean functions as packed truth tables.
//
// Bit number int(x) of the table is f(x). For functions of (x, y) in
// Z2^n x Z2^n the index is int(x) + 2^n int(y), so each coset of
// Z2^n x {0} is one contiguous block of 2^n bits.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfnear/gf2.hpp"

namespace mfnear::boolfun {

using gf2::Word;

class TruthTable {
 public:
  TruthTable() = default;
  /// The constant-zero function of m variables.
  explicit TruthTable(int m);

  static TruthTable from_words(int m, std::vector<std::uint64_t> words);
  /// Lowercase or uppercase hex, most significant digit first; exactly
  /// max(1, 2^m / 4) digits.
  static TruthTable from_hex(std::string_view hex, int m);
  /// Infers m from the digit count (m >= 2).
  static TruthTable from_hex(std::string_view hex);

  int variables() const { return m_; }
  std::uint64_t size() const { return std::uint64_t{1} << m_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator()(Word x) const { return ((words_[x >> 6] >> (x & 63U)) & 1U) != 0; }
  void set(Word x, bool value);
  void flip(Word x) { words_[x >> 6] ^= std::uint64_t{1} << (x & 63U); }

  std::uint64_t weight() const;
  std::string to_hex() const;

  TruthTable operator^(const TruthTable& other) const;
  TruthTable& operator^=(const TruthTable& other);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable&, const TruthTable&) = default;

 private:
  int m_ = 0;
  std::vector<std::uint64_t> words_;
};

struct TruthTableHash {
  std::size_t operator()(const TruthTable& t) const noexcept;
};

/// W_f(u) = sum_x (-1)^(f(x) + <u,x>).
struct WalshSpectrum {
  std::vector<std::int32_t> values;
  /// sum_u W_f(u)^2; equals 2^(2m) for every f.
  std::int64_t energy() const;
};

WalshSpectrum walsh_transform(const TruthTable& f);

/// |W_f(u)| = 2^(m/2) for all u. Throws on odd m.
bool is_bent(const TruthTable& f);

/// f(x) = <linear_part, x> + constant for every x in domain.
struct AffineFit {
  gf2::BitVector linear_part;
  bool constant = false;
  gf2::AffineSubspace domain;

  bool operator()(Word x) const { return gf2::inner(linear_part.bits(), x) != constant; }
};

/// Fits f on the base point and base + row_i, then checks every point.
/// The returned linear part is supported on the direction's pivot columns.
std::optional<AffineFit> is_affine_on(const TruthTable& f, const gf2::AffineSubspace& u);

/// Second test: every 2-flat spanned by a pair of basis rows sums to zero at
/// every point of u, and every point agrees with the base-point extension.
bool affine_on_by_flats(const TruthTable& f, const gf2::AffineSubspace& u);

/// f + 1_U.
TruthTable xor_indicator(const TruthTable& f, const gf2::AffineSubspace& u);

std::uint64_t hamming_distance(const TruthTable& f, const TruthTable& g);

/// h(x) = <linear, x> + constant on the whole space.
struct AffineFunction {
  gf2::BitVector linear;
  bool constant = false;

  bool operator()(Word x) const { return gf2::inner(linear.bits(), x) != constant; }
  friend bool operator==(const AffineFunction&, const AffineFunction&) = default;
};

/// g(x) = f(xA + a) + h(x).
struct EaTransform {
  gf2::Gf2Matrix matrix;
  gf2::BitVector shift;
  AffineFunction h;

  /// The transform that undoes this one. Throws if the matrix is singular.
  EaTransform inverse() const;
};

TruthTable ea_transform(const TruthTable& f, const gf2::Gf2Matrix& a, const gf2::BitVector& shift,
                        const AffineFunction& h);
TruthTable ea_transform(const TruthTable& f, const EaTransform& t);

}  // namespace mfnear::boolfun
