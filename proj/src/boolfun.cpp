#include "mfnear/boolfun.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace mfnear::boolfun {

namespace {

std::size_t word_count(int m) { return m <= 6 ? 1 : (std::size_t{1} << (m - 6)); }

std::uint64_t tail_mask(int m) { return m >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << m)) - 1; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("malformed hex digit '") + c + "'");
}

std::size_t hex_digits(int m) { return m < 2 ? 1 : (std::size_t{1} << (m - 2)); }

}  // namespace

TruthTable::TruthTable(int m) : m_(m) {
  if (m < 0 || m > gf2::kMaxWidth) throw std::invalid_argument("truth tables support 0..16 variables");
  words_.assign(word_count(m), 0);
}

TruthTable TruthTable::from_words(int m, std::vector<std::uint64_t> words) {
  TruthTable t(m);
  if (words.size() != t.words_.size()) throw std::invalid_argument("truth table word count mismatch");
  if ((words.back() & ~tail_mask(m)) != 0) throw std::invalid_argument("truth table bits beyond 2^m");
  t.words_ = std::move(words);
  return t;
}

TruthTable TruthTable::from_hex(std::string_view hex, int m) {
  TruthTable t(m);
  if (hex.size() != hex_digits(m)) {
    throw std::invalid_argument("expected " + std::to_string(hex_digits(m)) + " hex digits for " + std::to_string(m) +
                                " variables, got " + std::to_string(hex.size()));
  }
  const std::size_t n = hex.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto nibble = static_cast<std::uint64_t>(hex_value(hex[n - 1 - i]));
    t.words_[i / 16] |= nibble << (4 * (i % 16));
  }
  if ((t.words_.back() & ~tail_mask(m)) != 0) throw std::invalid_argument("hex value exceeds 2^m bits");
  return t;
}

TruthTable TruthTable::from_hex(std::string_view hex) {
  if (hex.empty() || !std::has_single_bit(hex.size())) throw std::invalid_argument("hex length must be a power of two");
  const int m = std::countr_zero(hex.size()) + 2;
  return from_hex(hex, m);
}

void TruthTable::set(Word x, bool value) {
  if (x >= size()) throw std::out_of_range("truth table index");
  const std::uint64_t bit = std::uint64_t{1} << (x & 63U);
  if (value) {
    words_[x >> 6] |= bit;
  } else {
    words_[x >> 6] &= ~bit;
  }
}

std::uint64_t TruthTable::weight() const {
  std::uint64_t w = 0;
  for (auto v : words_) w += static_cast<std::uint64_t>(std::popcount(v));
  return w;
}

std::string TruthTable::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t n = hex_digits(m_);
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    s[n - 1 - i] = kDigits[(words_[i / 16] >> (4 * (i % 16))) & 0xFU];
  }
  return s;
}

TruthTable TruthTable::operator^(const TruthTable& other) const {
  TruthTable r = *this;
  r ^= other;
  return r;
}

TruthTable& TruthTable::operator^=(const TruthTable& other) {
  if (other.m_ != m_) throw std::invalid_argument("truth table size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::size_t TruthTableHash::operator()(const TruthTable& t) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(t.variables());
  for (auto w : t.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::int64_t WalshSpectrum::energy() const {
  std::int64_t s = 0;
  for (auto v : values) s += static_cast<std::int64_t>(v) * v;
  return s;
}

WalshSpectrum walsh_transform(const TruthTable& f) {
  const std::uint64_t size = f.size();
  WalshSpectrum w;
  w.values.resize(size);
  for (std::uint64_t x = 0; x < size; ++x) w.values[x] = f(static_cast<Word>(x)) ? -1 : 1;
  for (std::uint64_t h = 1; h < size; h <<= 1) {
    for (std::uint64_t i = 0; i < size; i += h << 1) {
      for (std::uint64_t j = i; j < i + h; ++j) {
        const auto a = w.values[j];
        const auto b = w.values[j + h];
        w.values[j] = a + b;
        w.values[j + h] = a - b;
      }
    }
  }
  return w;
}

bool is_bent(const TruthTable& f) {
  if (f.variables() % 2 != 0) throw std::invalid_argument("bentness needs an even number of variables");
  const std::int32_t target = std::int32_t{1} << (f.variables() / 2);
  const auto w = walsh_transform(f);
  for (auto v : w.values) {
    if (std::abs(v) != target) return false;
  }
  return true;
}

std::optional<AffineFit> is_affine_on(const TruthTable& f, const gf2::AffineSubspace& u) {
  if (u.ambient() != f.variables()) throw std::invalid_argument("subspace and function widths differ");
  const auto& dir = u.direction();
  const auto rows = dir.rows();
  const Word base = u.base_bits();
  const bool at_base = f(base);
  Word linear = 0;
  for (Word r : rows) {
    if (f(base ^ r) != at_base) linear |= r & -r;
  }
  // Gray-code walk: the predicted value flips with <linear, row>.
  Word x = base;
  bool predicted = at_base;
  for (std::uint64_t g = 1; g < dir.size(); ++g) {
    const Word r = rows[static_cast<std::size_t>(std::countr_zero(g))];
    x ^= r;
    predicted ^= gf2::inner(linear, r);
    if (f(x) != predicted) return std::nullopt;
  }
  // base has zero pivot coordinates, so <linear, base> = 0.
  return AffineFit{gf2::BitVector(linear, u.ambient()), at_base, u};
}

bool affine_on_by_flats(const TruthTable& f, const gf2::AffineSubspace& u) {
  if (u.ambient() != f.variables()) throw std::invalid_argument("subspace and function widths differ");
  const auto rows = u.direction().rows();
  const auto points = u.elements();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (Word x : points) {
        if (f(x) ^ f(x ^ rows[i]) ^ f(x ^ rows[j]) ^ f(x ^ rows[i] ^ rows[j])) return false;
      }
    }
  }
  // Vanishing second differences on basis pairs gives a quadratic-free
  // restriction only along the basis; compare all points to the extension.
  const Word base = u.base_bits();
  for (std::uint64_t c = 0; c < u.size(); ++c) {
    bool predicted = f(base);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((c >> i) & 1U) predicted ^= f(base) ^ f(base ^ rows[i]);
    }
    if (f(u.element(static_cast<Word>(c))) != predicted) return false;
  }
  return true;
}

TruthTable xor_indicator(const TruthTable& f, const gf2::AffineSubspace& u) {
  if (u.ambient() != f.variables()) throw std::invalid_argument("subspace and function widths differ");
  TruthTable g = f;
  for (Word x : u.elements()) g.flip(x);
  return g;
}

std::uint64_t hamming_distance(const TruthTable& f, const TruthTable& g) { return (f ^ g).weight(); }

EaTransform EaTransform::inverse() const {
  auto inv = matrix.inverse();
  if (!inv) throw std::invalid_argument("EA transform with a singular matrix");
  // f(z) = g(zB + aB) + h(zB + aB) with B = A^-1.
  const gf2::BitVector shift2 = inv->apply(shift);
  const gf2::BitVector linear2 = inv->transpose().apply(h.linear);
  const bool constant2 = h.constant != gf2::inner(h.linear, shift2);
  return EaTransform{*inv, shift2, AffineFunction{linear2, constant2}};
}

TruthTable ea_transform(const TruthTable& f, const gf2::Gf2Matrix& a, const gf2::BitVector& shift,
                        const AffineFunction& h) {
  const int m = f.variables();
  if (a.row_count() != m || a.width() != m || shift.width() != m || h.linear.width() != m) {
    throw std::invalid_argument("EA transform shape mismatch");
  }
  if (a.rank() != m) throw std::invalid_argument("EA transform with a singular matrix");
  TruthTable g(m);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const auto xw = static_cast<Word>(x);
    if (f(a.apply(xw) ^ shift.bits()) != h(xw)) g.flip(xw);
  }
  return g;
}

TruthTable ea_transform(const TruthTable& f, const EaTransform& t) { return ea_transform(f, t.matrix, t.shift, t.h); }

}  // namespace mfnear::boolfun
