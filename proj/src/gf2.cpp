#include "mfnear/gf2.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mfnear::gf2 {

namespace {

void require_width(int width) {
  if (width < 0 || width > kMaxWidth) {
    throw std::invalid_argument("width " + std::to_string(width) + " outside 0.." + std::to_string(kMaxWidth));
  }
}

// Inserts v into an RREF row array (rows[0..dim) sorted by pivot). Returns
// false when v already lies in the span.
bool insert_row(std::array<Word, kMaxWidth>& rows, Word& pivots, std::uint8_t& dim, Word v) {
  for (int i = 0; i < dim; ++i) {
    if (v & (rows[i] & -rows[i])) v ^= rows[i];
  }
  if (v == 0) return false;
  const Word bit = v & -v;
  int pos = dim;
  for (int i = 0; i < dim; ++i) {
    if (rows[i] & bit) rows[i] ^= v;
  }
  while (pos > 0 && (rows[pos - 1] & -rows[pos - 1]) > bit) {
    rows[pos] = rows[pos - 1];
    --pos;
  }
  rows[pos] = v;
  pivots |= bit;
  ++dim;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(Word bits, int width) : bits_(bits), width_(width) {
  require_width(width);
  if ((bits & ~low_mask(width)) != 0) throw std::invalid_argument("bits set above the vector width");
}

BitVector BitVector::unit(int coordinate, int width) {
  if (coordinate < 1 || coordinate > width) throw std::out_of_range("coordinate outside 1..width");
  return BitVector(Word{1} << (coordinate - 1), width);
}

BitVector BitVector::parse(std::string_view tuple) {
  Word bits = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] == '1') {
      bits |= Word{1} << i;
    } else if (tuple[i] != '0') {
      throw std::invalid_argument("bit tuple may only contain 0 and 1");
    }
  }
  return BitVector(bits, static_cast<int>(tuple.size()));
}

bool BitVector::operator[](int coordinate) const {
  if (coordinate < 1 || coordinate > width_) throw std::out_of_range("coordinate outside 1..width");
  return ((bits_ >> (coordinate - 1)) & 1U) != 0;
}

std::string BitVector::to_string() const {
  std::string s(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

BitVector BitVector::operator^(const BitVector& other) const {
  BitVector r = *this;
  r ^= other;
  return r;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.width_ != width_) throw std::invalid_argument("width mismatch in xor");
  bits_ ^= other.bits_;
  return *this;
}

bool inner(const BitVector& a, const BitVector& b) {
  if (a.width() != b.width()) throw std::invalid_argument("width mismatch in inner product");
  return inner(a.bits(), b.bits());
}

// ---------------------------------------------------------------- Gf2Matrix

int Gf2Matrix::check_width(int width) {
  require_width(width);
  return width;
}

Gf2Matrix::Gf2Matrix(std::vector<BitVector> rows, int width) : width_(check_width(width)), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.width() != width_) throw std::invalid_argument("matrix rows must share the matrix width");
  }
}

Gf2Matrix Gf2Matrix::identity(int n) {
  Gf2Matrix m(n);
  for (int i = 1; i <= n; ++i) m.rows_.push_back(BitVector::unit(i, n));
  return m;
}

Gf2Matrix Gf2Matrix::from_words(std::span<const Word> rows, int width) {
  Gf2Matrix m(width);
  m.rows_.reserve(rows.size());
  for (Word w : rows) m.rows_.emplace_back(w, width);
  return m;
}

std::vector<Word> Gf2Matrix::words() const {
  std::vector<Word> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.bits());
  return out;
}

void Gf2Matrix::append(const BitVector& row) {
  if (row.width() != width_) throw std::invalid_argument("row width mismatch");
  rows_.push_back(row);
}

Word Gf2Matrix::apply(Word x) const {
  Word out = 0;
  for (std::size_t i = 0; i < rows_.size() && x != 0; ++i, x >>= 1) {
    if (x & 1U) out ^= rows_[i].bits();
  }
  return out;
}

BitVector Gf2Matrix::apply(const BitVector& x) const {
  if (x.width() != row_count()) throw std::invalid_argument("vector width must equal the matrix row count");
  return BitVector(apply(x.bits()), width_);
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
  if (width_ != rhs.row_count()) throw std::invalid_argument("matrix shapes do not compose");
  Gf2Matrix out(rhs.width_);
  for (const auto& r : rows_) out.rows_.emplace_back(rhs.apply(r.bits()), rhs.width_);
  return out;
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix out(row_count());
  for (int c = 0; c < width_; ++c) {
    Word col = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if ((rows_[r].bits() >> c) & 1U) col |= Word{1} << r;
    }
    out.rows_.emplace_back(col, row_count());
  }
  return out;
}

int Gf2Matrix::rank() const {
  std::array<Word, kMaxWidth> rows{};
  Word pivots = 0;
  std::uint8_t dim = 0;
  for (const auto& r : rows_) {
    if (dim == width_) break;
    insert_row(rows, pivots, dim, r.bits());
  }
  return dim;
}

std::optional<Gf2Matrix> Gf2Matrix::inverse() const {
  const int n = row_count();
  if (n != width_) throw std::invalid_argument("inverse of a non-square matrix");
  std::vector<Word> a = words();
  std::vector<Word> inv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)] = Word{1} << i;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && !((a[static_cast<std::size_t>(p)] >> c) & 1U)) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(c)]);
    std::swap(inv[static_cast<std::size_t>(p)], inv[static_cast<std::size_t>(c)]);
    for (int r = 0; r < n; ++r) {
      if (r != c && ((a[static_cast<std::size_t>(r)] >> c) & 1U)) {
        a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(c)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(c)];
      }
    }
  }
  return from_words(inv, n);
}

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<int> indices, int ambient) : indices_(std::move(indices)), ambient_(ambient) {
  require_width(ambient);
  int prev = 0;
  for (int i : indices_) {
    if (i <= prev || i > ambient) throw std::invalid_argument("index set must be strictly increasing within 1..n");
    mask_ |= Word{1} << (i - 1);
    prev = i;
  }
}

IndexSet IndexSet::from_mask(Word mask, int ambient) {
  std::vector<int> idx;
  for (Word m = mask; m != 0; m &= m - 1) idx.push_back(std::countr_zero(m) + 1);
  return IndexSet(std::move(idx), ambient);
}

IndexSet IndexSet::all(int ambient) { return from_mask(low_mask(ambient), ambient); }

IndexSet IndexSet::complement() const { return from_mask(~mask_ & low_mask(ambient_), ambient_); }

BitVector project(const BitVector& x, const IndexSet& positions) {
  if (x.width() != positions.ambient()) throw std::invalid_argument("project: width mismatch");
  return BitVector(extract_bits(x.bits(), positions.mask_bits()), positions.size());
}

BitVector embed(const BitVector& y, const IndexSet& positions) {
  if (y.width() != positions.size()) throw std::invalid_argument("embed: width mismatch");
  return BitVector(deposit_bits(y.bits(), positions.mask_bits()), positions.ambient());
}

RrefResult rref(const Gf2Matrix& m) {
  const auto s = LinearSubspace::span(m);
  return {s.basis(), s.pivots()};
}

// ---------------------------------------------------------------- LinearSubspace

LinearSubspace LinearSubspace::zero(int ambient) {
  require_width(ambient);
  LinearSubspace s;
  s.ambient_ = static_cast<std::uint8_t>(ambient);
  return s;
}

LinearSubspace LinearSubspace::whole(int ambient) {
  LinearSubspace s = zero(ambient);
  for (int i = 0; i < ambient; ++i) s.rows_[static_cast<std::size_t>(i)] = Word{1} << i;
  s.dim_ = static_cast<std::uint8_t>(ambient);
  s.pivots_ = low_mask(ambient);
  return s;
}

LinearSubspace LinearSubspace::span(const Gf2Matrix& generators) {
  return span(generators.words(), generators.width());
}

LinearSubspace LinearSubspace::span(std::span<const Word> generators, int ambient) {
  LinearSubspace s = zero(ambient);
  const Word mask = low_mask(ambient);
  for (Word g : generators) {
    if ((g & ~mask) != 0) throw std::invalid_argument("generator wider than the ambient space");
    if (s.dim_ == ambient) break;
    insert_row(s.rows_, s.pivots_, s.dim_, g);
  }
  return s;
}

LinearSubspace LinearSubspace::from_rref(std::span<const Word> rows, int ambient) {
  LinearSubspace s = zero(ambient);
  if (rows.size() > static_cast<std::size_t>(ambient)) throw std::invalid_argument("too many rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.rows_[i] = rows[i];
    s.pivots_ |= rows[i] & -rows[i];
  }
  s.dim_ = static_cast<std::uint8_t>(rows.size());
  return s;
}

Gf2Matrix LinearSubspace::basis() const { return Gf2Matrix::from_words(rows(), ambient_); }

bool LinearSubspace::contains(const BitVector& v) const {
  if (v.width() != ambient_) throw std::invalid_argument("contains: width mismatch");
  return contains(v.bits());
}

Word LinearSubspace::reduce(Word v) const {
  for (int i = 0; i < dim_; ++i) {
    if (v & (rows_[static_cast<std::size_t>(i)] & -rows_[static_cast<std::size_t>(i)])) v ^= rows_[static_cast<std::size_t>(i)];
  }
  return v;
}

Word LinearSubspace::element(Word coefficients) const {
  Word out = 0;
  for (int i = 0; coefficients != 0; ++i, coefficients >>= 1) {
    if (coefficients & 1U) out ^= rows_[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Word> LinearSubspace::elements() const {
  std::vector<Word> out(size());
  // Gray-code walk, then scatter into coefficient order.
  Word v = 0;
  out[0] = 0;
  for (std::uint64_t g = 1; g < size(); ++g) {
    const int bit = std::countr_zero(g);
    v ^= rows_[static_cast<std::size_t>(bit)];
    out[coordinates(v)] = v;
  }
  return out;
}

LinearSubspace LinearSubspace::orthogonal() const {
  std::array<Word, kMaxWidth> gens{};
  int count = 0;
  const Word free = ~pivots_ & low_mask(ambient_);
  for (Word f = free; f != 0; f &= f - 1) {
    const Word col = f & -f;
    Word y = col;
    for (int i = 0; i < dim_; ++i) {
      const Word r = rows_[static_cast<std::size_t>(i)];
      if (r & col) y |= r & -r;
    }
    gens[static_cast<std::size_t>(count++)] = y;
  }
  return span(std::span<const Word>(gens.data(), static_cast<std::size_t>(count)), ambient_);
}

LinearSubspace LinearSubspace::intersect(const LinearSubspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("intersect: ambient mismatch");
  const auto a = orthogonal();
  const auto b = other.orthogonal();
  LinearSubspace sum = a;
  for (Word r : b.rows()) insert_row(sum.rows_, sum.pivots_, sum.dim_, r);
  return sum.orthogonal();
}

bool LinearSubspace::is_subspace_of(const LinearSubspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(rows().begin(), rows().end(), [&](Word r) { return other.contains(r); });
}

std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (int i = 0; i < a.dim_; ++i) {
    if (auto c = a.rows_[static_cast<std::size_t>(i)] <=> b.rows_[static_cast<std::size_t>(i)]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- AffineSubspace

AffineSubspace::AffineSubspace(Word base, const LinearSubspace& direction)
    : base_(direction.reduce(base)), direction_(direction) {
  if ((base & ~low_mask(direction.ambient())) != 0) throw std::invalid_argument("base wider than the ambient space");
}

AffineSubspace::AffineSubspace(const BitVector& base, const LinearSubspace& direction)
    : AffineSubspace(base.bits(), direction) {
  if (base.width() != direction.ambient()) throw std::invalid_argument("base width mismatch");
}

AffineSubspace AffineSubspace::point(const BitVector& v) { return AffineSubspace(v, LinearSubspace::zero(v.width())); }

AffineSubspace AffineSubspace::whole(int ambient) { return AffineSubspace(LinearSubspace::whole(ambient)); }

bool AffineSubspace::contains(const BitVector& v) const {
  if (v.width() != ambient()) throw std::invalid_argument("contains: width mismatch");
  return contains(v.bits());
}

std::vector<Word> AffineSubspace::elements() const {
  auto pts = direction_.elements();
  for (auto& p : pts) p ^= base_;
  return pts;
}

std::strong_ordering operator<=>(const AffineSubspace& a, const AffineSubspace& b) {
  if (auto c = a.direction_ <=> b.direction_; c != 0) return c;
  return a.base_ <=> b.base_;
}

// ---------------------------------------------------------------- AffineMap

AffineMap::AffineMap(Gf2Matrix matrix, BitVector constant, std::optional<AffineSubspace> domain)
    : matrix_(std::move(matrix)), constant_(constant), domain_(std::move(domain)) {
  if (matrix_.width() != constant_.width()) throw std::invalid_argument("affine map: constant width mismatch");
  if (domain_ && domain_->ambient() != matrix_.row_count()) throw std::invalid_argument("affine map: domain width mismatch");
}

AffineMap AffineMap::on_subspace(const AffineSubspace& domain, Word at_base, std::span<const Word> increments,
                                 int target_width) {
  const auto& dir = domain.direction();
  if (increments.size() != static_cast<std::size_t>(dir.dim())) throw std::invalid_argument("one increment per basis row");
  std::vector<Word> rows(static_cast<std::size_t>(domain.ambient()), 0);
  for (int i = 0; i < dir.dim(); ++i) {
    const Word r = dir.rows()[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(std::countr_zero(r))] = increments[static_cast<std::size_t>(i)];
  }
  return AffineMap(Gf2Matrix::from_words(rows, target_width), BitVector(at_base, target_width), domain);
}

BitVector AffineMap::operator()(const BitVector& x) const {
  return BitVector(matrix_.apply(x).bits() ^ constant_.bits(), constant_.width());
}

// ---------------------------------------------------------------- counting helpers

BigCount gaussian_binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("gaussian_binomial: n < 0");
  if (k < 0 || k > n) return 0;
  BigCount num = 1;
  BigCount den = 1;
  for (int i = 0; i < k; ++i) {
    num *= pow2(static_cast<unsigned long>(n)) - pow2(static_cast<unsigned long>(i));
    den *= pow2(static_cast<unsigned long>(k)) - pow2(static_cast<unsigned long>(i));
  }
  return num / den;
}

IndexSet information_set(const AffineSubspace& u) { return u.direction().pivots(); }
IndexSet information_set(const LinearSubspace& l) { return l.pivots(); }

std::optional<AffineSubspace> affine_hull_or_none(std::span<const Word> points, int ambient) {
  if (points.empty()) throw std::invalid_argument("affine hull of an empty set");
  if (!std::has_single_bit(points.size())) return std::nullopt;
  const Word base = points[0];
  LinearSubspace dir = LinearSubspace::zero(ambient);
  std::vector<Word> diffs;
  diffs.reserve(points.size());
  for (Word p : points) diffs.push_back(p ^ base);
  dir = LinearSubspace::span(diffs, ambient);
  if (dir.size() != points.size()) return std::nullopt;
  std::sort(diffs.begin(), diffs.end());
  if (std::adjacent_find(diffs.begin(), diffs.end()) != diffs.end()) return std::nullopt;
  return AffineSubspace(base, dir);
}

std::optional<AffineSubspace> affine_hull_or_none(std::span<const BitVector> points) {
  if (points.empty()) throw std::invalid_argument("affine hull of an empty set");
  std::vector<Word> w;
  w.reserve(points.size());
  for (const auto& p : points) {
    if (p.width() != points[0].width()) throw std::invalid_argument("affine hull: width mismatch");
    w.push_back(p.bits());
  }
  return affine_hull_or_none(w, points[0].width());
}

// ---------------------------------------------------------------- enumeration

void for_each_linear_rref(int n, int k, const std::function<void(std::span<const Word>, Word)>& visit) {
  require_width(n);
  if (k < 0 || k > n) throw std::invalid_argument("subspace dimension outside 0..n");
  std::array<Word, kMaxWidth> rows{};
  std::vector<std::pair<int, Word>> slots;
  const Word full = low_mask(n);
  for (Word pivots = low_mask(k); pivots <= full;) {
    slots.clear();
    int i = 0;
    for (Word p = pivots; p != 0; p &= p - 1, ++i) {
      const Word bit = p & -p;
      const Word free = full & ~pivots & ~(bit | (bit - 1));
      for (Word f = free; f != 0; f &= f - 1) slots.emplace_back(i, f & -f);
    }
    const std::uint64_t combos = std::uint64_t{1} << slots.size();
    for (std::uint64_t c = 0; c < combos; ++c) {
      i = 0;
      for (Word p = pivots; p != 0; p &= p - 1, ++i) rows[static_cast<std::size_t>(i)] = p & -p;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if ((c >> s) & 1U) rows[static_cast<std::size_t>(slots[s].first)] |= slots[s].second;
      }
      visit(std::span<const Word>(rows.data(), static_cast<std::size_t>(k)), pivots);
    }
    if (k == 0) break;
    // next mask with the same popcount
    const Word t = pivots | (pivots - 1);
    const Word next = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(pivots) + 1));
    if (next <= pivots) break;
    pivots = next;
  }
}

void for_each_subspace(int n, int k, bool affine, const std::function<void(const AffineSubspace&)>& visit) {
  for_each_linear_rref(n, k, [&](std::span<const Word> rows, Word pivots) {
    const auto dir = LinearSubspace::from_rref(rows, n);
    if (!affine) {
      visit(AffineSubspace(dir));
      return;
    }
    const Word free = ~pivots & low_mask(n);
    const std::uint64_t count = std::uint64_t{1} << (n - k);
    for (std::uint64_t t = 0; t < count; ++t) visit(AffineSubspace(deposit_bits(static_cast<Word>(t), free), dir));
  });
}

std::vector<AffineSubspace> enumerate_subspaces(int n, int k, bool affine) {
  if (n > 10) throw std::invalid_argument("exhaustive enumeration limited to n <= 10");
  std::vector<AffineSubspace> out;
  for_each_subspace(n, k, affine, [&](const AffineSubspace& u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<LinearSubspace>& linear_subspaces(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<LinearSubspace>>> cache;
  if (n > 10) throw std::invalid_argument("subspace cache limited to n <= 10");
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) {
    slot = std::make_unique<std::vector<LinearSubspace>>();
    for_each_linear_rref(n, k, [&](std::span<const Word> rows, Word) { slot->push_back(LinearSubspace::from_rref(rows, n)); });
  }
  return *slot;
}

}  // namespace mfnear::gf2
