#include "mfnear/mmf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mfnear::mmf {

namespace {

using gf2::low_mask;

// Echelon basis whose pivots are chosen among the columns of `mask`.
struct MaskedEchelon {
  std::array<Word, 2 * gf2::kMaxWidth> rows{};
  std::array<Word, 2 * gf2::kMaxWidth> pivot{};
  int dim = 0;
  Word mask = ~Word{0};

  Word reduce(Word v) const {
    for (int i = 0; i < dim; ++i) {
      if (v & pivot[static_cast<std::size_t>(i)]) v ^= rows[static_cast<std::size_t>(i)];
    }
    return v;
  }
  // Returns the reduced vector; it is stored when it has a bit inside mask.
  Word insert(Word v) {
    v = reduce(v);
    const Word inside = v & mask;
    if (inside == 0) return v;
    const Word p = inside & -inside;
    for (int i = 0; i < dim; ++i) {
      if (rows[static_cast<std::size_t>(i)] & p) rows[static_cast<std::size_t>(i)] ^= v;
    }
    rows[static_cast<std::size_t>(dim)] = v;
    pivot[static_cast<std::size_t>(dim)] = p;
    ++dim;
    return v;
  }
};

// Lexicographic order of (z_0, z_1, ...).
bool coefficient_less(const CoefficientVector& a, const CoefficientVector& b) {
  for (std::size_t i = 0; i < 2; ++i) {
    const std::uint64_t d = a.w[i] ^ b.w[i];
    if (d != 0) return (a.w[i] & (d & -d)) == 0;
  }
  return false;
}

// f affine on base + span(rows); rows linearly independent.
bool affine_on_coset(const TruthTable& f, Word base, std::span<const Word> rows) {
  const bool at_base = f(base);
  Word slope_flags = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (f(base ^ rows[i]) != at_base) slope_flags |= Word{1} << i;
  }
  Word x = base;
  bool predicted = at_base;
  const std::uint64_t size = std::uint64_t{1} << rows.size();
  for (std::uint64_t g = 1; g < size; ++g) {
    const int i = std::countr_zero(g);
    x ^= rows[static_cast<std::size_t>(i)];
    predicted ^= ((slope_flags >> i) & 1U) != 0;
    if (f(x) != predicted) return false;
  }
  return true;
}

AffineMap map_from_values(const AffineSubspace& l, Word at_base, std::span<const Word> at_rows, int k) {
  std::array<Word, gf2::kMaxWidth> inc{};
  for (std::size_t i = 0; i < at_rows.size(); ++i) inc[i] = at_rows[i] ^ at_base;
  return AffineMap::on_subspace(l, at_base, std::span<const Word>(inc.data(), at_rows.size()), k);
}

void require_same_n(const MMFunction& g, const AffineSubspace& l) {
  if (l.ambient() != g.n()) throw std::invalid_argument("subspace lives in the wrong ambient space");
}

}  // namespace

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Word> table, int n) : n_(n), table_(std::move(table)) {
  if (n < 0 || n > 8) throw std::invalid_argument("permutations supported for 0 <= n <= 8");
  if (table_.size() != (std::size_t{1} << n)) throw std::invalid_argument("permutation table must have 2^n entries");
  std::vector<bool> seen(table_.size(), false);
  for (Word v : table_) {
    if (v >= table_.size() || seen[v]) throw std::invalid_argument("pi is not a bijection of Z2^n");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Word> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Word>(i);
  return Permutation(std::move(t), n);
}

Permutation Permutation::inverse() const {
  std::vector<Word> t(table_.size());
  for (std::size_t y = 0; y < table_.size(); ++y) t[table_[y]] = static_cast<Word>(y);
  return Permutation(std::move(t), n_);
}

MMFunction::MMFunction(Permutation p, TruthTable f) : pi(std::move(p)), phi(std::move(f)) {
  if (phi.variables() != pi.n()) throw std::invalid_argument("phi must have n variables");
}

TruthTable build_mmf(const MMFunction& g) {
  const int n = g.n();
  TruthTable f(2 * n);
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t y = 0; y < size; ++y) {
    const Word v = g.pi(static_cast<Word>(y));
    const bool c = g.phi(static_cast<Word>(y));
    for (std::uint64_t x = 0; x < size; ++x) {
      if (gf2::inner(static_cast<Word>(x), v) != c) f.flip(static_cast<Word>(x + (y << n)));
    }
  }
  return f;
}

// ---------------------------------------------------------------- A_k(pi)

bool maps_to_subspace(const Permutation& pi, const AffineSubspace& u) {
  const int k = u.dim();
  if (k <= 1) return true;
  const auto rows = u.direction().rows();
  const Word b = u.base_bits();
  if (k == 2) return (pi(b) ^ pi(b ^ rows[0]) ^ pi(b ^ rows[1]) ^ pi(b ^ rows[0] ^ rows[1])) == 0;
  const Word p0 = pi(b);
  MaskedEchelon e;
  Word x = b;
  for (std::uint64_t g = 1; g < u.size(); ++g) {
    x ^= rows[static_cast<std::size_t>(std::countr_zero(g))];
    const Word d = pi(x) ^ p0;
    if (e.reduce(d) != 0) {
      if (e.dim == k) return false;
      e.insert(d);
    }
  }
  return true;
}

std::vector<AffineSubspace> image_subspaces(const Permutation& pi, int k) {
  std::vector<AffineSubspace> out;
  gf2::for_each_subspace(pi.n(), k, true, [&](const AffineSubspace& u) {
    if (maps_to_subspace(pi, u)) out.push_back(u);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t image_subspace_count(const Permutation& pi, int k) {
  std::uint64_t count = 0;
  gf2::for_each_subspace(pi.n(), k, true, [&](const AffineSubspace& u) {
    if (maps_to_subspace(pi, u)) ++count;
  });
  return count;
}

// ---------------------------------------------------------------- (L, R, H)

AffineSubspace compose_subspace(const SubspaceTriple& t, const IndexSet* info) {
  const int n = t.L.ambient();
  const int k = t.L.dim();
  if (t.R.ambient() != n || t.R.dim() != n - k) throw std::invalid_argument("compose: need dim L + dim R = n");
  if (t.H.source_width() != n || t.H.target_width() != k) throw std::invalid_argument("compose: H must map Z2^n to Z2^k");
  const IndexSet own = t.R.orthogonal().pivots();
  const IndexSet& I = info ? *info : own;
  if (I.size() != k || I.ambient() != n) throw std::invalid_argument("compose: information set has the wrong size");
  std::vector<Word> gens;
  for (Word z : t.R.rows()) gens.push_back(z);
  for (Word s : t.L.direction().rows()) {
    gens.push_back(gf2::deposit_bits(t.H.matrix().apply(s), I.mask_bits()) | (s << n));
  }
  const Word b = t.L.base_bits();
  const Word base = gf2::deposit_bits(t.H.apply(b), I.mask_bits()) | (b << n);
  return AffineSubspace(base, LinearSubspace::span(gens, 2 * n));
}

SubspaceTriple decompose_subspace(const AffineSubspace& u) {
  if (u.ambient() % 2 != 0) throw std::invalid_argument("decompose: ambient width must be even");
  const int n = u.ambient() / 2;
  if (u.dim() != n) throw std::invalid_argument("decompose: subspace must have dimension n");
  const Word xmask = low_mask(n);
  MaskedEchelon ey;
  ey.mask = xmask << n;
  std::vector<Word> rgens;
  for (Word r : u.direction().rows()) {
    const Word v = ey.insert(r);
    if ((v & ey.mask) == 0 && v != 0) rgens.push_back(v & xmask);
  }
  std::vector<Word> lrows;
  for (int i = 0; i < ey.dim; ++i) lrows.push_back(ey.rows[static_cast<std::size_t>(i)] >> n);
  const Word ybase = u.base_bits() >> n;
  const AffineSubspace L(ybase, LinearSubspace::span(lrows, n));
  const LinearSubspace R = LinearSubspace::span(rgens, n);
  const int k = L.dim();
  const IndexSet I = R.orthogonal().pivots();
  MaskedEchelon er;
  er.mask = ~I.mask_bits() & xmask;
  for (Word z : R.rows()) er.insert(z);

  auto h_at = [&](Word y) {
    const Word delta = (y ^ ybase) << n;
    Word v = u.base_bits();
    for (int i = 0; i < ey.dim; ++i) {
      if (delta & ey.pivot[static_cast<std::size_t>(i)]) v ^= ey.rows[static_cast<std::size_t>(i)];
    }
    return gf2::extract_bits(er.reduce(v & xmask), I.mask_bits());
  };
  const Word lb = L.base_bits();
  std::array<Word, gf2::kMaxWidth> vals{};
  for (int i = 0; i < k; ++i) vals[static_cast<std::size_t>(i)] = h_at(lb ^ L.direction().rows()[static_cast<std::size_t>(i)]);
  const AffineMap H = map_from_values(L, h_at(lb), std::span<const Word>(vals.data(), static_cast<std::size_t>(k)), k);
  return SubspaceTriple{L, R, H};
}

// ---------------------------------------------------------------- H solutions

int CoefficientVector::lowest() const {
  if (w[0] != 0) return std::countr_zero(w[0]);
  if (w[1] != 0) return 64 + std::countr_zero(w[1]);
  return -1;
}

HSolutionSpace::HSolutionSpace(AffineSubspace l, IndexSet info, std::optional<CoefficientVector> particular,
                               std::vector<CoefficientVector> kernel)
    : l_(std::move(l)), info_(std::move(info)), particular_(particular), kernel_(std::move(kernel)) {}

std::uint64_t HSolutionSpace::count() const { return particular_ ? (std::uint64_t{1} << kernel_.size()) : 0; }

AffineMap HSolutionSpace::to_map(const CoefficientVector& z) const {
  const int k = l_.dim();
  Word c = 0;
  for (int j = 0; j < k; ++j) {
    if (z.get(j)) c |= Word{1} << j;
  }
  std::array<Word, gf2::kMaxWidth> inc{};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (z.get(k * (i + 1) + j)) inc[static_cast<std::size_t>(i)] |= Word{1} << j;
    }
  }
  return AffineMap::on_subspace(l_, c, std::span<const Word>(inc.data(), static_cast<std::size_t>(k)), k);
}

CoefficientVector HSolutionSpace::coefficients(const AffineMap& h) const {
  const int k = l_.dim();
  CoefficientVector z;
  const Word b = l_.base_bits();
  const Word c = h.apply(b);
  for (int j = 0; j < k; ++j) {
    if ((c >> j) & 1U) z.flip(j);
  }
  for (int i = 0; i < k; ++i) {
    const Word inc = h.apply(b ^ l_.direction().rows()[static_cast<std::size_t>(i)]) ^ c;
    for (int j = 0; j < k; ++j) {
      if ((inc >> j) & 1U) z.flip(k * (i + 1) + j);
    }
  }
  return z;
}

AffineMap HSolutionSpace::particular() const {
  if (!particular_) throw std::logic_error("empty solution space has no particular solution");
  return to_map(*particular_);
}

std::vector<AffineMap> HSolutionSpace::kernel_basis() const {
  std::vector<AffineMap> out;
  for (const auto& z : kernel_) out.push_back(to_map(z));
  return out;
}

AffineMap HSolutionSpace::member(std::uint64_t index) const {
  if (index >= count()) throw std::out_of_range("solution index");
  CoefficientVector z = *particular_;
  const std::size_t d = kernel_.size();
  for (std::size_t i = 0; i < d; ++i) {
    if ((index >> (d - 1 - i)) & 1U) z ^= kernel_[i];
  }
  return to_map(z);
}

std::vector<AffineMap> HSolutionSpace::members() const {
  std::vector<AffineMap> out;
  out.reserve(count());
  for (std::uint64_t t = 0; t < count(); ++t) out.push_back(member(t));
  return out;
}

IndexSet near_info_set(const Permutation& pi, const AffineSubspace& l) {
  if (l.ambient() != pi.n()) throw std::invalid_argument("subspace lives in the wrong ambient space");
  std::vector<Word> images;
  images.reserve(l.size());
  for (Word y : l.elements()) images.push_back(pi(y));
  const auto hull = gf2::affine_hull_or_none(images, pi.n());
  if (!hull) throw std::invalid_argument("L is not in A_k(pi)");
  return hull->direction().pivots();
}

HSolutionSpace h_solution_space(const MMFunction& g, const AffineSubspace& l) {
  require_same_n(g, l);
  const int k = l.dim();
  if (k > 8) throw std::invalid_argument("h_solution_space supports dim L <= 8");
  const IndexSet I = near_info_set(g.pi, l);
  const Word imask = I.mask_bits();
  const int unknowns = k * (k + 1);

  struct Row {
    CoefficientVector z;
    bool rhs = false;
  };
  auto row_at = [&](Word u) {
    Row r;
    const Word x = l.element(u);
    const Word sigma = gf2::extract_bits(g.pi(x), imask);
    for (int j = 0; j < k; ++j) {
      if (!((sigma >> j) & 1U)) continue;
      r.z.flip(j);
      for (int i = 0; i < k; ++i) {
        if ((u >> i) & 1U) r.z.flip(k * (i + 1) + j);
      }
    }
    r.rhs = g.phi(x);
    return r;
  };

  const Row r0 = row_at(0);
  std::vector<Row> unit(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) unit[static_cast<std::size_t>(i)] = row_at(Word{1} << i);

  // Reduced echelon form, pivot = lowest unknown.
  std::vector<Row> echelon;
  bool consistent = true;
  const std::uint64_t points = std::uint64_t{1} << k;
  for (std::uint64_t u = 0; u < points; ++u) {
    if (std::popcount(u) < 2) continue;
    Row c = row_at(static_cast<Word>(u));
    if (std::popcount(u) % 2 == 0) {  // (1 + |u|) copies of the base row
      c.z ^= r0.z;
      c.rhs ^= r0.rhs;
    }
    for (int i = 0; i < k; ++i) {
      if ((u >> i) & 1U) {
        c.z ^= unit[static_cast<std::size_t>(i)].z;
        c.rhs ^= unit[static_cast<std::size_t>(i)].rhs;
      }
    }
    for (const auto& e : echelon) {
      if (c.z.get(e.z.lowest())) {
        c.z ^= e.z;
        c.rhs ^= e.rhs;
      }
    }
    if (c.z.is_zero()) {
      if (c.rhs) consistent = false;
      continue;
    }
    const int p = c.z.lowest();
    for (auto& e : echelon) {
      if (e.z.get(p)) {
        e.z ^= c.z;
        e.rhs ^= c.rhs;
      }
    }
    echelon.push_back(c);
  }
  if (!consistent) return HSolutionSpace(l, I, std::nullopt, {});

  std::sort(echelon.begin(), echelon.end(), [](const Row& a, const Row& b) { return a.z.lowest() < b.z.lowest(); });
  CoefficientVector pivots;
  CoefficientVector particular;
  for (const auto& e : echelon) {
    pivots.flip(e.z.lowest());
    if (e.rhs) particular.flip(e.z.lowest());
  }
  // Null space, then its own reduced echelon form.
  std::vector<CoefficientVector> kernel;
  for (int f = 0; f < unknowns; ++f) {
    if (pivots.get(f)) continue;
    CoefficientVector v;
    v.flip(f);
    for (const auto& e : echelon) {
      if (e.z.get(f)) v.flip(e.z.lowest());
    }
    for (const auto& b : kernel) {
      if (v.get(b.lowest())) v ^= b;
    }
    const int p = v.lowest();
    for (auto& b : kernel) {
      if (b.get(p)) b ^= v;
    }
    kernel.push_back(v);
  }
  std::sort(kernel.begin(), kernel.end(), [](const auto& a, const auto& b) { return a.lowest() < b.lowest(); });
  for (const auto& b : kernel) {
    if (particular.get(b.lowest())) particular ^= b;
  }
  return HSolutionSpace(l, I, particular, std::move(kernel));
}

std::vector<AffineMap> h_solutions_dim2(const MMFunction& g, const AffineSubspace& l) {
  require_same_n(g, l);
  if (l.dim() != 2) throw std::invalid_argument("fast path needs dim L = 2");
  const IndexSet I = near_info_set(g.pi, l);
  // pt[s] is the point of L with pi_I = s; s = 2 is the tuple (0,1).
  std::array<Word, 4> pt{};
  for (Word y : l.elements()) pt[gf2::extract_bits(g.pi(y), I.mask_bits())] = y;
  const Word a = pt[2];
  const Word b = pt[1];
  const Word c = pt[3];
  const Word d = pt[0];
  const bool phi_sum = g.phi(a) ^ g.phi(b) ^ g.phi(c) ^ g.phi(d);
  const Word lb = l.base_bits();
  const auto rows = l.direction().rows();

  HSolutionSpace shape(l, I, CoefficientVector{}, {});
  std::vector<std::pair<CoefficientVector, AffineMap>> sols;
  for (Word free = 0; free < 32; ++free) {
    const Word ha = free & 3U;
    const Word hb = (free >> 2) & 3U;
    const Word c1 = (free >> 4) & 1U;
    const Word c2 = ((ha >> 1) ^ hb ^ c1 ^ static_cast<Word>(phi_sum)) & 1U;
    const Word hc = c1 | (c2 << 1);
    const Word hd = ha ^ hb ^ hc;
    auto value = [&](Word y) { return y == a ? ha : y == b ? hb : y == c ? hc : hd; };
    const std::array<Word, 2> at_rows{value(lb ^ rows[0]), value(lb ^ rows[1])};
    const AffineMap h = map_from_values(l, value(lb), at_rows, 2);
    sols.emplace_back(shape.coefficients(h), h);
  }
  std::sort(sols.begin(), sols.end(), [](const auto& x, const auto& y) { return coefficient_less(x.first, y.first); });
  std::vector<AffineMap> out;
  out.reserve(sols.size());
  for (auto& s : sols) out.push_back(std::move(s.second));
  return out;
}

// ---------------------------------------------------------------- near(f)

BigCount lambda_count(int n) { return pow2(static_cast<unsigned long>(2 * n + 1)) - pow2(static_cast<unsigned long>(n)); }

NearBentWitness make_witness(const MMFunction& g, const AffineSubspace& l, const AffineMap& h) {
  const IndexSet I = near_info_set(g.pi, l);
  const LinearSubspace span_image = LinearSubspace::span(
      [&] {
        std::vector<Word> d;
        const Word p0 = g.pi(l.base_bits());
        for (Word y : l.elements()) d.push_back(g.pi(y) ^ p0);
        return d;
      }(),
      g.n());
  const SubspaceTriple t{l, span_image.orthogonal(), h};
  return NearBentWitness{l, h, I, compose_subspace(t, &I)};
}

std::vector<NearBentWitness> near_enumerate(const MMFunction& g, int k) {
  if (g.n() > 4) throw std::invalid_argument("full witness materialization is limited to n <= 4");
  std::vector<NearBentWitness> out;
  for (const auto& l : image_subspaces(g.pi, k)) {
    const auto maps = k == 2 ? h_solutions_dim2(g, l) : h_solution_space(g, l).members();
    for (const auto& h : maps) out.push_back(make_witness(g, l, h));
  }
  return out;
}

std::vector<NearBentWitness> near_enumerate(const MMFunction& g) {
  std::vector<NearBentWitness> out;
  for (int k = 0; k <= g.n(); ++k) {
    auto part = near_enumerate(g, k);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

BigCount near_count(const MMFunction& g) {
  const int n = g.n();
  if (n > 6) throw std::invalid_argument("near_count supports n <= 6");
  BigCount total = lambda_count(n);
  if (n >= 2) total += BigCount(32) * BigCount(static_cast<unsigned long>(image_subspace_count(g.pi, 2)));
  for (int k = 3; k <= n; ++k) {
    gf2::for_each_subspace(n, k, true, [&](const AffineSubspace& l) {
      if (maps_to_subspace(g.pi, l)) total += BigCount(static_cast<unsigned long>(h_solution_space(g, l).count()));
    });
  }
  return total;
}

TruthTable realize_near(const MMFunction& g, const NearBentWitness& w) {
  if (w.U.ambient() != 2 * g.n() || w.U.dim() != g.n()) throw std::invalid_argument("witness does not fit this function");
  return boolfun::xor_indicator(build_mmf(g), w.U);
}

std::vector<Parent> coincidence_parents(const MMFunction& g, const NearBentWitness& w) {
  if (w.L.dim() != 2) throw std::invalid_argument("coincidence parents need dim L = 2");
  const Word imask = w.I.mask_bits();
  const auto ys = w.L.elements();
  std::array<Word, 4> images{};
  for (std::size_t i = 0; i < 4; ++i) images[i] = g.pi(ys[i]);
  std::array<Word, 4> order = images;
  std::sort(order.begin(), order.end());
  const Word lb = w.L.base_bits();
  const auto rows = w.L.direction().rows();

  std::vector<Parent> out;
  do {
    std::vector<Word> table = g.pi.table();
    TruthTable phi = g.phi;
    std::array<Word, 4> hv{};
    for (std::size_t i = 0; i < 4; ++i) {
      const Word y = ys[i];
      table[y] = order[i];
      const Word delta = gf2::extract_bits(images[i], imask) ^ gf2::extract_bits(order[i], imask);
      const Word h = w.H.apply(y);
      const bool same = images[i] == order[i];
      phi.set(y, g.phi(y) ^ gf2::inner(h, delta) ^ same ^ true);
      static constexpr std::array<Word, 4> kShift{0, 2, 1, 3};
      hv[i] = h ^ kShift[delta];
    }
    if ((hv[0] ^ hv[1] ^ hv[2] ^ hv[3]) != 0) throw std::logic_error("derived H' is not affine");
    auto at = [&](Word y) { return hv[static_cast<std::size_t>(std::find(ys.begin(), ys.end(), y) - ys.begin())]; };
    const std::array<Word, 2> at_rows{at(lb ^ rows[0]), at(lb ^ rows[1])};
    out.push_back(Parent{MMFunction(Permutation(std::move(table), g.n()), std::move(phi)),
                         map_from_values(w.L, at(lb), at_rows, 2)});
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// ---------------------------------------------------------------- MF_U

bool member_of_mf_u(const MMFunction& g, const AffineSubspace& u) {
  const int n = g.n();
  if (u.ambient() != 2 * n || u.dim() != n || !u.is_linear()) {
    throw std::invalid_argument("member_of_mf_u needs a linear n-dimensional subspace of Z2^2n");
  }
  const SubspaceTriple t = decompose_subspace(u);
  const auto& ldir = t.L.direction();
  const int k = ldir.dim();
  const LinearSubspace rperp = t.R.orthogonal();
  const Word imask = rperp.pivot_mask();
  const auto rows = ldir.rows();
  const Word free = ~ldir.pivot_mask() & low_mask(n);
  const std::uint64_t cosets = std::uint64_t{1} << (n - k);
  for (std::uint64_t c = 0; c < cosets; ++c) {
    const Word a = gf2::deposit_bits(static_cast<Word>(c), free);
    const Word p0 = g.pi(a);
    // Condition 1: pi affine on a + L with image direction R^perp.
    std::array<Word, gf2::kMaxWidth> diff{};
    for (int i = 0; i < k; ++i) {
      diff[static_cast<std::size_t>(i)] = g.pi(a ^ rows[static_cast<std::size_t>(i)]) ^ p0;
      if (!rperp.contains(diff[static_cast<std::size_t>(i)])) return false;
    }
    if (LinearSubspace::span(std::span<const Word>(diff.data(), static_cast<std::size_t>(k)), n).dim() != k) return false;
    // Condition 2: xi(x) = <H(a + x), pi_I(x)> + phi(x) affine on a + L.
    auto xi = [&](Word x) {
      return gf2::inner(t.H.apply(x ^ a), gf2::extract_bits(g.pi(x), imask)) != g.phi(x);
    };
    const bool xi0 = xi(a);
    Word slopes = 0;
    for (int i = 0; i < k; ++i) {
      if (xi(a ^ rows[static_cast<std::size_t>(i)]) != xi0) slopes |= Word{1} << i;
    }
    Word x = a;
    Word image = p0;
    bool predicted = xi0;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
      const int i = std::countr_zero(s);
      x ^= rows[static_cast<std::size_t>(i)];
      image ^= diff[static_cast<std::size_t>(i)];
      if (g.pi(x) != image) return false;
      predicted ^= ((slopes >> i) & 1U) != 0;
      if (xi(x) != predicted) return false;
    }
  }
  return true;
}

std::vector<LinearSubspace> m_subspaces(const TruthTable& f) {
  const int m = f.variables();
  if (m % 2 != 0) throw std::invalid_argument("m_subspaces needs an even number of variables");
  if (m > 8) throw std::invalid_argument("m_subspaces scans S(2n, n) only for 2n <= 8");
  const int n = m / 2;
  std::vector<LinearSubspace> out;
  for (const auto& s : gf2::linear_subspaces(m, n)) {
    const Word free = ~s.pivot_mask() & low_mask(m);
    bool ok = true;
    for (std::uint64_t c = 0; ok && c < (std::uint64_t{1} << n); ++c) {
      ok = affine_on_coset(f, gf2::deposit_bits(static_cast<Word>(c), free), s.rows());
    }
    if (ok) out.push_back(s);
  }
  return out;
}

std::optional<MMFunction> mf_from_truth_table(const TruthTable& f) {
  const int m = f.variables();
  if (m % 2 != 0 || m == 0) return std::nullopt;
  const int n = m / 2;
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<Word> table(size);
  TruthTable phi(n);
  std::vector<bool> seen(size, false);
  for (std::uint64_t y = 0; y < size; ++y) {
    const Word off = static_cast<Word>(y << n);
    const bool c = f(off);
    Word v = 0;
    for (int i = 0; i < n; ++i) {
      if (f(off | (Word{1} << i)) != c) v |= Word{1} << i;
    }
    for (std::uint64_t x = 0; x < size; ++x) {
      if (f(off | static_cast<Word>(x)) != (gf2::inner(static_cast<Word>(x), v) != c)) return std::nullopt;
    }
    if (seen[v]) return std::nullopt;
    seen[v] = true;
    table[y] = v;
    phi.set(static_cast<Word>(y), c);
  }
  return MMFunction(Permutation(std::move(table), n), std::move(phi));
}

}  // namespace mfnear::mmf
