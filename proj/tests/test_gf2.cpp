#include <gtest/gtest.h>

#include <set>

#include "mfnear/gf2.hpp"
#include "mfnear/random.hpp"

using namespace mfnear;
using namespace mfnear::gf2;

namespace {

std::set<Word> span_points(std::span<const Word> gens) {
  std::set<Word> pts{0};
  for (Word g : gens) {
    std::set<Word> next = pts;
    for (Word p : pts) next.insert(p ^ g);
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

TEST(GaussianBinomial, Examples) {
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(gaussian_binomial(n, 0), 1);
  EXPECT_EQ(gaussian_binomial(4, 2), 35);
  EXPECT_EQ(gaussian_binomial(2, 3), 0);
  EXPECT_EQ(gaussian_binomial(3, -1), 0);
}

TEST(GaussianBinomial, MatchesSubspaceBruteForce) {
  // Distinct spans of all pairs of vectors in Z2^4.
  std::set<std::set<Word>> spaces;
  for (Word a = 1; a < 16; ++a) {
    for (Word b = 1; b < 16; ++b) {
      if (a != b) spaces.insert(span_points(std::vector<Word>{a, b}));
    }
  }
  EXPECT_EQ(spaces.size(), 35U);
}

TEST(Rref, Identity) {
  const auto r = rref(Gf2Matrix::identity(5));
  EXPECT_EQ(r.basis, Gf2Matrix::identity(5));
  EXPECT_EQ(r.pivots, IndexSet::all(5));
}

TEST(Rref, DuplicateRows) {
  const auto r = rref(Gf2Matrix({BitVector::parse("101"), BitVector::parse("101")}, 3));
  EXPECT_EQ(r.basis.row_count(), 1);
  EXPECT_EQ(r.pivots.size(), 1);
}

TEST(Rref, TwoRowsWidthThree) {
  const auto m = Gf2Matrix({BitVector::parse("011"), BitVector::parse("101")}, 3);
  const auto r = rref(m);
  EXPECT_EQ(r.pivots.size(), 2);
  const auto w = r.basis.words();
  EXPECT_EQ(span_points(w), span_points(m.words()));
  EXPECT_EQ(span_points(w).size(), 4U);
  for (int i = 0; i < r.basis.row_count(); ++i) {
    // every pivot column holds a single one
    const int p = r.pivots.indices()[static_cast<std::size_t>(i)];
    int ones = 0;
    for (const auto& row : r.basis.rows()) ones += row[p] ? 1 : 0;
    EXPECT_EQ(ones, 1);
  }
}

TEST(BitVector, TupleOrderIsLsbFirst) {
  const auto x = BitVector::parse("10110");
  EXPECT_EQ(x.bits(), 0b01101U);
  EXPECT_TRUE(x[1]);
  EXPECT_FALSE(x[2]);
  EXPECT_EQ(x.to_string(), "10110");
  EXPECT_THROW(BitVector(0, 17), std::invalid_argument);
  EXPECT_THROW(BitVector(4, 2), std::invalid_argument);
}

TEST(InformationSet, Examples) {
  EXPECT_EQ(information_set(AffineSubspace::whole(4)), IndexSet::all(4));
  EXPECT_EQ(information_set(AffineSubspace::point(BitVector::parse("0110"))).size(), 0);
  const auto l = LinearSubspace::span(Gf2Matrix({BitVector::parse("110"), BitVector::parse("001")}, 3));
  const IndexSet i = information_set(l);
  EXPECT_EQ(i.indices(), (std::vector<int>{1, 3}));
  std::set<Word> proj;
  for (Word v : l.elements()) proj.insert(project(BitVector(v, 3), i).bits());
  EXPECT_EQ(proj.size(), 4U);
}

TEST(InformationSet, SurjectiveProjectionForAllSubspaces) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const auto& l : linear_subspaces(n, k)) {
        const IndexSet i = information_set(l);
        ASSERT_EQ(i.size(), k);
        std::set<Word> proj;
        for (Word v : l.elements()) proj.insert(extract_bits(v, i.mask_bits()));
        ASSERT_EQ(proj.size(), l.size());
      }
    }
  }
}

TEST(InformationSet, ComplementIsInformationSetOfOrthogonal) {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (const auto& l : linear_subspaces(n, k)) {
        const auto lp = l.orthogonal();
        for (Word mask = 0; mask < (Word{1} << n); ++mask) {
          if (std::popcount(mask) != k) continue;
          auto is_info = [](const LinearSubspace& s, Word m) {
            std::set<Word> proj;
            for (Word v : s.elements()) proj.insert(extract_bits(v, m));
            return proj.size() == s.size();
          };
          ASSERT_EQ(is_info(l, mask), is_info(lp, ~mask & low_mask(n)));
        }
      }
    }
  }
}

TEST(Orthogonal, Examples) {
  EXPECT_EQ(LinearSubspace::zero(5).orthogonal(), LinearSubspace::whole(5));
  const auto l = LinearSubspace::span(std::vector<Word>{BitVector::parse("110").bits()}, 3);
  const auto lp = l.orthogonal();
  EXPECT_EQ(lp.dim(), 2);
  EXPECT_TRUE(lp.contains(BitVector::parse("001")));
  EXPECT_TRUE(lp.contains(BitVector::parse("110")));
  std::set<Word> brute;
  for (Word y = 0; y < 8; ++y) {
    if (!inner(y, BitVector::parse("110").bits())) brute.insert(y);
  }
  const auto e = lp.elements();
  EXPECT_EQ(std::set<Word>(e.begin(), e.end()), brute);
}

TEST(Orthogonal, Involution) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const auto l = random_linear_subspace(rng, n, k);
    EXPECT_EQ(l.orthogonal().orthogonal(), l);
    EXPECT_EQ(l.orthogonal().dim(), n - k);
  }
}

TEST(ProjectEmbed, Examples) {
  EXPECT_EQ(project(BitVector::parse("10110"), IndexSet({2, 5}, 5)).to_string(), "00");
  EXPECT_EQ(embed(BitVector::parse("11"), IndexSet({1, 4}, 4)).to_string(), "1001");
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> idx{1, 2, 3, 4, 5, 6, 7, 8};
    rng.shuffle(idx);
    idx.resize(3);
    std::sort(idx.begin(), idx.end());
    const IndexSet i(idx, 8);
    for (Word y = 0; y < 8; ++y) EXPECT_EQ(project(embed(BitVector(y, 3), i), i), BitVector(y, 3));
  }
  EXPECT_THROW(project(BitVector(0, 4), IndexSet({1}, 5)), std::invalid_argument);
}

TEST(EnumerateSubspaces, Examples) {
  EXPECT_EQ(enumerate_subspaces(4, 2, false).size(), 35U);
  EXPECT_EQ(enumerate_subspaces(3, 3, true).size(), 1U);
  EXPECT_EQ(enumerate_subspaces(6, 3, true).size(), 11160U);
}

TEST(EnumerateSubspaces, CountsAndUniqueness) {
  for (int n = 0; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto lin = enumerate_subspaces(n, k, false);
      const auto aff = enumerate_subspaces(n, k, true);
      EXPECT_EQ(BigCount(static_cast<unsigned long>(lin.size())), gaussian_binomial(n, k));
      EXPECT_EQ(BigCount(static_cast<unsigned long>(aff.size())), gaussian_binomial(n, k) * pow2(n - k));
      std::set<std::vector<Word>> sets;
      for (const auto& u : aff) {
        auto e = u.elements();
        std::sort(e.begin(), e.end());
        sets.insert(e);
      }
      EXPECT_EQ(sets.size(), aff.size());
    }
  }
}

TEST(AffineSubspace, CanonicalUnderRerandomizedBases) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const auto l = random_linear_subspace(rng, n, k);
    const Word base = static_cast<Word>(rng.below(std::uint64_t{1} << n));
    const AffineSubspace u(base, l);
    // another base point and another generating set of the same space
    const Word other = base ^ l.element(static_cast<Word>(rng.below(l.size())));
    std::vector<Word> gens;
    const auto m = random_invertible(rng, std::max(k, 1));
    for (int i = 0; i < k; ++i) gens.push_back(l.element(m.row(i).bits() & low_mask(k)));
    gens.push_back(l.element(static_cast<Word>(rng.below(l.size()))));
    const AffineSubspace v(other, LinearSubspace::span(gens, n));
    EXPECT_EQ(u, v);
    // smallest in tuple order, x_1 compared first
    std::string least;
    for (Word w : u.elements()) {
      const auto t = BitVector(w, n).to_string();
      if (least.empty() || t < least) least = t;
    }
    EXPECT_EQ(BitVector(u.base_bits(), n).to_string(), least);
  }
}

TEST(AffineHull, Examples) {
  const std::vector<Word> one{BitVector::parse("101").bits()};
  const auto p = affine_hull_or_none(one, 3);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->dim(), 0);
  EXPECT_EQ(p->base().to_string(), "101");
  const std::vector<BitVector> square{BitVector::parse("000"), BitVector::parse("001"), BitVector::parse("010"),
                                      BitVector::parse("011")};
  const auto s = affine_hull_or_none(square);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->dim(), 2);
  const std::vector<BitVector> bad{BitVector::parse("000"), BitVector::parse("001"), BitVector::parse("010"),
                                   BitVector::parse("100")};
  EXPECT_FALSE(affine_hull_or_none(bad));
}

TEST(Gf2Matrix, InverseAndProduct) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const auto a = random_invertible(rng, n);
    const auto inv = a.inverse();
    ASSERT_TRUE(inv);
    EXPECT_EQ(a * *inv, Gf2Matrix::identity(n));
    EXPECT_EQ(a.rank(), n);
  }
  EXPECT_FALSE(Gf2Matrix({BitVector::parse("11"), BitVector::parse("11")}, 2).inverse());
}

TEST(AffineMap, OnSubspaceMatchesIncrements) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const AffineSubspace u(static_cast<Word>(rng.below(std::uint64_t{1} << n)), random_linear_subspace(rng, n, k));
    std::vector<Word> inc(static_cast<std::size_t>(k));
    for (auto& v : inc) v = static_cast<Word>(rng.below(std::uint64_t{1} << k));
    const Word at = static_cast<Word>(rng.below(std::uint64_t{1} << k));
    const auto h = AffineMap::on_subspace(u, at, inc, k);
    EXPECT_EQ(h.apply(u.base_bits()), at);
    for (int i = 0; i < k; ++i) {
      EXPECT_EQ(h.apply(u.base_bits() ^ u.direction().rows()[static_cast<std::size_t>(i)]) ^ at,
                inc[static_cast<std::size_t>(i)]);
    }
  }
}
