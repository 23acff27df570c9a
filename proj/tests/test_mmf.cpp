#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mfnear/counting.hpp"
#include "mfnear/mmf.hpp"
#include "mfnear/oracle.hpp"
#include "mfnear/random.hpp"

using namespace mfnear;
using namespace mfnear::mmf;
using gf2::BitVector;

namespace {

std::vector<MMFunction> all_mmf(int n) {
  std::vector<Word> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Word>(i);
  std::vector<MMFunction> out;
  do {
    for (std::uint64_t phi = 0; phi < (std::uint64_t{1} << t.size()); ++phi) {
      out.emplace_back(Permutation(t, n), TruthTable::from_words(n, {phi}));
    }
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

MMFunction zero_identity(int n) { return {Permutation::identity(n), TruthTable(n)}; }

// All affine H: L -> Z2^k with <H(y), pi_I(y)> + phi(y) affine on L, by
// running through every matrix and constant.
std::uint64_t brute_h_count(const MMFunction& g, const AffineSubspace& l) {
  const int k = l.dim();
  const IndexSet info = near_info_set(g.pi, l);
  const auto pts = l.elements();
  std::uint64_t count = 0;
  const std::uint64_t maps = std::uint64_t{1} << (k * (k + 1));
  for (std::uint64_t h = 0; h < maps; ++h) {
    TruthTable xi(g.n());
    const auto incr = [&](int i) { return static_cast<Word>(h >> (k * (i + 1))) & gf2::low_mask(k); };
    for (std::size_t c = 0; c < pts.size(); ++c) {
      Word hv = static_cast<Word>(h) & gf2::low_mask(k);
      for (int i = 0; i < k; ++i) {
        if ((c >> i) & 1U) hv ^= incr(i);
      }
      const Word y = pts[c];
      xi.set(y, gf2::inner(hv, gf2::extract_bits(g.pi(y), info.mask_bits())) != g.phi(y));
    }
    if (boolfun::affine_on_by_flats(xi, l)) ++count;
  }
  return count;
}

}  // namespace

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 1, 1, 3}, 2), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 1, 2}, 2), std::invalid_argument);
  const Permutation p({2, 0, 3, 1}, 2);
  const auto q = p.inverse();
  for (Word y = 0; y < 4; ++y) EXPECT_EQ(q(p(y)), y);
}

TEST(BuildMmf, Examples) {
  const auto f = build_mmf(zero_identity(1));
  EXPECT_EQ(f.to_hex(), "8");
  EXPECT_TRUE(boolfun::is_bent(f));
  std::set<TruthTable> distinct;
  for (const auto& g : all_mmf(2)) {
    const auto t = build_mmf(g);
    EXPECT_TRUE(boolfun::is_bent(t));
    distinct.insert(t);
  }
  EXPECT_EQ(distinct.size(), 384U);
}

TEST(BuildMmf, DistinctAtSixVariables) {
  std::vector<Word> t{0, 1, 2, 3, 4, 5, 6, 7};
  std::uint64_t total = 0;
  std::set<std::vector<std::uint64_t>> seen;
  do {
    for (std::uint64_t phi = 0; phi < 256; ++phi) {
      seen.insert(build_mmf(MMFunction(Permutation(t, 3), TruthTable::from_words(3, {phi}))).words());
      ++total;
    }
  } while (std::next_permutation(t.begin(), t.end()));
  EXPECT_EQ(total, 10321920U);
  EXPECT_EQ(seen.size(), 10321920U);
}

TEST(MfFromTruthTable, RoundTrip) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_mmf(rng, 1 + static_cast<int>(rng.below(4)));
    const auto back = mf_from_truth_table(build_mmf(g));
    ASSERT_TRUE(back);
    EXPECT_EQ(back->pi, g.pi);
    EXPECT_EQ(back->phi, g.phi);
  }
  EXPECT_FALSE(mf_from_truth_table(TruthTable(4)));
}

TEST(ImageSubspaces, Examples) {
  Rng rng(4);
  for (int n = 1; n <= 4; ++n) {
    const auto pi = random_permutation(rng, n);
    EXPECT_EQ(image_subspaces(pi, 0).size(), std::size_t{1} << n);
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(image_subspaces(Permutation::identity(n), k), gf2::enumerate_subspaces(n, k, true));
    }
  }
}

TEST(ImageSubspaces, MatchesHullOracle) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + static_cast<int>(rng.below(2));
    const auto pi = random_permutation(rng, n);
    for (int k = 0; k <= n; ++k) {
      std::vector<AffineSubspace> brute;
      for (const auto& u : gf2::enumerate_subspaces(n, k, true)) {
        std::vector<Word> img;
        for (Word y : u.elements()) img.push_back(pi(y));
        if (gf2::affine_hull_or_none(img, n)) brute.push_back(u);
      }
      EXPECT_EQ(image_subspaces(pi, k), brute);
      EXPECT_EQ(image_subspace_count(pi, k), brute.size());
    }
  }
}

TEST(ImageSubspaces, SumOverAllPermutationsOfZ2Cubed) {
  std::vector<Word> t{0, 1, 2, 3, 4, 5, 6, 7};
  std::uint64_t sum = 0;
  do {
    sum += image_subspace_count(Permutation(t, 3), 2);
  } while (std::next_permutation(t.begin(), t.end()));
  EXPECT_EQ(sum, 112896U);
  EXPECT_EQ(counting::sigma(3, 2), ExactRational(14, 5));
}

TEST(SubspaceTriple, XnDecomposes) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<Word> rows;
    for (int i = 0; i < n; ++i) rows.push_back(Word{1} << i);
    const auto t = decompose_subspace(AffineSubspace(LinearSubspace::span(rows, 2 * n)));
    EXPECT_EQ(t.L.dim(), 0);
    EXPECT_EQ(t.L.base_bits(), 0U);
    EXPECT_EQ(t.R, LinearSubspace::whole(n));
    EXPECT_EQ(t.H.target_width(), 0);
  }
}

TEST(SubspaceTriple, RoundTripAndIntersection) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& u : gf2::enumerate_subspaces(2 * n, n, true)) {
      const auto t = decompose_subspace(u);
      ASSERT_EQ(compose_subspace(t), u);
      ASSERT_EQ(t.L.dim() + t.R.dim(), n);
      // <U> meet X_n is R on the x side
      std::vector<Word> xs;
      for (int i = 0; i < n; ++i) xs.push_back(Word{1} << i);
      const auto meet = u.direction().intersect(LinearSubspace::span(xs, 2 * n));
      ASSERT_EQ(LinearSubspace::span(meet.rows(), n), t.R);
      // the other direction: re-decompose a composed triple
      const auto again = decompose_subspace(compose_subspace(t));
      ASSERT_EQ(again.L, t.L);
      ASSERT_EQ(again.R, t.R);
      for (Word y : t.L.elements()) ASSERT_EQ(again.H.apply(y), t.H.apply(y));
    }
  }
  EXPECT_THROW(decompose_subspace(AffineSubspace::whole(4)), std::invalid_argument);
}

TEST(SubspaceTriple, CensusByIntersectionDimension) {
  for (int n = 2; n <= 3; ++n) {
    std::map<int, std::uint64_t> census;
    for (const auto& u : gf2::linear_subspaces(2 * n, n)) ++census[decompose_subspace(AffineSubspace(u)).R.dim()];
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(BigCount(static_cast<unsigned long>(census[k])), counting::subspaces_with_x_part(n, k)) << n << "," << k;
    }
  }
  EXPECT_EQ(counting::subspaces_with_x_part(2, 0), 16);
  EXPECT_EQ(counting::subspaces_with_x_part(2, 1), 18);
  EXPECT_EQ(counting::subspaces_with_x_part(2, 2), 1);
}

TEST(HSolutionSpace, DimOneAlwaysFour) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_mmf(rng, 3);
    for (const auto& l : image_subspaces(g.pi, 1)) EXPECT_EQ(h_solution_space(g, l).count(), 4U);
  }
}

TEST(HSolutionSpace, DimTwoAlwaysThirtyTwo) {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_mmf(rng, 2 + static_cast<int>(rng.below(3)));
    for (const auto& l : image_subspaces(g.pi, 2)) {
      const auto hs = h_solution_space(g, l);
      ASSERT_EQ(hs.count(), 32U);
      EXPECT_EQ(hs.members(), h_solutions_dim2(g, l));
    }
  }
}

TEST(HSolutionSpace, DimThreeMatchesBruteEnumeration) {
  const auto g = zero_identity(3);
  const auto l = AffineSubspace::whole(3);
  EXPECT_EQ(h_solution_space(g, l).count(), brute_h_count(g, l));
  std::uint64_t sum = 0;
  for (std::uint64_t phi = 0; phi < 256; ++phi) {
    sum += h_solution_space(MMFunction(Permutation::identity(3), TruthTable::from_words(3, {phi})), l).count();
  }
  EXPECT_EQ(sum, 1U << 16);
}

TEST(HSolutionSpace, CountsMatchBruteForRandomCases) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_mmf(rng, 3);
    for (int k = 1; k <= 3; ++k) {
      for (const auto& l : image_subspaces(g.pi, k)) {
        const auto hs = h_solution_space(g, l);
        ASSERT_EQ(hs.count(), brute_h_count(g, l));
        if (!hs.empty()) {
          for (const auto& h : hs.members()) EXPECT_EQ(hs.to_map(hs.coefficients(h)).apply(l.base_bits()), h.apply(l.base_bits()));
        }
      }
    }
  }
}

TEST(HSolutionSpace, RejectsNonImageSubspace) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_mmf(rng, 3);
    for (const auto& l : gf2::enumerate_subspaces(3, 2, true)) {
      if (!maps_to_subspace(g.pi, l)) {
        EXPECT_THROW(h_solution_space(g, l), std::invalid_argument);
        return;
      }
    }
  }
}

TEST(NearEnumerate, SixtyAtFourVariables) {
  for (const auto& g : all_mmf(2)) {
    const auto ws = near_enumerate(g);
    ASSERT_EQ(ws.size(), 60U);
    ASSERT_EQ(near_count(g), 60);
    std::uint64_t low = 0;
    for (const auto& w : ws) low += w.L.dim() <= 1 ? 1 : 0;
    ASSERT_EQ(low, 28U);
  }
}

TEST(NearEnumerate, RealizationsBentDistinctAndMfForLowDimensions) {
  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    const auto g = random_mmf(rng, 3);
    const auto f = build_mmf(g);
    std::set<TruthTable> seen;
    for (const auto& w : near_enumerate(g)) {
      const auto h = realize_near(g, w);
      ASSERT_TRUE(boolfun::is_bent(h));
      ASSERT_EQ(boolfun::hamming_distance(f, h), 8U);
      ASSERT_TRUE(seen.insert(h).second);
      ASSERT_EQ(mf_from_truth_table(h).has_value(), w.L.dim() <= 1);
    }
    EXPECT_EQ(BigCount(static_cast<unsigned long>(seen.size())), near_count(g));
  }
}

TEST(NearEnumerate, IdentityAtSixVariablesMatchesBrute) {
  const auto g = zero_identity(3);
  std::vector<TruthTable> crit;
  for (const auto& w : near_enumerate(g)) crit.push_back(realize_near(g, w));
  std::sort(crit.begin(), crit.end());
  EXPECT_EQ(crit, oracle::near_brute(build_mmf(g)));
}

TEST(NearEnumerate, OrderIsCanonical) {
  Rng rng(11);
  const auto g = random_mmf(rng, 3);
  const auto ws = near_enumerate(g);
  for (std::size_t i = 1; i < ws.size(); ++i) {
    const auto& a = ws[i - 1];
    const auto& b = ws[i];
    ASSERT_TRUE(a.L.dim() < b.L.dim() || (a.L.dim() == b.L.dim() && a.L <= b.L));
  }
}

TEST(NearCount, LowerBoundAtEightVariables) {
  Rng rng(12);
  // linear pi: y -> yM
  const auto m = random_invertible(rng, 4);
  std::vector<Word> table(16);
  for (Word y = 0; y < 16; ++y) table[y] = m.apply(y);
  const MMFunction g(Permutation(table, 4), random_function(rng, 4));
  EXPECT_GE(near_count(g), counting::lambda(8) + 32 * BigCount(static_cast<unsigned long>(image_subspace_count(g.pi, 2))));
  for (int t = 0; t < 20; ++t) {
    const auto h = random_mmf(rng, 4);
    EXPECT_GE(near_count(h), counting::lambda(8) + 32 * BigCount(static_cast<unsigned long>(image_subspace_count(h.pi, 2))));
  }
}

TEST(Coincidence, TwentyFourParentsContainingOriginal) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_mmf(rng, 3);
    const auto a2 = image_subspaces(g.pi, 2);
    if (a2.empty()) continue;
    const auto& l = a2[rng.below(a2.size())];
    const auto hs = h_solutions_dim2(g, l);
    const auto w = make_witness(g, l, hs[rng.below(32)]);
    const auto target = realize_near(g, w);
    const auto parents = coincidence_parents(g, w);
    ASSERT_EQ(parents.size(), 24U);
    std::set<std::vector<Word>> pis;
    bool has_self = false;
    for (const auto& p : parents) {
      pis.insert(p.g.pi.table());
      has_self = has_self || (p.g.pi == g.pi && p.g.phi == g.phi);
      EXPECT_EQ(realize_near(p.g, make_witness(p.g, l, p.H)), target);
      for (Word y = 0; y < 8; ++y) {
        if (!l.contains(y)) {
          EXPECT_EQ(p.g.pi(y), g.pi(y));
        }
      }
    }
    EXPECT_EQ(pis.size(), 24U);
    EXPECT_TRUE(has_self);
  }
}

TEST(Coincidence, DimTwoMultiplicityLedger) {
  std::uint64_t witnesses = 0;
  std::set<TruthTable> realized;
  for (const auto& g : all_mmf(2)) {
    for (const auto& w : near_enumerate(g, 2)) {
      ++witnesses;
      realized.insert(realize_near(g, w));
    }
  }
  EXPECT_EQ(witnesses, 384U * 32U);
  EXPECT_EQ(realized.size(), 512U);
}

TEST(MemberOfMfU, XnAlwaysMember) {
  Rng rng(14);
  for (int n = 1; n <= 4; ++n) {
    std::vector<Word> rows;
    for (int i = 0; i < n; ++i) rows.push_back(Word{1} << i);
    const AffineSubspace x(LinearSubspace::span(rows, 2 * n));
    for (int t = 0; t < 10; ++t) EXPECT_TRUE(member_of_mf_u(random_mmf(rng, n), x));
  }
}

TEST(MemberOfMfU, AgreesWithDefinitionOnAllOfMf4) {
  const auto fs = all_mmf(2);
  for (const auto& s : gf2::linear_subspaces(4, 2)) {
    const AffineSubspace u(s);
    std::uint64_t members = 0;
    for (const auto& g : fs) {
      const auto f = build_mmf(g);
      bool direct = true;
      for (const auto& c : gf2::enumerate_subspaces(4, 2, true)) {
        if (c.direction() == s && !boolfun::is_affine_on(f, c)) direct = false;
      }
      ASSERT_EQ(member_of_mf_u(g, u), direct);
      members += direct ? 1 : 0;
    }
    const int k = decompose_subspace(u).R.dim();
    const std::uint64_t expected[] = {192, 128, 384};
    EXPECT_EQ(members, expected[k]);
  }
}

TEST(MemberOfMfU, AgreesWithDefinitionAtSixVariables) {
  Rng rng(15);
  const auto& all = gf2::linear_subspaces(6, 3);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    MMFunction g;
    AffineSubspace u;
    if (t % 2 == 0) {
      auto ts = oracle::construct_two_series(rng, 3, static_cast<int>(rng.below(3)));
      g = ts.g;
      u = ts.U;
    } else {
      g = random_mmf(rng, 3);
      u = AffineSubspace(all[rng.below(all.size())]);
    }
    const auto f = build_mmf(g);
    const auto ms = m_subspaces(f);
    const bool direct = std::find(ms.begin(), ms.end(), u.direction()) != ms.end();
    ASSERT_EQ(member_of_mf_u(g, u), direct);
    hits += direct ? 1 : 0;
  }
  EXPECT_GE(hits, 100);
}

TEST(MSubspaces, Examples) {
  const auto f = build_mmf(zero_identity(2));
  const auto ms = m_subspaces(f);
  const auto x = LinearSubspace::span(std::vector<Word>{1, 2}, 4);
  const auto y = LinearSubspace::span(std::vector<Word>{4, 8}, 4);
  EXPECT_NE(std::find(ms.begin(), ms.end(), x), ms.end());
  EXPECT_NE(std::find(ms.begin(), ms.end(), y), ms.end());
  EXPECT_THROW(m_subspaces(TruthTable(3)), std::invalid_argument);
}
