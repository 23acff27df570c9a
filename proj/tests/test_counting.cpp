#include <gtest/gtest.h>

#include <cmath>

#include "mfnear/counting.hpp"
#include "mfnear/gf2.hpp"

using namespace mfnear;
using namespace mfnear::counting;

namespace {

const CountReport& cell(const std::vector<CountReport>& t, int two_n, const std::string& column) {
  for (const auto& r : t) {
    if (r.two_n == two_n && r.column == column) return r;
  }
  throw std::runtime_error("missing cell");
}

}  // namespace

TEST(Sigma, Examples) {
  for (int n = 0; n <= 10; ++n) {
    EXPECT_EQ(sigma(n, n), 1);
    EXPECT_EQ(sigma(n, 0), ExactRational(pow2(n)));
  }
  EXPECT_EQ(sigma(3, 2), ExactRational(14, 5));
  EXPECT_THROW(sigma(3, 4), std::invalid_argument);
}

TEST(Sigma, ClosedForms) {
  for (int n = 2; n <= 12; ++n) EXPECT_EQ(sigma(n, 2), sigma2_closed(n)) << n;
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(sigma(n, 3), sigma3_closed(n)) << n;
  EXPECT_EQ(sigma3_closed(3), 1);
  EXPECT_EQ(to_decimal(sigma3_closed(4) * 256, 6), "17.902098");
  EXPECT_EQ(to_decimal(sigma3_closed(5) * 256, 6), "9.355732");
}

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda(4), 28);
  EXPECT_EQ(lambda(6), 120);
  EXPECT_EQ(lambda(8), 496);
  EXPECT_THROW(lambda(5), std::invalid_argument);
}

TEST(NearAverage, Examples) {
  EXPECT_EQ(near_average(1), 6);
  EXPECT_EQ(near_average(2), 60);
  EXPECT_EQ(near_average(3), ExactRational(2328, 5));
  EXPECT_EQ(near_average(4), 496 + 32 * sigma(4, 2) + 256 * sigma(4, 3) + 512);
  EXPECT_EQ(to_decimal(tail_sum(4), 10), "17.9020979021");
}

TEST(NearAverage, DecompositionForNAtLeastThree) {
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(near_average_decomposition(n).total(), near_average(n)) << n;
}

TEST(NearAverage, Bounds) {
  for (int n = 5; n <= 12; ++n) {
    EXPECT_LE(ExactRational(lambda(2 * n)), near_average(n));
    EXPECT_LT(near_average(n), near_average_bound(n));
  }
}

TEST(MfSize, Examples) {
  EXPECT_EQ(mf_size(1), 8);
  EXPECT_EQ(mf_size(2), 384);
  EXPECT_EQ(mf_size(3), 10321920);
}

TEST(NearMf, Examples) {
  EXPECT_EQ(near_mf_size(1), 0);
  EXPECT_EQ(near_mf_size(2), 512);
  EXPECT_NEAR(log2_of(near_mf_size(3)), 31.320, 5e-4);
  EXPECT_NEAR(log2_of(near_mf_size(4)), 69.338, 5e-4);
  EXPECT_EQ(mfsp_size(1), 8);
  EXPECT_EQ(mfsp_size(2), 896);
  EXPECT_NEAR(log2_of(mfsp_size(3)), 31.326, 5e-4);
}

TEST(NearMf, DecompositionAndIntegrality) {
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(near_mf_decomposition(n).total(), near_mf_coefficient(n));
  for (int n = 1; n <= 12; ++n) {
    const ExactRational a = near_mf_coefficient(n) * ExactRational(mf_size(n));
    const ExactRational b = near_average(n) * ExactRational(mf_size(n));
    EXPECT_EQ(a.get_den(), 1);
    EXPECT_EQ(b.get_den(), 1);
  }
}

TEST(NearMf, RemarkLowerBound) {
  for (int n = 3; n <= 12; ++n) {
    const ExactRational c = ExactRational(pow2(2 * n)) / 18 + ExactRational(367, 63);
    EXPECT_GT(ExactRational(near_mf_size(n)), c * ExactRational(mf_size(n))) << n;
  }
}

TEST(Intersection, Examples) {
  EXPECT_EQ(mf_mfU_intersection(2, 1), 128);
  EXPECT_EQ(mf_mfU_intersection(2, 0), 192);
  EXPECT_EQ(16 * mf_mfU_intersection(2, 0) + 18 * mf_mfU_intersection(2, 1), beta(4));
  EXPECT_THROW(mf_mfU_intersection(2, 2), std::invalid_argument);
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta(4), 5376);
  EXPECT_EQ(fixed(log2_of(beta(8)), 6), "49.900515");
  EXPECT_EQ(fixed(log2_of(beta(16)), 6), "1117.150429");
}

TEST(Beta, Bounds) {
  for (int n = 1; n <= 12; ++n) EXPECT_LE(beta_lower_bound(2 * n), beta(2 * n)) << n;
  for (int n = 5; n <= 12; ++n) EXPECT_LT(beta(2 * n), beta_upper_bound(2 * n)) << n;
}

TEST(ExpectedM, Examples) {
  EXPECT_EQ(expected_m(2), 3);
  EXPECT_EQ(expected_m(4), 15);
  EXPECT_EQ(expected_m(6), ExactRational(43, 5));
}

TEST(MfcBounds, Examples) {
  const auto b4 = mfc_bounds(4);
  EXPECT_EQ(b4.upper, 13440);
  EXPECT_EQ(fixed(log2_of(b4.upper), 6), "13.714246");
  EXPECT_LT(b4.lower, 0);
  const auto b8 = mfc_bounds(8);
  EXPECT_EQ(fixed(log2_of(b8.lower), 6), "77.864341");
  EXPECT_EQ(fixed(log2_of(b8.upper), 6), "77.865447");
  const auto b12 = mfc_bounds(12);
  EXPECT_EQ(fixed(log2_of(b12.lower), 6), "397.742211");
  EXPECT_EQ(fixed(log2_of(b12.upper), 6), "397.742211");
  EXPECT_FALSE(b8.closed_lower);
  ASSERT_TRUE(mfc_bounds(10).closed_lower);
  EXPECT_LE(*mfc_bounds(10).closed_lower, mfc_bounds(10).lower);
}

TEST(NearMfcUpper, Examples) {
  const auto r = near_mfc_upper(10);
  EXPECT_LT(r.coefficient, ExactRational(4, 3) * ExactRational(pow2(10)) + 29);
  EXPECT_LE(r.near_bound, r.coarse_bound);
  EXPECT_LT(r.coarse_bound, r.sp_bound);
  const auto smaller = near_mfc_upper(10, mfc_bounds(10).lower);
  EXPECT_LE(smaller.near_bound, r.near_bound);
  EXPECT_THROW(near_mfc_upper(8), std::domain_error);
}

TEST(Tables, Examples) {
  EXPECT_EQ(cell(table(1), 10, "tail").text, "9.3590067076487953");
  EXPECT_EQ(cell(table(1), 8, "sigma3_x256").text, "17.902098");
  EXPECT_EQ(cell(table(5), 8, "log2_gb_beta").text, "67.515821");
  EXPECT_EQ(cell(table(2), 4, "mfsp").text, "896");
  EXPECT_EQ(cell(table(2), 2, "near_mf").text, "0");
  EXPECT_EQ(cell(table(2), 6, "mf").text, "≈ 2^{23.299}");
  EXPECT_EQ(cell(table(2), 6, "bent").text, "external");
  EXPECT_FALSE(cell(table(2), 6, "bent").exact);
  EXPECT_EQ(cell(table(3), 12, "expected_m").text, "1 + 2^{-133.377320}");
  EXPECT_EQ(cell(table(3), 6, "expected_m").text, "8.6");
  EXPECT_EQ(cell(table(4), 6, "lower").text, "< 0");
  EXPECT_THROW(table(6), std::invalid_argument);
}

TEST(Formulas, Examples) {
  const auto f8 = formulas(8);
  EXPECT_EQ(fixed(*cell(f8, 8, "mfc_lower").log2, 6), "77.864341");
  EXPECT_EQ(fixed(*cell(f8, 8, "mfc_upper").log2, 6), "77.865447");
  EXPECT_EQ(cell(formulas(4), 4, "mfsp").text, "896");
  EXPECT_EQ(cell(formulas(2), 2, "near_mf").text, "0");
  EXPECT_THROW(formulas(26), std::invalid_argument);
}

TEST(Rendering, RoundHalfEven) {
  EXPECT_EQ(to_decimal(ExactRational(5, 2), 0), "2");
  EXPECT_EQ(to_decimal(ExactRational(7, 2), 0), "4");
  EXPECT_EQ(to_decimal(ExactRational(-1, 8), 2), "-0.12");
  EXPECT_EQ(fixed(0.125, 2), "0.12");
  EXPECT_EQ(fixed(0.375, 2), "0.38");
}

TEST(Log2, HugeValues) {
  const BigCount big = pow2(5000) * 3;
  EXPECT_NEAR(log2_of(big), 5000 + std::log2(3.0), 1e-9);
  EXPECT_NEAR(log2_of(make_rational(1, pow2(300))), -300.0, 1e-12);
}
