#include "mfnear/counting.hpp"

#include <cmath>
#include <stdexcept>

#include "mfnear/gf2.hpp"

namespace mfnear::counting {

namespace {

using gf2::gaussian_binomial;

unsigned long ul(long v) {
  if (v < 0) throw std::domain_error("negative exponent");
  return static_cast<unsigned long>(v);
}

BigCount p2(long e) { return pow2(ul(e)); }

ExactRational q(const BigCount& v) { return ExactRational(v); }

ExactRational pow2q(long e) { return e >= 0 ? q(p2(e)) : make_rational(1, p2(-e)); }

int half(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("2n must be a positive even number");
  return two_n / 2;
}

void require_n(int n, int lo) {
  if (n < lo) throw std::invalid_argument("n must be at least " + std::to_string(lo));
}

}  // namespace

ExactRational sigma(int n, int k) {
  if (k < 0 || k > n || n > 16) throw std::invalid_argument("sigma needs 0 <= k <= n <= 16");
  const BigCount gb = gaussian_binomial(n, k);
  const BigCount num = p2(2L * (n - k)) * gb * gb * factorial(ul(1L << k)) * factorial(ul((1L << n) - (1L << k)));
  return make_rational(num, factorial(ul(1L << n)));
}

ExactRational sigma2_closed(int n) {
  require_n(n, 2);
  return pow2q(2L * n - 3) / 3 + ExactRational(1, 12) + make_rational(1, p2(n + 2) - 12);
}

ExactRational sigma3_closed(int n) {
  require_n(n, 3);
  const BigCount t = p2(n);
  return ExactRational(5, 224) * make_rational(t * (t - 1) * (t - 2) * (t - 4), (t - 3) * (t - 5) * (t - 6) * (t - 7));
}

BigCount lambda(int two_n) {
  const int n = half(two_n);
  return p2(2L * n + 1) - p2(n);
}

namespace {

ExactRational weighted_sigma(int n, int k) { return sigma(n, k) * pow2q(static_cast<long>(k + 1) * (k + 1) - (1L << k)); }

}  // namespace

ExactRational near_average(int n) {
  require_n(n, 1);
  ExactRational s = q(lambda(2 * n));
  for (int k = 2; k <= n; ++k) s += weighted_sigma(n, k);
  return s;
}

ExactRational tail_sum(int n) {
  require_n(n, 1);
  ExactRational s = 0;
  for (int k = 3; k <= n - 1; ++k) s += weighted_sigma(n, k);
  return s;
}

Decomposition near_average_decomposition(int n) {
  require_n(n, 2);
  const ExactRational t = q(p2(n));
  Decomposition d;
  d.leading = ExactRational(10, 3) * t * t - t + ExactRational(8, 3) + ExactRational(8) / (t - 3);
  d.top = pow2q(static_cast<long>(n + 1) * (n + 1) - (1L << n));
  d.tail = tail_sum(n);
  return d;
}

ExactRational near_average_bound(int n) {
  const ExactRational t = q(p2(n));
  return ExactRational(10, 3) * t * t - t + 29;
}

BigCount mf_size(int n) {
  require_n(n, 1);
  if (n > 16) throw std::invalid_argument("mf_size supports n <= 16");
  return p2(1L << n) * factorial(ul(1L << n));
}

ExactRational near_mf_coefficient(int n) {
  require_n(n, 1);
  if (n == 1) return 0;
  ExactRational c = ExactRational(4, 3) * sigma(n, 2);
  for (int k = 3; k <= n; ++k) c += weighted_sigma(n, k);
  return c;
}

BigCount near_mf_size(int n) {
  const ExactRational v = near_mf_coefficient(n) * q(mf_size(n));
  if (v.get_den() != 1) throw std::logic_error("|near(MF)| is not an integer");
  return v.get_num();
}

Decomposition near_mf_decomposition(int n) {
  require_n(n, 2);
  const ExactRational t = q(p2(n));
  Decomposition d;
  d.leading = t * t / 18 + ExactRational(1, 9) + ExactRational(1) / (3 * t - 9);
  d.top = pow2q(static_cast<long>(n + 1) * (n + 1) - (1L << n));
  d.tail = tail_sum(n);
  return d;
}

BigCount mfsp_size(int n) { return near_mf_size(n) + mf_size(n); }

BigCount mf_mfU_intersection(int n, int k) {
  if (k < 0 || k >= n) throw std::invalid_argument("intersection needs 0 <= k < n");
  const long blocks = 1L << k;
  BigCount prod = 1;
  for (int i = 0; i < n - k; ++i) prod *= p2(n - k) - p2(i);
  BigCount prod_pow;
  mpz_pow_ui(prod_pow.get_mpz_t(), prod.get_mpz_t(), ul(blocks));
  return factorial(ul(blocks)) * p2((2L * n - 2L * k + 1) * blocks) * prod_pow;
}

BigCount subspaces_with_x_part(int n, int k) {
  if (k < 0 || k > n) return 0;
  return p2(static_cast<long>(n - k) * (n - k)) * gaussian_binomial(n, k) * gaussian_binomial(n, n - k);
}

BigCount beta(int two_n) {
  const int n = half(two_n);
  BigCount s = 0;
  for (int k = 0; k < n; ++k) {
    const BigCount gb = gaussian_binomial(n, k);
    s += gb * gb * p2(static_cast<long>(n - k) * (n - k)) * mf_mfU_intersection(n, k);
  }
  return s;
}

BigCount beta_lower_bound(int two_n) {
  const int n = half(two_n);
  const BigCount t = p2(n) - 1;
  return t * t * p2(3L * (1L << (n - 1)) + 1) * factorial(ul(1L << (n - 1)));
}

BigCount beta_upper_bound(int two_n) {
  const int n = half(two_n);
  return p2(3L * (1L << (n - 1)) + 2L * n + 1) * factorial(ul(1L << (n - 1)));
}

ExactRational expected_m(int two_n) {
  const int n = half(two_n);
  return 1 + make_rational(beta(two_n), mf_size(n));
}

MfcBounds mfc_bounds(int two_n) {
  const int n = half(two_n);
  const BigCount gb = gaussian_binomial(2 * n, n);
  MfcBounds b;
  b.upper = gb * mf_size(n);
  b.lower = b.upper - gb * beta(two_n);
  if (n >= 5) b.closed_lower = gb * (mf_size(n) - beta_upper_bound(two_n));
  return b;
}

NearMfcBound near_mfc_upper(int two_n, const std::optional<BigCount>& mfc_estimate) {
  const int n = half(two_n);
  if (n < 5) throw std::domain_error("the near(MFC) bound is stated for 2n >= 10");
  NearMfcBound r;
  r.coefficient = near_average(n) - q(lambda(two_n));
  r.mfc_estimate = mfc_estimate ? *mfc_estimate : mfc_bounds(two_n).upper;
  const ExactRational est = q(r.mfc_estimate);
  const ExactRational four_n = q(p2(2L * n));
  r.near_bound = r.coefficient * est;
  r.coarse_bound = (ExactRational(4, 3) * four_n + 29) * est;
  r.sp_bound = (ExactRational(4, 3) * four_n + 30) * est;
  return r;
}

// ---------------------------------------------------------------- rendering

std::string fixed(double value, int places) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot render a non-finite value");
  return to_decimal(ExactRational(value), places);
}

namespace {

CountReport cell(std::string table, int two_n, std::string column, const ExactRational& exact, std::string text) {
  CountReport r{std::move(table), two_n, std::move(column), exact, std::nullopt, std::move(text)};
  if (exact > 0) r.log2 = log2_of(exact);
  return r;
}

std::string pow2_text(double lg, int places) { return "≈ 2^{" + fixed(lg, places) + "}"; }

std::string integer_or_decimal(const ExactRational& v, int places) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return to_decimal(v, places);
}

std::string log2_text(const ExactRational& v) { return fixed(log2_of(v), 6); }

}  // namespace

std::vector<CountReport> table(int id) {
  std::vector<CountReport> out;
  switch (id) {
    case 1:
      for (int n = 4; n <= 12; ++n) {
        const ExactRational s3 = sigma(n, 3) * 256;
        const ExactRational s4 = sigma(n, 4) * 512;
        const ExactRational tail = tail_sum(n);
        out.push_back(cell("1", 2 * n, "sigma3_x256", s3, to_decimal(s3, 6)));
        out.push_back(cell("1", 2 * n, "sigma4_x512", s4, integer_or_decimal(s4, 16)));
        out.push_back(cell("1", 2 * n, "tail", tail, to_decimal(tail, 16)));
      }
      break;
    case 2:
      for (int n = 1; n <= 4; ++n) {
        const ExactRational vals[] = {q(mf_size(n)), q(near_mf_size(n)), q(mfsp_size(n))};
        const char* names[] = {"mf", "near_mf", "mfsp"};
        for (int c = 0; c < 3; ++c) {
          std::string text = (n <= 2 || vals[c] == 0) ? to_string(vals[c]) : pow2_text(log2_of(vals[c]), 3);
          out.push_back(cell("2", 2 * n, names[c], vals[c], std::move(text)));
        }
        out.push_back(CountReport{"2", 2 * n, "bent", std::nullopt, std::nullopt, "external"});
      }
      break;
    case 3:
      for (int n = 1; n <= 8; ++n) {
        const ExactRational e = expected_m(2 * n);
        std::string text;
        if (is_short_decimal(e, 6)) {
          text = integer_or_decimal(e, 6);
          while (text.find('.') != std::string::npos && (text.back() == '0' || text.back() == '.')) text.pop_back();
        } else {
          text = "1 + 2^{" + log2_text(e - 1) + "}";
        }
        out.push_back(cell("3", 2 * n, "expected_m", e, std::move(text)));
      }
      break;
    case 4:
      for (int n = 1; n <= 8; ++n) {
        const MfcBounds b = mfc_bounds(2 * n);
        const ExactRational lo = q(b.lower);
        out.push_back(cell("4", 2 * n, "lower", lo, b.lower <= 0 ? std::string("< 0") : log2_text(lo)));
        out.push_back(cell("4", 2 * n, "upper", q(b.upper), log2_text(q(b.upper))));
      }
      break;
    case 5:
      for (int n = 4; n <= 8; ++n) {
        const BigCount be = beta(2 * n);
        const ExactRational cols[] = {q(be), q(beta_upper_bound(2 * n)), q(gaussian_binomial(2 * n, n) * be), q(mf_size(n))};
        const char* names[] = {"log2_beta", "log2_beta_bound", "log2_gb_beta", "log2_mf"};
        for (int c = 0; c < 4; ++c) out.push_back(cell("5", 2 * n, names[c], cols[c], log2_text(cols[c])));
      }
      break;
    default:
      throw std::invalid_argument("table id must be 1..5");
  }
  return out;
}

std::vector<CountReport> formulas(int two_n) {
  const int n = half(two_n);
  if (n > 12) throw std::invalid_argument("formulas are capped at 2n <= 24");
  std::vector<CountReport> out;
  auto add = [&](std::string column, const ExactRational& v) {
    out.push_back(cell("formulas", two_n, std::move(column), v, to_string(v)));
  };
  for (int k = 0; k <= n; ++k) add("sigma_" + std::to_string(k), sigma(n, k));
  add("lambda", q(lambda(two_n)));
  add("near_average", near_average(n));
  add("mf", q(mf_size(n)));
  add("near_mf", q(near_mf_size(n)));
  add("mfsp", q(mfsp_size(n)));
  add("beta", q(beta(two_n)));
  add("expected_m", expected_m(two_n));
  const MfcBounds b = mfc_bounds(two_n);
  add("mfc_lower", q(b.lower));
  add("mfc_upper", q(b.upper));
  return out;
}

}  // namespace mfnear::counting
