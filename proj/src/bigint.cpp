#include "mfnear/bigint.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mfnear {

BigCount pow2(unsigned long e) {
  BigCount r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigCount factorial(unsigned long n) {
  static std::mutex mutex;
  static std::vector<BigCount> memo{BigCount(1)};
  std::lock_guard lock(mutex);
  while (memo.size() <= n) {
    memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
  }
  return memo[n];
}

ExactRational make_rational(const BigCount& num, const BigCount& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

double log2_of(const BigCount& value) {
  if (value <= 0) throw std::domain_error("log2 of a non-positive value");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return static_cast<double>(exponent) + std::log2(mantissa);
}

double log2_of(const ExactRational& value) {
  if (value <= 0) throw std::domain_error("log2 of a non-positive value");
  return log2_of(BigCount(value.get_num())) - log2_of(BigCount(value.get_den()));
}

std::string to_decimal(const ExactRational& value, int places) {
  if (places < 0) throw std::invalid_argument("negative decimal places");
  const bool negative = value < 0;
  BigCount num = abs(value.get_num());
  const BigCount& den = value.get_den();
  BigCount scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  num *= scale;
  BigCount quotient;
  BigCount remainder;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int cmp_half = cmp(BigCount(remainder * 2), den);
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(quotient.get_mpz_t()))) {
    quotient += 1;
  }
  std::string digits = quotient.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), 1, '.');
  }
  if (negative && quotient != 0) digits.insert(0, 1, '-');
  return digits;
}

std::string to_string(const ExactRational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::string to_string(const BigCount& value) { return value.get_str(); }

bool is_short_decimal(const ExactRational& value, int max_places) {
  BigCount den = value.get_den();
  int twos = 0;
  int fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  return den == 1 && std::max(twos, fives) <= max_places;
}

}  // namespace mfnear
