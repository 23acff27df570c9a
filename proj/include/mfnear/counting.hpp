#pragma once

// Closed-form counts for MF bent functions and their closest bent functions.
// Everything is exact; decimal and log2 strings are produced only for output.

#include <optional>
#include <string>
#include <vector>

#include "mfnear/bigint.hpp"

namespace mfnear::counting {

/// Expected |A_k(pi)| over uniform permutations pi of Z2^n.
ExactRational sigma(int n, int k);
/// 2^(2n-3)/3 + 1/12 + 1/(2^(n+2) - 12), n >= 2.
ExactRational sigma2_closed(int n);
/// 5/224 * 2^n (2^n-1)(2^n-2)(2^n-4) / ((2^n-3)(2^n-5)(2^n-6)(2^n-7)), n >= 3.
ExactRational sigma3_closed(int n);

/// 2^(2n+1) - 2^n for an even argument 2n.
BigCount lambda(int two_n);

/// Mean |near(f)| over f in MF_2n.
ExactRational near_average(int n);
/// sum_{k=3}^{n-1} sigma(n,k) 2^((k+1)^2 - 2^k).
ExactRational tail_sum(int n);

/// leading + top + tail with top = 2^((n+1)^2 - 2^n) and tail = tail_sum(n).
struct Decomposition {
  ExactRational leading;
  ExactRational top;
  ExactRational tail;
  ExactRational total() const { return leading + top + tail; }
};
/// leading = 10/3 4^n - 2^n + 8/3 + 8/(2^n - 3). Equals near_average(n) for n >= 3.
Decomposition near_average_decomposition(int n);
/// 10/3 4^n - 2^n + 29.
ExactRational near_average_bound(int n);

BigCount mf_size(int n);
/// |near(MF_2n)| / |MF_2n|.
ExactRational near_mf_coefficient(int n);
BigCount near_mf_size(int n);
/// leading = 4^n/18 + 1/9 + 1/(3 2^n - 9). Equals near_mf_coefficient(n) for n >= 3.
Decomposition near_mf_decomposition(int n);
BigCount mfsp_size(int n);

/// |MF_2n meet MF_U| for U in S(2n, n) with dim(U meet X_n) = k < n.
BigCount mf_mfU_intersection(int n, int k);
/// Number of U in S(2n, n) with dim(U meet X_n) = k.
BigCount subspaces_with_x_part(int n, int k);
BigCount beta(int two_n);
/// (2^n - 1)^2 2^(3 2^(n-1) + 1) 2^(n-1)!
BigCount beta_lower_bound(int two_n);
/// 2^(3 2^(n-1) + 2n + 1) 2^(n-1)!
BigCount beta_upper_bound(int two_n);
ExactRational expected_m(int two_n);

struct MfcBounds {
  BigCount lower;
  BigCount upper;
  /// GB(2n,n) (|MF| - beta_upper_bound), defined for n >= 5.
  std::optional<BigCount> closed_lower;
};
MfcBounds mfc_bounds(int two_n);

struct NearMfcBound {
  ExactRational coefficient;  // near_average - lambda
  BigCount mfc_estimate;
  ExactRational near_bound;   // coefficient * mfc_estimate
  ExactRational coarse_bound; // (4/3 4^n + 29) * mfc_estimate
  ExactRational sp_bound;     // (4/3 4^n + 30) * mfc_estimate
};
/// Needs 2n >= 10. Uses the MFC upper bound unless an estimate is given.
NearMfcBound near_mfc_upper(int two_n, const std::optional<BigCount>& mfc_estimate = std::nullopt);

/// One rendered cell.
struct CountReport {
  std::string table;
  int two_n = 0;
  std::string column;
  std::optional<ExactRational> exact;  // empty for cells taken from outside
  std::optional<double> log2;
  std::string text;
};

/// Tables 1-5 as rendered cells, row-major.
std::vector<CountReport> table(int id);
/// Every formula at one 2n.
std::vector<CountReport> formulas(int two_n);

/// "%.<places>f" of a double rounded half-to-even on its exact binary value.
std::string fixed(double value, int places);

}  // namespace mfnear::counting
