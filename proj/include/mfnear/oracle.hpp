#pragma once

// Brute-force and Monte Carlo checks. The scans here use only the gf2 and
// boolfun primitives plus the MF construction itself; the near(f) criterion
// appears only as the subject of a comparison.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfnear/bigint.hpp"
#include "mfnear/boolfun.hpp"
#include "mfnear/mmf.hpp"
#include "mfnear/random.hpp"

namespace mfnear::oracle {

using boolfun::TruthTable;

struct VerificationOutcome {
  std::string claim;
  bool passed = false;
  /// Serialized counterexample; always set when passed is false.
  std::optional<std::string> witness;
  /// Key results in insertion order.
  std::vector<std::pair<std::string, std::string>> facts;
  std::map<std::string, std::uint64_t> work;
  double seconds = 0.0;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void fail(std::string counterexample) {
    if (passed || !witness) witness = std::move(counterexample);
    passed = false;
  }
};

struct SampleEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double z_score(double target) const;
};

/// {f + 1_U : U in AS(2n, n), f affine on U}, sorted, each member checked
/// bent by its Walsh spectrum. 2n <= 8.
std::vector<TruthTable> near_brute(const TruthTable& f, int jobs = 1);

/// Every (pi', phi') with dist(f_{pi',phi'}, g) = 2^n, for a bent g on 2n
/// variables (depth-first over the blocks of g with a weight budget).
std::vector<mmf::MMFunction> parent_scan(const TruthTable& g);

/// sum over all pi of |A_k(pi)| against (2^n)! sigma(n, k). n <= 3.
VerificationOutcome verify_sum_pi(int n, int k);

/// For L = Z2^k and the bijection sigma = pi_I on it: sum over all phi|_L of
/// the number of affine H with <H(x), sigma(x)> + phi(x) affine, against
/// 2^((k+1)^2). k <= 3.
VerificationOutcome verify_sum_phiH(int k, const std::vector<gf2::Word>& sigma);

/// Criterion realization set equals the brute scan, per sampled function.
/// n = 2 with trials = 0 runs all 384 functions.
VerificationOutcome verify_criterion(int n, int trials, std::uint64_t seed, int jobs = 1);

/// Sampled dim-2 witnesses have exactly the 24 parents of the formulas;
/// sampled dim >= 3 witnesses have one parent.
VerificationOutcome verify_coincidence(int n, int trials, std::uint64_t seed, int controls = 10);

/// Full dedup of near(f) over MF_4.
VerificationOutcome near_mf_census();

struct MCensus {
  std::optional<ExactRational> exact_mean;
  SampleEstimate estimate;
  std::uint64_t functions = 0;
  std::uint64_t multiple = 0;  // functions with |M(f)| > 1
};
/// |M(f)| over MF_2n: every function (2n = 4) or a uniform sample.
MCensus m_census(int two_n, bool full, int trials, std::uint64_t seed, int jobs = 1);

struct NearSample {
  SampleEstimate estimate;
  BigCount minimum;
};
NearSample sample_near_average(int two_n, int trials, std::uint64_t seed, int jobs = 1);

/// Builds f in MF_2n meet MF_U for random U != X_n and checks the brute
/// near count against 2^(2n+2) - 2^(n+3).
VerificationOutcome verify_two_coset_lower(int two_n, int trials, std::uint64_t seed, int jobs = 1);

/// 2n = 4: sum over U != X_2 of |MF meet MF_U| by brute force against beta.
/// 2n = 6: `spot_checks` random U, each counted over all of MF_6.
VerificationOutcome verify_beta(int two_n, int spot_checks = 20, std::uint64_t seed = 1, int jobs = 1);

/// f in MF_2n meet MF_U for a random linear U with dim(U meet X_n) = r < n.
struct TwoSeriesFunction {
  mmf::MMFunction g;
  gf2::AffineSubspace U;
};
TwoSeriesFunction construct_two_series(Rng& rng, int n, int r);

}  // namespace mfnear::oracle
