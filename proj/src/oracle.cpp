#include "mfnear/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mfnear/counting.hpp"
#include "mfnear/parallel.hpp"

namespace mfnear::oracle {

namespace {

using gf2::Word;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Point of base + span(rows) with coefficient vector c.
Word point_at(Word base, std::span<const Word> rows, std::uint64_t c) {
  Word x = base;
  for (std::size_t i = 0; c != 0; ++i, c >>= 1) {
    if (c & 1U) x ^= rows[i];
  }
  return x;
}

// Definition of affinity: the value at every point equals the extension
// from the base point along each basis row.
bool coset_affine(const TruthTable& f, Word base, std::span<const Word> rows) {
  const bool f0 = f(base);
  std::uint64_t slope = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (f(base ^ rows[i]) != f0) slope |= std::uint64_t{1} << i;
  }
  const std::uint64_t size = std::uint64_t{1} << rows.size();
  for (std::uint64_t c = 3; c < size; ++c) {
    if (std::has_single_bit(c)) continue;
    const bool predicted = f0 != ((std::popcount(c & slope) & 1) != 0);
    if (f(point_at(base, rows, c)) != predicted) return false;
  }
  return true;
}

std::string describe(const mmf::MMFunction& g) {
  std::ostringstream s;
  s << "pi=[";
  for (std::size_t i = 0; i < g.pi.table().size(); ++i) s << (i ? "," : "") << g.pi.table()[i];
  s << "] phi=" << g.phi.to_hex();
  return s.str();
}

std::vector<mmf::MMFunction> all_mmf(int n) {
  std::vector<Word> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Word>(i);
  std::vector<mmf::MMFunction> out;
  do {
    for (std::uint64_t phi = 0; phi < (std::uint64_t{1} << t.size()); ++phi) {
      out.emplace_back(mmf::Permutation(t, n), TruthTable::from_words(n, {phi}));
    }
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

SampleEstimate estimate_of(const std::vector<double>& xs, std::uint64_t seed) {
  SampleEstimate e;
  e.samples = xs.size();
  e.seed = seed;
  if (xs.empty()) return e;
  double sum = 0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.standard_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

int half(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("2n must be a positive even number");
  return two_n / 2;
}

}  // namespace

double SampleEstimate::z_score(double target) const {
  if (standard_error == 0.0) return mean == target ? 0.0 : std::copysign(INFINITY, mean - target);
  return (mean - target) / standard_error;
}

// ---------------------------------------------------------------- near_brute

std::vector<TruthTable> near_brute(const TruthTable& f, int jobs) {
  const int m = f.variables();
  if (m % 2 != 0 || m < 2 || m > 8) throw std::invalid_argument("near_brute scans 2n <= 8 only");
  if (!boolfun::is_bent(f)) throw std::invalid_argument("near_brute needs a bent function");
  const int n = m / 2;
  const auto& dirs = gf2::linear_subspaces(m, n);
  const std::size_t chunks = std::min<std::size_t>(dirs.size(), 256);
  std::vector<std::vector<TruthTable>> found(chunks);
  parallel_for(chunks, jobs, [&](std::size_t chunk) {
    const std::size_t lo = dirs.size() * chunk / chunks;
    const std::size_t hi = dirs.size() * (chunk + 1) / chunks;
    for (std::size_t d = lo; d < hi; ++d) {
      const auto& s = dirs[d];
      const Word free = ~s.pivot_mask() & gf2::low_mask(m);
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        const Word base = gf2::deposit_bits(static_cast<Word>(c), free);
        if (!coset_affine(f, base, s.rows())) continue;
        TruthTable g = f;
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) g.flip(point_at(base, s.rows(), u));
        if (!boolfun::is_bent(g)) throw std::logic_error("brute scan produced a non-bent function");
        found[chunk].push_back(std::move(g));
      }
    }
  });
  std::vector<TruthTable> out;
  for (auto& v : found) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- parent scan

std::vector<mmf::MMFunction> parent_scan(const TruthTable& g) {
  const int m = g.variables();
  if (m % 2 != 0 || m < 2 || m > 8) throw std::invalid_argument("parent_scan handles 2n <= 8");
  if (!boolfun::is_bent(g)) throw std::invalid_argument("parent_scan needs a bent function");
  const int n = m / 2;
  const std::size_t size = std::size_t{1} << n;
  const Word full = gf2::low_mask(static_cast<int>(size));
  std::vector<Word> lin(size);
  for (std::size_t v = 0; v < size; ++v) {
    for (std::size_t x = 0; x < size; ++x) {
      if (gf2::inner(static_cast<Word>(x), static_cast<Word>(v))) lin[v] |= Word{1} << x;
    }
  }
  // weight[y][2v + b] = dist(block y of g, <., v> + b).
  std::vector<std::vector<int>> weight(size, std::vector<int>(2 * size));
  std::vector<int> suffix(size + 1, 0);
  for (std::size_t y = 0; y < size; ++y) {
    Word block = 0;
    for (std::size_t x = 0; x < size; ++x) {
      if (g(static_cast<Word>(x + (y << n)))) block |= Word{1} << x;
    }
    for (std::size_t v = 0; v < size; ++v) {
      weight[y][2 * v] = std::popcount(block ^ lin[v]);
      weight[y][2 * v + 1] = std::popcount(block ^ lin[v] ^ full);
    }
  }
  for (std::size_t y = size; y-- > 0;) {
    suffix[y] = suffix[y + 1] + *std::min_element(weight[y].begin(), weight[y].end());
  }
  const int budget = 1 << n;
  std::vector<mmf::MMFunction> out;
  std::vector<Word> table(size);
  std::vector<int> bits(size);
  auto dfs = [&](auto&& self, std::size_t y, int acc, std::uint32_t used) -> void {
    if (y == size) {
      if (acc != budget) return;
      TruthTable phi(n);
      for (std::size_t i = 0; i < size; ++i) phi.set(static_cast<Word>(i), bits[i] != 0);
      out.emplace_back(mmf::Permutation(table, n), std::move(phi));
      return;
    }
    for (std::size_t v = 0; v < size; ++v) {
      if (used & (1U << v)) continue;
      for (int b = 0; b < 2; ++b) {
        const int next = acc + weight[y][2 * v + static_cast<std::size_t>(b)];
        if (next + suffix[y + 1] > budget) continue;
        table[y] = static_cast<Word>(v);
        bits[y] = b;
        self(self, y + 1, next, used | (1U << v));
      }
    }
  };
  dfs(dfs, 0, 0, 0);
  return out;
}

// ---------------------------------------------------------------- sums

VerificationOutcome verify_sum_pi(int n, int k) {
  const auto start = Clock::now();
  if (n < 1 || n > 3 || k < 0 || k > n) throw std::invalid_argument("verify_sum_pi needs 0 <= k <= n <= 3");
  VerificationOutcome out;
  out.claim = "sum over pi of |A_" + std::to_string(k) + "(pi)| = (2^n)! sigma(" + std::to_string(n) + "," +
              std::to_string(k) + ")";
  std::vector<std::vector<Word>> flats;
  for (const auto& u : gf2::enumerate_subspaces(n, k, true)) flats.push_back(u.elements());
  std::vector<Word> t(std::size_t{1} << n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Word>(i);
  BigCount total = 0;
  std::uint64_t perms = 0;
  std::vector<Word> images;
  do {
    ++perms;
    std::uint64_t count = 0;
    for (const auto& pts : flats) {
      images.clear();
      for (Word y : pts) images.push_back(t[y]);
      if (gf2::affine_hull_or_none(images, n)) ++count;
    }
    total += BigCount(static_cast<unsigned long>(count));
  } while (std::next_permutation(t.begin(), t.end()));
  const ExactRational expected = ExactRational(factorial(std::size_t{1} << n)) * counting::sigma(n, k);
  out.work["permutations"] = perms;
  out.work["subspaces"] = perms * flats.size();
  out.fact("sum", total.get_str());
  out.fact("expected", to_string(expected));
  out.passed = ExactRational(total) == expected;
  if (!out.passed) out.fail("sum " + total.get_str() + " != " + to_string(expected));
  out.seconds = since(start);
  return out;
}

VerificationOutcome verify_sum_phiH(int k, const std::vector<Word>& sigma) {
  const auto start = Clock::now();
  if (k < 0 || k > 3) throw std::invalid_argument("verify_sum_phiH needs k <= 3");
  const std::size_t points = std::size_t{1} << k;
  {
    std::vector<bool> seen(points, false);
    if (sigma.size() != points) throw std::invalid_argument("sigma must have 2^k entries");
    for (Word s : sigma) {
      if (s >= points || seen[s]) throw std::invalid_argument("sigma must be a bijection of Z2^k");
      seen[s] = true;
    }
  }
  VerificationOutcome out;
  out.claim = "sum over phi|_L of |H| = 2^((k+1)^2) for k = " + std::to_string(k);
  const std::uint64_t tables = std::uint64_t{1} << points;
  std::vector<bool> affine(tables, false);
  for (std::size_t l = 0; l < points; ++l) {
    std::uint64_t t = 0;
    for (std::size_t x = 0; x < points; ++x) {
      if (gf2::inner(static_cast<Word>(x), static_cast<Word>(l))) t |= std::uint64_t{1} << x;
    }
    affine[t] = true;
    affine[t ^ (tables - 1)] = true;
  }
  const Word kmask = gf2::low_mask(k);
  const std::uint64_t maps = std::uint64_t{1} << (k * (k + 1));
  std::uint64_t total = 0;
  for (std::uint64_t h = 0; h < maps; ++h) {
    std::uint64_t xi = 0;
    for (std::size_t x = 0; x < points; ++x) {
      Word hx = static_cast<Word>(h) & kmask;
      for (int i = 0; i < k; ++i) {
        if ((x >> i) & 1U) hx ^= static_cast<Word>(h >> (k * (i + 1))) & kmask;
      }
      if (gf2::inner(hx, sigma[x])) xi |= std::uint64_t{1} << x;
    }
    for (std::uint64_t phi = 0; phi < tables; ++phi) {
      if (affine[xi ^ phi]) ++total;
    }
  }
  const std::uint64_t expected = std::uint64_t{1} << ((k + 1) * (k + 1));
  out.work["pairs"] = maps * tables;
  out.fact("sum", std::to_string(total));
  out.fact("expected", std::to_string(expected));
  out.passed = total == expected;
  if (!out.passed) out.fail("sum " + std::to_string(total) + " != " + std::to_string(expected));
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------- criterion

VerificationOutcome verify_criterion(int n, int trials, std::uint64_t seed, int jobs) {
  const auto start = Clock::now();
  if (n < 1 || n > 4) throw std::invalid_argument("verify_criterion needs 1 <= n <= 4");
  VerificationOutcome out;
  out.claim = "criterion enumeration equals brute near(f) at 2n = " + std::to_string(2 * n);
  std::vector<mmf::MMFunction> fs;
  if (trials == 0) {
    if (n > 2) throw std::invalid_argument("exhaustive criterion check only for n <= 2");
    fs = all_mmf(n);
  } else {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) fs.push_back(random_mmf(rng, n));
  }
  std::vector<std::optional<std::string>> bad(fs.size());
  std::vector<std::uint64_t> sizes(fs.size());
  parallel_for(fs.size(), jobs, [&](std::size_t i) {
    const auto& g = fs[i];
    const TruthTable f = mmf::build_mmf(g);
    std::vector<TruthTable> crit;
    for (const auto& w : mmf::near_enumerate(g)) crit.push_back(mmf::realize_near(g, w));
    const std::size_t witnesses = crit.size();
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    const auto brute = near_brute(f, 1);
    sizes[i] = brute.size();
    if (crit.size() != witnesses) {
      bad[i] = describe(g) + ": two witnesses realize the same function";
    } else if (crit != brute) {
      bad[i] = describe(g) + ": criterion " + std::to_string(crit.size()) + " vs brute " + std::to_string(brute.size());
    } else if (mmf::near_count(g) != BigCount(static_cast<unsigned long>(brute.size()))) {
      bad[i] = describe(g) + ": near_count disagrees with the scan";
    }
  });
  out.passed = true;
  std::uint64_t mismatches = 0;
  for (const auto& b : bad) {
    if (b) {
      ++mismatches;
      out.fail(*b);
    }
  }
  out.work["functions"] = fs.size();
  out.work["subspaces"] = fs.size() * BigCount(gf2::gaussian_binomial(2 * n, n) * pow2(static_cast<unsigned long>(n))).get_ui();
  out.fact("mismatches", std::to_string(mismatches));
  if (!sizes.empty()) {
    out.fact("min_near", std::to_string(*std::min_element(sizes.begin(), sizes.end())));
    out.fact("max_near", std::to_string(*std::max_element(sizes.begin(), sizes.end())));
  }
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------- coincidence

VerificationOutcome verify_coincidence(int n, int trials, std::uint64_t seed, int controls) {
  const auto start = Clock::now();
  if (n < 2 || n > 4) throw std::invalid_argument("verify_coincidence needs 2 <= n <= 4");
  VerificationOutcome out;
  out.claim = "dim-2 witnesses have exactly 24 parents, dim >= 3 witnesses one";
  out.passed = true;
  Rng rng(seed);
  std::uint64_t candidates = 0;
  auto key = [](const mmf::MMFunction& g) { return std::make_pair(g.pi.table(), g.phi.words()); };
  for (int t = 0; t < trials; ++t) {
    mmf::MMFunction g;
    std::vector<gf2::AffineSubspace> a2;
    do {
      g = random_mmf(rng, n);
      a2 = mmf::image_subspaces(g.pi, 2);
    } while (a2.empty());
    const auto& l = a2[rng.below(a2.size())];
    const auto hs = mmf::h_solutions_dim2(g, l);
    const auto w = mmf::make_witness(g, l, hs[rng.below(hs.size())]);
    const TruthTable target = mmf::realize_near(g, w);
    const auto scan = parent_scan(target);
    const auto parents = mmf::coincidence_parents(g, w);
    candidates += scan.size();
    std::set<std::pair<std::vector<Word>, std::vector<std::uint64_t>>> scanned;
    for (const auto& p : scan) scanned.insert(key(p));
    std::set<std::pair<std::vector<Word>, std::vector<std::uint64_t>>> formula;
    bool formulas_ok = true;
    for (const auto& p : parents) {
      formula.insert(key(p.g));
      // The realized function of each parent, and H' read back from its U.
      const auto pw = mmf::make_witness(p.g, l, p.H);
      if (mmf::realize_near(p.g, pw) != target) formulas_ok = false;
      const TruthTable diff = mmf::build_mmf(p.g) ^ target;
      std::vector<Word> support;
      for (std::uint64_t x = 0; x < diff.size(); ++x) {
        if (diff(static_cast<Word>(x))) support.push_back(static_cast<Word>(x));
      }
      const auto u = gf2::affine_hull_or_none(support, 2 * n);
      if (!u) {
        formulas_ok = false;
        continue;
      }
      const auto back = mmf::decompose_subspace(*u).H;
      for (Word y : l.elements()) {
        if (back.apply(y) != p.H.apply(y)) formulas_ok = false;
      }
    }
    const bool has_self = scanned.count(key(g)) == 1;
    if (scan.size() != 24 || scanned != formula || !formulas_ok || !has_self) {
      out.fail(describe(g) + " L.base=" + std::to_string(l.base_bits()) + ": scan found " + std::to_string(scan.size()) +
               " parents, formulas " + (scanned == formula ? "agree" : "disagree") +
               (formulas_ok ? "" : ", formula H'/phi' mismatch"));
    }
  }
  int control_runs = 0;
  for (int c = 0; c < controls; ++c) {
    mmf::MMFunction g;
    std::vector<std::pair<gf2::AffineSubspace, mmf::HSolutionSpace>> options;
    while (options.empty()) {
      g = random_mmf(rng, n);
      for (int k = 3; k <= n; ++k) {
        for (const auto& l : mmf::image_subspaces(g.pi, k)) {
          auto hs = mmf::h_solution_space(g, l);
          if (!hs.empty()) options.emplace_back(l, std::move(hs));
        }
      }
    }
    const auto& [l, hs] = options[rng.below(options.size())];
    const auto w = mmf::make_witness(g, l, hs.member(rng.below(hs.count())));
    const auto scan = parent_scan(mmf::realize_near(g, w));
    candidates += scan.size();
    ++control_runs;
    if (scan.size() != 1 || key(scan[0]) != key(g)) {
      out.fail(describe(g) + " dim L = " + std::to_string(l.dim()) + ": " + std::to_string(scan.size()) + " parents");
    }
  }
  out.work["witnesses"] = static_cast<std::uint64_t>(trials);
  out.work["controls"] = static_cast<std::uint64_t>(control_runs);
  out.work["parents_found"] = candidates;
  out.fact("seed", std::to_string(seed));
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------- census

VerificationOutcome near_mf_census() {
  const auto start = Clock::now();
  VerificationOutcome out;
  out.claim = "|near(MF_4)| = 512 and |MF_4 + near(MF_4)| = 896 by full dedup";
  const auto fs = all_mmf(2);
  std::vector<TruthTable> mf;
  for (const auto& g : fs) mf.push_back(mmf::build_mmf(g));
  std::sort(mf.begin(), mf.end());
  const std::size_t distinct_mf = static_cast<std::size_t>(std::unique(mf.begin(), mf.end()) - mf.begin());
  std::vector<TruthTable> all;
  std::uint64_t min_near = ~std::uint64_t{0};
  std::uint64_t max_near = 0;
  for (const auto& g : fs) {
    const auto near = near_brute(mmf::build_mmf(g));
    min_near = std::min<std::uint64_t>(min_near, near.size());
    max_near = std::max<std::uint64_t>(max_near, near.size());
    all.insert(all.end(), near.begin(), near.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::size_t outside = 0;
  for (const auto& t : all) {
    if (!std::binary_search(mf.begin(), mf.end(), t)) ++outside;
  }
  std::vector<TruthTable> both = mf;
  both.insert(both.end(), all.begin(), all.end());
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());

  out.work["functions"] = fs.size();
  out.work["subspaces"] = fs.size() * 140;
  out.fact("mf", std::to_string(distinct_mf));
  out.fact("near_mf", std::to_string(outside));
  out.fact("mfsp", std::to_string(both.size()));
  out.fact("near_per_function", min_near == max_near ? std::to_string(min_near)
                                                     : std::to_string(min_near) + ".." + std::to_string(max_near));
  out.fact("formula_near_mf", counting::near_mf_size(2).get_str());
  out.fact("formula_mfsp", counting::mfsp_size(2).get_str());
  out.passed = distinct_mf == 384 && outside == 512 && both.size() == 896 && min_near == 60 && max_near == 60 &&
               counting::near_mf_size(2) == 512 && counting::mfsp_size(2) == 896 && counting::mf_size(2) == 384;
  if (!out.passed) {
    out.fail("census mf=" + std::to_string(distinct_mf) + " near=" + std::to_string(outside) +
             " mfsp=" + std::to_string(both.size()));
  }
  out.seconds = since(start);
  return out;
}

MCensus m_census(int two_n, bool full, int trials, std::uint64_t seed, int jobs) {
  const int n = half(two_n);
  if (two_n > 8) throw std::invalid_argument("m_census scans 2n <= 8");
  std::vector<mmf::MMFunction> fs;
  if (full) {
    if (two_n > 4) throw std::invalid_argument("the full census is limited to 2n <= 4");
    fs = all_mmf(n);
  } else {
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) fs.push_back(random_mmf(rng, n));
  }
  std::vector<double> sizes(fs.size());
  parallel_for(fs.size(), jobs, [&](std::size_t i) {
    sizes[i] = static_cast<double>(mmf::m_subspaces(mmf::build_mmf(fs[i])).size());
  });
  MCensus c;
  c.functions = fs.size();
  BigCount total = 0;
  for (double s : sizes) {
    total += static_cast<unsigned long>(s);
    if (s > 1) ++c.multiple;
  }
  c.estimate = estimate_of(sizes, full ? 0 : seed);
  if (full) c.exact_mean = make_rational(total, BigCount(static_cast<unsigned long>(fs.size())));
  return c;
}

NearSample sample_near_average(int two_n, int trials, std::uint64_t seed, int jobs) {
  const int n = half(two_n);
  if (n > 6) throw std::invalid_argument("sampling supports 2n <= 12");
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  Rng rng(seed);
  std::vector<mmf::MMFunction> fs;
  for (int t = 0; t < trials; ++t) fs.push_back(random_mmf(rng, n));
  std::vector<BigCount> counts(fs.size());
  parallel_for(fs.size(), jobs, [&](std::size_t i) { counts[i] = mmf::near_count(fs[i]); });
  std::vector<double> xs;
  NearSample s;
  s.minimum = counts.front();
  for (const auto& c : counts) {
    xs.push_back(c.get_d());
    if (c < s.minimum) s.minimum = c;
  }
  s.estimate = estimate_of(xs, seed);
  return s;
}

// ---------------------------------------------------------------- MF meet MF_U

TwoSeriesFunction construct_two_series(Rng& rng, int n, int r) {
  if (r < 0 || r >= n) throw std::invalid_argument("need 0 <= dim R < n");
  const int k = n - r;
  const gf2::LinearSubspace R = random_linear_subspace(rng, n, r);
  const gf2::LinearSubspace ldir = random_linear_subspace(rng, n, k);
  const gf2::AffineSubspace L(ldir);
  std::vector<Word> inc(static_cast<std::size_t>(k));
  for (auto& v : inc) v = static_cast<Word>(rng.below(std::uint64_t{1} << k));
  const gf2::AffineMap H = gf2::AffineMap::on_subspace(L, 0, inc, k);
  const gf2::AffineSubspace U = mmf::compose_subspace({L, R, H});

  const gf2::LinearSubspace rperp = R.orthogonal();
  const Word imask = rperp.pivot_mask();
  const Word lfree = ~ldir.pivot_mask() & gf2::low_mask(n);
  const Word pfree = ~rperp.pivot_mask() & gf2::low_mask(n);
  const std::size_t cosets = std::size_t{1} << r;
  std::vector<std::size_t> tau(cosets);
  for (std::size_t j = 0; j < cosets; ++j) tau[j] = j;
  rng.shuffle(tau);
  std::vector<Word> table(std::size_t{1} << n);
  TruthTable phi(n);
  for (std::size_t j = 0; j < cosets; ++j) {
    const Word a = gf2::deposit_bits(static_cast<Word>(j), lfree);
    const Word b = gf2::deposit_bits(static_cast<Word>(tau[j]), pfree) ^
                   rperp.element(static_cast<Word>(rng.below(std::uint64_t{1} << k)));
    const gf2::Gf2Matrix m = random_invertible(rng, k);
    const bool c = rng.bit();
    const auto slope = static_cast<Word>(rng.below(std::uint64_t{1} << k));
    for (Word u = 0; u < (Word{1} << k); ++u) {
      const Word l = ldir.element(u);
      const Word x = a ^ l;
      table[x] = b ^ rperp.element(m.apply(u));
      const bool xi = gf2::inner(H.apply(l), gf2::extract_bits(table[x], imask));
      phi.set(x, xi ^ c ^ gf2::inner(slope, u));
    }
  }
  return {mmf::MMFunction(mmf::Permutation(std::move(table), n), std::move(phi)), U};
}

VerificationOutcome verify_two_coset_lower(int two_n, int trials, std::uint64_t seed, int jobs) {
  const auto start = Clock::now();
  const int n = half(two_n);
  if (n < 2 || n > 4) throw std::invalid_argument("the brute near scan limits this check to 4 <= 2n <= 8");
  VerificationOutcome out;
  const BigCount bound = pow2(2 * n + 2) - pow2(n + 3);
  out.claim = "f in MF meet MF_U (U != X_n) has |near(f)| >= " + bound.get_str();
  out.passed = true;
  Rng rng(seed);
  std::vector<TwoSeriesFunction> fs;
  for (int t = 0; t < trials; ++t) fs.push_back(construct_two_series(rng, n, static_cast<int>(rng.below(n))));
  std::vector<std::optional<std::string>> bad(fs.size());
  std::vector<std::uint64_t> sizes(fs.size());
  std::vector<std::size_t> msizes(fs.size());
  parallel_for(fs.size(), jobs, [&](std::size_t i) {
    const auto& [g, u] = fs[i];
    const TruthTable f = mmf::build_mmf(g);
    const auto ms = mmf::m_subspaces(f);
    msizes[i] = ms.size();
    const bool has_u = std::find(ms.begin(), ms.end(), u.direction()) != ms.end();
    if (!has_u || ms.size() < 2 || !mmf::member_of_mf_u(g, u)) {
      bad[i] = describe(g) + ": construction failure";
      return;
    }
    sizes[i] = near_brute(f, 1).size();
    if (BigCount(static_cast<unsigned long>(sizes[i])) < bound) {
      bad[i] = describe(g) + ": |near| = " + std::to_string(sizes[i]);
    }
  });
  for (const auto& b : bad) {
    if (b) out.fail(*b);
  }
  out.work["functions"] = fs.size();
  if (!sizes.empty()) {
    out.fact("min_near", std::to_string(*std::min_element(sizes.begin(), sizes.end())));
    out.fact("min_m_subspaces", std::to_string(*std::min_element(msizes.begin(), msizes.end())));
  }
  out.fact("bound", bound.get_str());
  out.fact("near_average", to_string(counting::near_average(n)));
  out.fact("seed", std::to_string(seed));
  out.seconds = since(start);
  return out;
}

namespace {

// Coset plan of a linear U for 64-bit tables: cosets[c] lists points in
// coefficient order.
struct CosetPlan {
  int dim = 0;
  std::vector<std::vector<Word>> cosets;
};

CosetPlan plan_for(const gf2::LinearSubspace& s) {
  CosetPlan p;
  p.dim = s.dim();
  const Word free = ~s.pivot_mask() & gf2::low_mask(s.ambient());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << (s.ambient() - s.dim())); ++c) {
    const Word base = gf2::deposit_bits(static_cast<Word>(c), free);
    std::vector<Word> pts;
    for (std::uint64_t u = 0; u < s.size(); ++u) pts.push_back(point_at(base, s.rows(), u));
    p.cosets.push_back(std::move(pts));
  }
  return p;
}

bool affine_on_all(std::uint64_t t, const CosetPlan& p) {
  for (const auto& pts : p.cosets) {
    const std::uint64_t f0 = (t >> pts[0]) & 1U;
    std::uint64_t slope = 0;
    for (int i = 0; i < p.dim; ++i) slope |= (((t >> pts[std::size_t{1} << i]) & 1U) ^ f0) << i;
    for (std::size_t u = 3; u < pts.size(); ++u) {
      if (std::has_single_bit(u)) continue;
      if ((((t >> pts[u]) & 1U) ^ f0) != static_cast<std::uint64_t>(std::popcount(u & slope) & 1)) return false;
    }
  }
  return true;
}

}  // namespace

VerificationOutcome verify_beta(int two_n, int spot_checks, std::uint64_t seed, int jobs) {
  const auto start = Clock::now();
  const int n = half(two_n);
  if (n != 2 && n != 3) throw std::invalid_argument("verify_beta runs at 2n = 4 or 6");
  VerificationOutcome out;
  out.passed = true;
  const std::size_t size = std::size_t{1} << n;
  // Base tables of f_{pi,0} for every pi, and the masks added by phi.
  std::vector<std::uint64_t> lin(size);
  for (std::size_t v = 0; v < size; ++v) {
    for (std::size_t x = 0; x < size; ++x) {
      if (gf2::inner(static_cast<Word>(x), static_cast<Word>(v))) lin[v] |= std::uint64_t{1} << x;
    }
  }
  const std::uint64_t block = (std::uint64_t{1} << size) - 1;
  std::vector<std::uint64_t> phi_mask(std::size_t{1} << size);
  for (std::size_t phi = 0; phi < phi_mask.size(); ++phi) {
    for (std::size_t y = 0; y < size; ++y) {
      if ((phi >> y) & 1U) phi_mask[phi] |= block << (size * y);
    }
  }
  std::vector<std::uint64_t> base;
  {
    std::vector<Word> t(size);
    for (std::size_t i = 0; i < size; ++i) t[i] = static_cast<Word>(i);
    do {
      std::uint64_t b = 0;
      for (std::size_t y = 0; y < size; ++y) b |= lin[t[y]] << (size * y);
      base.push_back(b);
    } while (std::next_permutation(t.begin(), t.end()));
  }
  auto count_for = [&](const gf2::LinearSubspace& s) {
    const CosetPlan plan = plan_for(s);
    const std::size_t chunks = std::min<std::size_t>(base.size(), 64);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t c) {
      for (std::size_t i = base.size() * c / chunks; i < base.size() * (c + 1) / chunks; ++i) {
        for (std::uint64_t m : phi_mask) {
          if (affine_on_all(base[i] ^ m, plan)) ++partial[c];
        }
      }
    });
    std::uint64_t total = 0;
    for (auto p : partial) total += p;
    return total;
  };

  std::vector<Word> xrows;
  for (int i = 0; i < n; ++i) xrows.push_back(Word{1} << i);
  const gf2::LinearSubspace X = gf2::LinearSubspace::span(xrows, 2 * n);
  const auto& all = gf2::linear_subspaces(2 * n, n);
  std::uint64_t functions_tested = 0;
  if (n == 2) {
    out.claim = "sum over U != X_2 of |MF_4 meet MF_U| = beta(4)";
    BigCount total = 0;
    std::map<int, std::uint64_t> strata;
    for (const auto& s : all) {
      if (s == X) continue;
      const int k = s.intersect(X).dim();
      ++strata[k];
      const std::uint64_t c = count_for(s);
      functions_tested += base.size() * phi_mask.size();
      total += static_cast<unsigned long>(c);
      if (BigCount(static_cast<unsigned long>(c)) != counting::mf_mfU_intersection(n, k)) {
        out.fail("U rows " + std::to_string(s.rows()[0]) + "," + std::to_string(s.rows()[1]) + ": count " +
                 std::to_string(c));
      }
    }
    out.fact("sum", total.get_str());
    out.fact("beta", counting::beta(two_n).get_str());
    for (const auto& [k, c] : strata) {
      out.fact("subspaces_k" + std::to_string(k), std::to_string(c));
      if (BigCount(static_cast<unsigned long>(c)) != counting::subspaces_with_x_part(n, k)) {
        out.fail("stratum k=" + std::to_string(k) + " has " + std::to_string(c) + " subspaces");
      }
    }
    if (total != counting::beta(two_n)) out.fail("sum " + total.get_str() + " != beta");
  } else {
    out.claim = "per-U |MF_6 meet MF_U| equals the intersection formula";
    Rng rng(seed);
    for (int t = 0; t < spot_checks; ++t) {
      const gf2::LinearSubspace* s = nullptr;
      do {
        s = &all[rng.below(all.size())];
      } while (*s == X);
      const int k = s->intersect(X).dim();
      const std::uint64_t c = count_for(*s);
      functions_tested += base.size() * phi_mask.size();
      out.fact("U" + std::to_string(t) + "_k" + std::to_string(k), std::to_string(c));
      if (BigCount(static_cast<unsigned long>(c)) != counting::mf_mfU_intersection(n, k)) {
        out.fail("spot check " + std::to_string(t) + " (k=" + std::to_string(k) + "): " + std::to_string(c) +
                 " != " + counting::mf_mfU_intersection(n, k).get_str());
      }
    }
    out.fact("seed", std::to_string(seed));
  }
  out.work["functions"] = functions_tested;
  out.seconds = since(start);
  return out;
}

}  // namespace mfnear::oracle
