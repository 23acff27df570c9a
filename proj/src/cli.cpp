#include "mfnear/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfnear/counting.hpp"
#include "mfnear/mmf.hpp"
#include "mfnear/oracle.hpp"
#include "mfnear/report.hpp"

namespace mfnear::cli {

namespace {

using report::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int jobs = 0;
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> seed;
  bool timings = false;

  std::uint64_t resolved_seed() {
    if (!seed) seed = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    return *seed;
  }
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
  sub->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", c.out, "Output file (relative paths go under $MFNEAR_OUTPUT_DIR)");
  sub->add_flag("--timings", c.timings, "Include wall-clock seconds in the output");
  if (seeded) sub->add_option("--seed", c.seed, "Seed for sampled checks (random when omitted)");
}

std::filesystem::path resolve_out(const std::string& out, const std::string& fallback) {
  const char* env = std::getenv("MFNEAR_OUTPUT_DIR");
  const std::filesystem::path dir = (env && *env) ? std::filesystem::path(env) : std::filesystem::path();
  if (!out.empty()) {
    std::filesystem::path p(out);
    return (p.is_relative() && !dir.empty()) ? dir / p : p;
  }
  if (!fallback.empty() && !dir.empty()) return dir / fallback;
  return {};
}

void emit(const std::string& body, const Common& c, std::ostream& out, const std::string& fallback = {}) {
  const auto path = resolve_out(c.out, fallback);
  if (path.empty()) {
    out << body;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << body;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string render_cells(const std::string& command, Json params, const std::vector<counting::CountReport>& cells,
                         const Common& c) {
  if (c.format == "csv") return report::to_csv(cells);
  if (c.format == "text") return report::to_text(cells);
  Json j = report::envelope(command, std::move(params));
  Json arr = Json::array();
  for (const auto& r : cells) arr.push_back(report::to_json(r));
  j["cells"] = std::move(arr);
  return dump(j);
}

std::string render_outcomes(const std::string& command, Json params,
                            const std::vector<oracle::VerificationOutcome>& outcomes, const Common& c) {
  bool all = true;
  for (const auto& o : outcomes) all = all && o.passed;
  if (c.format == "text") {
    std::string s;
    for (const auto& o : outcomes) s += report::to_text(o, c.timings);
    return s + (all ? "all passed\n" : "FAILED\n");
  }
  if (c.format == "csv") {
    std::string s = c.timings ? "claim,passed,witness,seconds\n" : "claim,passed,witness\n";
    for (const auto& o : outcomes) {
      s += report::csv_field(o.claim) + ',' + (o.passed ? "true" : "false") + ',' +
           report::csv_field(o.witness.value_or(""));
      if (c.timings) s += ',' + counting::fixed(o.seconds, 3);
      s += '\n';
    }
    return s;
  }
  Json j = report::envelope(command, std::move(params));
  j["passed"] = all;
  Json arr = Json::array();
  for (const auto& o : outcomes) arr.push_back(report::to_json(o, c.timings));
  j["outcomes"] = std::move(arr);
  return dump(j);
}

// ---------------------------------------------------------------- formulas

int cmd_formulas(int two_n, Common& c, std::ostream& out) {
  if (two_n < 2 || two_n % 2 != 0 || two_n > 24) throw UsageError("--two-n must be even with 2 <= 2n <= 24");
  auto cells = counting::formulas(two_n);
  if (two_n >= 10) {
    const auto b = counting::near_mfc_upper(two_n);
    for (const auto& [name, v] : {std::pair<std::string, ExactRational>{"near_mfc_bound", b.near_bound},
                                  {"near_mfc_coarse_bound", b.coarse_bound},
                                  {"mfsp_complement_bound", b.sp_bound}}) {
      counting::CountReport r{"formulas", two_n, name, v, log2_of(v), to_string(v)};
      cells.push_back(std::move(r));
    }
  }
  Json params;
  params["two_n"] = two_n;
  emit(render_cells("formulas", std::move(params), cells, c), c, out);
  return kExitOk;
}

// ---------------------------------------------------------------- table

int cmd_table(int id, Common& c, std::ostream& out) {
  if (id < 1 || id > 5) throw UsageError("--id must be 1..5");
  Json params;
  params["id"] = id;
  const std::string ext = c.format == "text" ? "txt" : c.format;
  emit(render_cells("table", std::move(params), counting::table(id), c), c, out,
       "table" + std::to_string(id) + "." + ext);
  return kExitOk;
}

// ---------------------------------------------------------------- near

struct NearArgs {
  std::string pi;
  std::string phi;
  std::string hex;
  std::string mode = "count";
  bool brute = false;
  bool parents = false;
  int witness = -1;
};

std::optional<mmf::MMFunction> read_mmf(const NearArgs& a, boolfun::TruthTable& f) {
  if (!a.hex.empty()) {
    if (!a.pi.empty() || !a.phi.empty()) throw UsageError("give either --hex or --pi/--phi");
    try {
      f = boolfun::TruthTable::from_hex(a.hex);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad --hex: ") + e.what());
    }
    return mmf::mf_from_truth_table(f);
  }
  if (a.pi.empty() || a.phi.empty()) throw UsageError("need --hex or both --pi and --phi");
  std::vector<gf2::Word> table;
  try {
    for (const auto& v : Json::parse(a.pi)) table.push_back(v.get<gf2::Word>());
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --pi: ") + e.what());
  }
  const int n = std::countr_zero(table.size());
  if (table.empty() || (std::size_t{1} << n) != table.size() || n > 8) {
    throw UsageError("--pi must list 2^n values with n <= 8");
  }
  try {
    mmf::MMFunction g(mmf::Permutation(table, n), report::parse_phi_bits(a.phi, n));
    f = mmf::build_mmf(g);
    return g;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_near(const NearArgs& a, Common& c, std::ostream& out) {
  if (a.mode != "count" && a.mode != "list" && a.mode != "realize") throw UsageError("--mode is count|list|realize");
  boolfun::TruthTable f;
  const auto g = read_mmf(a, f);
  const int m = f.variables();
  Json params;
  params["hex"] = f.to_hex();
  params["mode"] = a.mode;
  params["brute"] = a.brute;
  Json j = report::envelope("near", std::move(params));
  if (g) j["function"] = report::to_json(*g);
  std::vector<std::string> lines;

  if (!a.brute && !g) throw UsageError("input is not in MF with respect to X_n; use --brute");
  if (a.brute && m > 8) throw UsageError("--brute is limited to 2n <= 8");
  if (!a.brute && m > 12) throw UsageError("the criterion count is limited to 2n <= 12");

  if (a.parents) {
    if (!g) throw UsageError("--parents needs an MF input");
    if (m > 8) throw UsageError("--parents is limited to 2n <= 8");
    const auto ws = mmf::near_enumerate(*g);
    std::size_t index = 0;
    if (a.witness >= 0) {
      index = static_cast<std::size_t>(a.witness);
    } else {
      while (index < ws.size() && ws[index].L.dim() != 2) ++index;
    }
    if (index >= ws.size()) throw UsageError("no such witness");
    const auto& w = ws[index];
    j["witness_index"] = index;
    j["witness"] = report::to_json(w);
    Json arr = Json::array();
    if (a.brute) {
      for (const auto& p : oracle::parent_scan(mmf::realize_near(*g, w))) arr.push_back(report::to_json(p));
    } else if (w.L.dim() == 2) {
      for (const auto& p : mmf::coincidence_parents(*g, w)) {
        Json pj = report::to_json(p.g);
        pj["H"] = report::to_json(p.H);
        arr.push_back(std::move(pj));
      }
    } else {
      Json pj = report::to_json(*g);
      pj["H"] = report::to_json(w.H);
      arr.push_back(std::move(pj));
    }
    j["parent_count"] = arr.size();
    for (const auto& p : arr) lines.push_back(p.dump());
    j["parents"] = std::move(arr);
  } else if (a.mode == "count") {
    const std::string count =
        a.brute ? std::to_string(oracle::near_brute(f, c.jobs).size()) : mmf::near_count(*g).get_str();
    j["count"] = count;
    lines.push_back(count);
  } else if (a.brute) {
    if (a.mode == "list") throw UsageError("--brute lists realized functions; use --mode realize");
    Json arr = Json::array();
    for (const auto& t : oracle::near_brute(f, c.jobs)) {
      arr.push_back(t.to_hex());
      lines.push_back(t.to_hex());
    }
    j["count"] = arr.size();
    j["realized"] = std::move(arr);
  } else {
    if (m > 8) throw UsageError("listing is limited to 2n <= 8");
    const auto ws = mmf::near_enumerate(*g);
    Json arr = Json::array();
    if (a.mode == "list") {
      for (const auto& w : ws) {
        arr.push_back(report::to_json(w));
        lines.push_back(arr.back().dump());
      }
      j["count"] = arr.size();
      j["witnesses"] = std::move(arr);
    } else {
      std::vector<boolfun::TruthTable> ts;
      for (const auto& w : ws) ts.push_back(mmf::realize_near(*g, w));
      std::sort(ts.begin(), ts.end());
      for (const auto& t : ts) {
        arr.push_back(t.to_hex());
        lines.push_back(t.to_hex());
      }
      j["count"] = arr.size();
      j["realized"] = std::move(arr);
    }
  }
  if (c.format == "json") {
    emit(dump(j), c, out);
  } else {
    std::string s;
    for (const auto& l : lines) s += (c.format == "csv" ? report::csv_field(l) : l) + "\n";
    emit(s, c, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

std::vector<gf2::Word> twisted(int k) {
  std::vector<gf2::Word> s(std::size_t{1} << k);
  for (std::size_t y = 0; y < s.size(); ++y) s[y] = static_cast<gf2::Word>(y) ^ gf2::low_mask(k);
  if (k >= 3) std::swap(s[3], s[4]);
  return s;
}

std::vector<oracle::VerificationOutcome> suite(const std::string& name, int trials, std::uint64_t seed, int jobs) {
  std::vector<oracle::VerificationOutcome> v;
  const auto t = [&](int fallback) { return trials >= 0 ? trials : fallback; };
  if (name == "sums" || name == "all") {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 0; k <= n; ++k) v.push_back(oracle::verify_sum_pi(n, k));
    }
    for (int k = 1; k <= 3; ++k) {
      std::vector<gf2::Word> id(std::size_t{1} << k);
      for (std::size_t y = 0; y < id.size(); ++y) id[y] = static_cast<gf2::Word>(y);
      v.push_back(oracle::verify_sum_phiH(k, id));
      v.push_back(oracle::verify_sum_phiH(k, twisted(k)));
    }
  }
  if (name == "census" || name == "all") {
    v.push_back(oracle::near_mf_census());
    const auto mc = oracle::m_census(4, true, 0, 0, jobs);
    oracle::VerificationOutcome o;
    o.claim = "mean |M(f)| over MF_4 equals 1 + beta(4)/|MF_4|";
    o.fact("mean", to_string(*mc.exact_mean));
    o.fact("formula", to_string(counting::expected_m(4)));
    o.fact("multiple", std::to_string(mc.multiple));
    o.work["functions"] = mc.functions;
    o.passed = *mc.exact_mean == counting::expected_m(4);
    if (!o.passed) o.fail("mean " + to_string(*mc.exact_mean));
    v.push_back(std::move(o));
  }
  if (name == "near" || name == "all") {
    v.push_back(oracle::verify_criterion(2, 0, seed, jobs));
    v.push_back(oracle::verify_criterion(3, t(20), seed, jobs));
    v.push_back(oracle::verify_two_coset_lower(6, t(20) / 4 + 1, seed, jobs));
  }
  if (name == "coincidence" || name == "all") v.push_back(oracle::verify_coincidence(3, t(100), seed, 10));
  if (name == "beta" || name == "all") {
    v.push_back(oracle::verify_beta(4, 0, seed, jobs));
    v.push_back(oracle::verify_beta(6, t(20), seed, jobs));
  }
  return v;
}

int cmd_verify(const std::string& name, int trials, Common& c, std::ostream& out) {
  const std::uint64_t seed = c.resolved_seed();
  const auto outcomes = suite(name, trials, seed, c.jobs);
  Json params;
  params["suite"] = name;
  params["seed"] = seed;
  params["trials"] = trials >= 0 ? Json(trials) : Json("default");
  emit(render_outcomes("verify", std::move(params), outcomes, c), c, out);
  for (const auto& o : outcomes) {
    if (!o.passed) return kExitFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const std::string& kind, int two_n, int trials, Common& c, std::ostream& out) {
  if (trials <= 0) throw UsageError("--trials must be positive");
  if (two_n < 2 || two_n % 2 != 0 || two_n > 10) throw UsageError("--two-n must be even with 2 <= 2n <= 10");
  const std::uint64_t seed = c.resolved_seed();
  oracle::SampleEstimate e;
  ExactRational target;
  std::optional<std::string> minimum;
  if (kind == "near-average") {
    const auto s = oracle::sample_near_average(two_n, trials, seed, c.jobs);
    e = s.estimate;
    minimum = s.minimum.get_str();
    target = counting::near_average(two_n / 2);
  } else {
    if (two_n > 8) throw UsageError("m-size sampling is limited to 2n <= 8");
    e = oracle::m_census(two_n, false, trials, seed, c.jobs).estimate;
    target = counting::expected_m(two_n);
  }
  const double z = e.z_score(target.get_d());
  Json params;
  params["kind"] = kind;
  params["two_n"] = two_n;
  params["trials"] = trials;
  params["seed"] = seed;
  if (c.format == "json") {
    Json j = report::envelope("sample", std::move(params));
    j["estimate"] = report::to_json(e);
    j["target"] = to_string(target);
    j["target_decimal"] = to_decimal(target, 6);
    j["z_score"] = z;
    if (minimum) j["minimum"] = *minimum;
    emit(dump(j), c, out);
  } else if (c.format == "csv") {
    std::ostringstream s;
    s << "kind,two_n,trials,seed,mean,standard_error,target,z_score\n"
      << kind << ',' << two_n << ',' << trials << ',' << seed << ',' << counting::fixed(e.mean, 6) << ','
      << counting::fixed(e.standard_error, 6) << ',' << to_decimal(target, 6) << ',' << counting::fixed(z, 3) << '\n';
    emit(s.str(), c, out);
  } else {
    std::ostringstream s;
    s << kind << " 2n=" << two_n << " trials=" << trials << " seed=" << seed << "\n  mean "
      << counting::fixed(e.mean, 6) << " +- " << counting::fixed(e.standard_error, 6) << "\n  target "
      << to_decimal(target, 6) << "\n  z " << counting::fixed(z, 3) << '\n';
    emit(s.str(), c, out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maiorana-McFarland bent functions and their closest bent functions"};
  app.require_subcommand(1);
  Common common;

  int two_n = 0;
  auto* formulas = app.add_subcommand("formulas", "Evaluate every counting formula at one 2n");
  formulas->add_option("--two-n", two_n, "Number of variables 2n")->required();
  add_common(formulas, common, false);

  int table_id = 0;
  auto* table = app.add_subcommand("table", "Render one of the reference tables");
  table->add_option("--id", table_id, "Table id 1..5")->required();
  add_common(table, common, false);

  NearArgs near_args;
  auto* near = app.add_subcommand("near", "Closest bent functions of one function");
  near->add_option("--pi", near_args.pi, "Permutation as a JSON array");
  near->add_option("--phi", near_args.phi, "phi as a 0/1 string");
  near->add_option("--hex", near_args.hex, "Truth table in hex");
  near->add_option("--mode", near_args.mode, "count | list | realize");
  near->add_flag("--brute", near_args.brute, "Use the brute-force subspace scan");
  near->add_flag("--parents", near_args.parents, "List every MF parent of one witness");
  near->add_option("--witness", near_args.witness, "Witness index for --parents (default: first dim-2)");
  add_common(near, common, false);

  std::string suite_name = "all";
  int verify_trials = -1;
  auto* verify = app.add_subcommand("verify", "Run oracle verification suites");
  verify->add_option("--suite", suite_name, "Suite")
      ->check(CLI::IsMember({"all", "sums", "coincidence", "census", "beta", "near"}));
  verify->add_option("--trials", verify_trials, "Sample size for sampled checks")->check(CLI::NonNegativeNumber);
  add_common(verify, common, true);

  std::string kind = "near-average";
  int sample_two_n = 0;
  int sample_trials = 0;
  auto* sample = app.add_subcommand("sample", "Seeded Monte Carlo estimates");
  sample->add_option("--kind", kind, "near-average | m-size")->check(CLI::IsMember({"near-average", "m-size"}));
  sample->add_option("--two-n", sample_two_n, "Number of variables 2n")->required();
  sample->add_option("--trials", sample_trials, "Number of sampled functions")->required();
  add_common(sample, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*formulas) return cmd_formulas(two_n, common, out);
    if (*table) return cmd_table(table_id, common, out);
    if (*near) return cmd_near(near_args, common, out);
    if (*verify) return cmd_verify(suite_name, verify_trials, common, out);
    if (*sample) return cmd_sample(kind, sample_two_n, sample_trials, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mfnear::cli
