#include "mfnear/report.hpp"

#include <sstream>
#include <stdexcept>

namespace mfnear::report {

Json envelope(const std::string& command, Json parameters) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  return j;
}

Json to_json(const counting::CountReport& r) {
  Json j;
  j["table"] = r.table;
  j["two_n"] = r.two_n;
  j["column"] = r.column;
  j["text"] = r.text;
  j["exact"] = r.exact ? Json(to_string(*r.exact)) : Json(nullptr);
  if (r.log2) {
    j["log2"] = *r.log2;
    j["log2_text"] = counting::fixed(*r.log2, 6);
  } else {
    j["log2"] = nullptr;
  }
  return j;
}

Json to_json(const oracle::VerificationOutcome& v, bool timings) {
  Json j;
  j["claim"] = v.claim;
  j["passed"] = v.passed;
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  Json facts = Json::object();
  for (const auto& [k, val] : v.facts) facts[k] = val;
  j["facts"] = std::move(facts);
  Json work = Json::object();
  for (const auto& [k, val] : v.work) work[k] = val;
  j["work"] = std::move(work);
  if (timings) j["seconds"] = v.seconds;
  return j;
}

Json to_json(const oracle::SampleEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["standard_error"] = e.standard_error;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  return j;
}

Json to_json(const gf2::AffineSubspace& u) {
  Json j;
  j["base"] = u.base().to_string();
  Json rows = Json::array();
  for (gf2::Word r : u.direction().rows()) rows.push_back(gf2::BitVector(r, u.ambient()).to_string());
  j["basis"] = std::move(rows);
  return j;
}

Json to_json(const gf2::AffineMap& h) {
  Json j;
  Json rows = Json::array();
  for (const auto& r : h.matrix().rows()) rows.push_back(r.to_string());
  j["matrix"] = std::move(rows);
  j["constant"] = h.constant().to_string();
  return j;
}

Json to_json(const mmf::NearBentWitness& w) {
  Json j;
  j["L"] = to_json(w.L);
  j["H"] = to_json(w.H);
  j["I"] = w.I.indices();
  j["U"] = to_json(w.U);
  return j;
}

Json to_json(const mmf::MMFunction& g) {
  Json j;
  j["pi"] = g.pi.table();
  j["phi"] = phi_bits(g.phi);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const std::vector<counting::CountReport>& cells) {
  std::ostringstream s;
  s << "table,two_n,column,text,exact,log2\n";
  for (const auto& r : cells) {
    s << csv_field(r.table) << ',' << r.two_n << ',' << csv_field(r.column) << ',' << csv_field(r.text) << ','
      << (r.exact ? to_string(*r.exact) : std::string()) << ','
      << (r.log2 ? counting::fixed(*r.log2, 6) : std::string()) << '\n';
  }
  return s.str();
}

std::string to_text(const std::vector<counting::CountReport>& cells) {
  std::ostringstream s;
  for (const auto& r : cells) s << "2n=" << r.two_n << ' ' << r.column << ' ' << r.text << '\n';
  return s.str();
}

std::string to_text(const oracle::VerificationOutcome& v, bool timings) {
  std::ostringstream s;
  s << (v.passed ? "PASS " : "FAIL ") << v.claim;
  if (timings) s << " (" << counting::fixed(v.seconds, 3) << " s)";
  s << '\n';
  for (const auto& [k, val] : v.facts) s << "  " << k << " = " << val << '\n';
  if (v.witness) s << "  witness: " << *v.witness << '\n';
  return s.str();
}

std::string phi_bits(const boolfun::TruthTable& phi) {
  std::string s;
  for (std::uint64_t y = 0; y < phi.size(); ++y) s += phi(static_cast<gf2::Word>(y)) ? '1' : '0';
  return s;
}

boolfun::TruthTable parse_phi_bits(const std::string& bits, int n) {
  if (bits.size() != (std::size_t{1} << n)) throw std::invalid_argument("phi needs 2^n bits");
  boolfun::TruthTable t(n);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("phi must be a string of 0 and 1");
    t.set(static_cast<gf2::Word>(i), bits[i] == '1');
  }
  return t;
}

}  // namespace mfnear::report
