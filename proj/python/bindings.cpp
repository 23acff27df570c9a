#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfnear/boolfun.hpp"
#include "mfnear/cli.hpp"
#include "mfnear/counting.hpp"
#include "mfnear/mmf.hpp"
#include "mfnear/oracle.hpp"
#include "mfnear/report.hpp"

namespace py = pybind11;
using namespace mfnear;

namespace {

py::object big(const BigCount& v) { return py::int_(py::str(v.get_str())); }

py::object fraction(const ExactRational& v) {
  return py::module_::import("fractions").attr("Fraction")(big(v.get_num()), big(v.get_den()));
}

mmf::MMFunction make_mmf(const std::vector<gf2::Word>& pi, const std::string& phi) {
  int n = 0;
  while ((std::size_t{1} << n) < pi.size()) ++n;
  return {mmf::Permutation(pi, n), report::parse_phi_bits(phi, n)};
}

py::list cells(const std::vector<counting::CountReport>& rs) {
  py::list out;
  for (const auto& r : rs) {
    py::dict d;
    d["two_n"] = r.two_n;
    d["column"] = r.column;
    d["text"] = r.text;
    d["exact"] = r.exact ? fraction(*r.exact) : py::none();
    d["log2"] = r.log2 ? py::cast(*r.log2) : py::none();
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maiorana-McFarland bent functions and their closest bent functions";

  m.def("sigma", [](int n, int k) { return fraction(counting::sigma(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("near_average", [](int n) { return fraction(counting::near_average(n)); }, py::arg("n"));
  m.def("mf_size", [](int n) { return big(counting::mf_size(n)); }, py::arg("n"));
  m.def("near_mf_size", [](int n) { return big(counting::near_mf_size(n)); }, py::arg("n"));
  m.def("mfsp_size", [](int n) { return big(counting::mfsp_size(n)); }, py::arg("n"));
  m.def("beta", [](int two_n) { return big(counting::beta(two_n)); }, py::arg("two_n"));
  m.def("expected_m", [](int two_n) { return fraction(counting::expected_m(two_n)); }, py::arg("two_n"));
  m.def("table", [](int id) { return cells(counting::table(id)); }, py::arg("id"));
  m.def("formulas", [](int two_n) { return cells(counting::formulas(two_n)); }, py::arg("two_n"));

  m.def("build_mmf", [](const std::vector<gf2::Word>& pi, const std::string& phi) {
    return mmf::build_mmf(make_mmf(pi, phi)).to_hex();
  }, py::arg("pi"), py::arg("phi"));
  m.def("is_bent", [](const std::string& hex) { return boolfun::is_bent(boolfun::TruthTable::from_hex(hex)); },
        py::arg("hex"));
  m.def("near_count", [](const std::vector<gf2::Word>& pi, const std::string& phi) {
    return big(mmf::near_count(make_mmf(pi, phi)));
  }, py::arg("pi"), py::arg("phi"));
  m.def("near_realize", [](const std::vector<gf2::Word>& pi, const std::string& phi) {
    const auto g = make_mmf(pi, phi);
    std::vector<std::string> out;
    for (const auto& w : mmf::near_enumerate(g)) out.push_back(mmf::realize_near(g, w).to_hex());
    std::sort(out.begin(), out.end());
    return out;
  }, py::arg("pi"), py::arg("phi"));
  m.def("near_brute", [](const std::string& hex, int jobs) {
    std::vector<std::string> out;
    py::gil_scoped_release release;
    for (const auto& t : oracle::near_brute(boolfun::TruthTable::from_hex(hex), jobs)) out.push_back(t.to_hex());
    std::sort(out.begin(), out.end());
    return out;
  }, py::arg("hex"), py::arg("jobs") = 1);

  m.def("run", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"mfnear"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");

  m.attr("SCHEMA_VERSION") = report::kSchemaVersion;
}
