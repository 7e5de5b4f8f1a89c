#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "eqmix/bounds.hpp"
#include "eqmix/cli.hpp"
#include "eqmix/codes.hpp"
#include "eqmix/io.hpp"

namespace py = pybind11;
using namespace eqmix;

namespace {

std::vector<Element> elements(const GroupSpec& g, const std::vector<std::vector<int>>& coords) {
  std::vector<Element> out;
  for (const auto& c : coords) out.emplace_back(g, c);
  return out;
}

Subgroup make_subgroup(const GroupSpec& g, const std::vector<std::vector<int>>& gens) {
  const auto e = elements(g, gens);
  return subgroup_generate(g, e);
}

std::string report_json(const BoundReport& r) { return to_json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mixing bounds for random walks on groups, codes and regular graphs";

  py::register_exception<SoundnessViolation>(m, "SoundnessViolation", PyExc_RuntimeError);

  py::class_<GroupSpec>(m, "GroupSpec")
      .def(py::init<std::vector<int>>(), py::arg("moduli"))
      .def_static("parse", [](const std::string& s) { return GroupSpec::parse(s); })
      .def_property_readonly("moduli", &GroupSpec::moduli)
      .def_property_readonly("order", &GroupSpec::order)
      .def("encode", [](const GroupSpec& g, const std::vector<int>& c) { return g.encode(c); })
      .def("decode", &GroupSpec::decode)
      .def("character", &GroupSpec::character, py::arg("chi"), py::arg("x"))
      .def("__repr__", &GroupSpec::to_string);

  m.def(
      "fourier",
      [](const GroupSpec& g, std::vector<double> f) { return fourier_fast(GroupFunction(g, std::move(f))).values; },
      py::arg("group"), py::arg("values"), "f^(chi) = (1/|G|) sum_g f(g) conj(chi(g)), indexed by character.");
  m.def(
      "convolve",
      [](const GroupSpec& g, std::vector<double> f, std::vector<double> h) {
        return convolve(GroupFunction(g, std::move(f)), GroupFunction(g, std::move(h))).values;
      },
      py::arg("group"), py::arg("f"), py::arg("h"));
  m.def(
      "subgroup",
      [](const GroupSpec& g, const std::vector<std::vector<int>>& gens) { return make_subgroup(g, gens).members(); },
      py::arg("group"), py::arg("generators"), "Flat indices of the subgroup generated by `generators`.");
  m.def(
      "annihilator",
      [](const GroupSpec& g, const std::vector<std::vector<int>>& gens) {
        std::vector<std::size_t> out;
        for (const auto& chi : annihilator(make_subgroup(g, gens))) out.push_back(chi.flat_index());
        return out;
      },
      py::arg("group"), py::arg("generators"));
  m.def(
      "poisson_check",
      [](const GroupSpec& g, std::vector<double> f, const std::vector<std::vector<int>>& gens) {
        return poisson_check(GroupFunction(g, std::move(f)), make_subgroup(g, gens));
      },
      py::arg("group"), py::arg("values"), py::arg("generators"));
  m.def(
      "noise",
      [](const GroupSpec& g, const std::string& spec) { return parse_noise_spec(spec, g).values(); },
      py::arg("group"), py::arg("spec"));

  m.def(
      "dual_weight_enumerator",
      [](const std::vector<std::vector<int>>& rows, int q) {
        return weight_enumerator(dual(code_from_generator(rows, q))).coefficients;
      },
      py::arg("generator"), py::arg("q") = 2);
  m.def(
      "bound_group",
      [](const GroupSpec& g, const std::vector<std::vector<int>>& gens, std::vector<double> f, int ell) {
        return bound_group(make_subgroup(g, gens), Element::zero(g),
                           Distribution::normalized(GroupFunction(g, std::move(f)), 1e-9), ell);
      },
      py::arg("group"), py::arg("generators"), py::arg("noise"), py::arg("ell"));
  m.def(
      "bound_code",
      [](const std::vector<std::vector<int>>& rows, double p, int ell, const std::string& mode) {
        const LinearCode c = code_from_generator(rows, 2);
        const Distribution f = parse_noise_spec("bernoulli:p=" + format_number(p), code_group(c));
        return bound_code(c, f, ell,
                          mode == "literal" ? CodeNormalization::literal : CodeNormalization::canonical);
      },
      py::arg("generator"), py::arg("p"), py::arg("ell"), py::arg("mode") = "canonical");
  m.def(
      "group_spectrum",
      [](const GroupSpec& g, std::vector<double> f) {
        return group_walk_spectrum(Distribution::normalized(GroupFunction(g, std::move(f)), 1e-9)).eigenvalues;
      },
      py::arg("group"), py::arg("noise"), "Eigenvalues |G| f^(chi), indexed by character.");

  m.def(
      "coarsest_equitable_refinement",
      [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<std::size_t>>& blocks) {
        DenseMatrix m(a.size(), a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i].at(j);
        return coarsest_equitable_refinement(m, Partition(a.size(), blocks)).blocks();
      },
      py::arg("matrix"), py::arg("blocks"));
  m.def(
      "audit_group",
      [](const GroupSpec& g, const std::vector<std::vector<int>>& gens, std::vector<int> coset, std::vector<double> f,
         int ell_max) {
        AuditOptions o;
        o.ell_max = ell_max;
        GroupInstance in{make_subgroup(g, gens), Element(g, coset),
                         Distribution::normalized(GroupFunction(g, std::move(f)), 1e-9)};
        return report_json(soundness_audit(in, o));
      },
      py::arg("group"), py::arg("generators"), py::arg("coset"), py::arg("noise"), py::arg("ell_max") = 10,
      "Run the soundness audit; returns the report as a JSON string.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"eqmix"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
