#include <pybind11/pybind11.h>
#include <pybind11/iostream.h>
#include <pybind11/stl.h>

#include "ssn/cli.hpp"
#include "ssn/error.hpp"
#include "ssn/io.hpp"
#include "ssn/scenery.hpp"

namespace py = pybind11;
using namespace ssn;

namespace {

py::dict pisot(const std::string& value) {
  AlgebraicNumber a = value.find('x') != std::string::npos
                          ? AlgebraicNumber::largest_real_root(primitive_part(parse_polynomial(value)))
                          : parse_exact(value).to_algebraic();
  const PisotReport r = pisot_report(a);
  std::vector<double> moduli;
  for (const auto& m : r.conjugate_moduli) moduli.push_back(m.mid());
  py::dict d;
  d["pisot"] = r.pisot;
  d["reason"] = r.reason;
  d["minimal_polynomial"] = to_string(a.min_poly());
  d["conjugate_moduli"] = moduli;
  return d;
}

py::dict expand(const std::string& beta, const std::string& x, std::size_t n) {
  const BetaBase b = BetaBase::parse(beta);
  const OrbitRecord r = beta_orbit(b, RealPoint::of(parse_exact(x)), n);
  py::dict d;
  d["digits"] = r.digits;
  d["exact"] = r.exact;
  d["precision_used"] = r.precision_used;
  return d;
}

py::dict parry(const std::string& beta) {
  const ParryDensity p = parry_density(BetaBase::parse(beta));
  py::dict d;
  d["breakpoints"] = p.breakpoints;
  d["values"] = p.values;
  d["exact"] = p.exact;
  d["orbit_kind"] = p.orbit_kind;
  d["tail_bound"] = p.tail_bound;
  return d;
}

std::vector<double> sample(const std::string& ifs_json, std::size_t n, int depth, std::uint64_t seed) {
  return sample_measure(ifs_from_json(json::parse(ifs_json)), n, depth, seed).points;
}

std::vector<double> disintegration(const std::string& ifs_json, std::size_t n, int depth, std::uint64_t seed) {
  const Model m = build_model(ifs_from_json(json::parse(ifs_json)));
  return sample_disintegration(m, n, depth, seed);
}

std::string model(const std::string& ifs_json) {
  return model_to_json(build_model(ifs_from_json(json::parse(ifs_json)))).dump();
}

py::dict chain(const std::string& ifs_json) {
  const ExtendedChain c = build_extended_chain(build_model(ifs_from_json(json::parse(ifs_json))));
  py::dict d;
  d["states"] = c.size();
  d["stationary_exact"] = c.stationary_exact();
  d["a_marginal"] = c.a_marginal(0).get_d();
  d["diameter"] = c.diameter;
  d["expected_roof"] = c.expected_roof;
  return d;
}

std::string spectrum(const std::string& ifs_json, const std::string& beta, int bound) {
  const Model m = build_model(ifs_from_json(json::parse(ifs_json)));
  return spectrum_obstruction(m, BetaBase::parse(beta), bound).to_string();
}

int cli(const std::vector<std::string>& args) {
  py::scoped_ostream_redirect guard;
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace

PYBIND11_MODULE(_ssnormal, mod) {
  mod.doc() = "pointwise normality of self-similar measures";
  mod.attr("__version__") = kVersion;

  static py::exception<Error> exc(mod, "SsnError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  mod.def("pisot", &pisot, py::arg("value"));
  mod.def("expand", &expand, py::arg("beta"), py::arg("x"), py::arg("n"));
  mod.def("parry", &parry, py::arg("beta"));
  mod.def("sample", &sample, py::arg("ifs_json"), py::arg("n"), py::arg("depth"), py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());
  mod.def("disintegration", &disintegration, py::arg("ifs_json"), py::arg("n"), py::arg("depth"), py::arg("seed") = 1,
          py::call_guard<py::gil_scoped_release>());
  mod.def("model", &model, py::arg("ifs_json"));
  mod.def("chain", &chain, py::arg("ifs_json"));
  mod.def("spectrum", &spectrum, py::arg("ifs_json"), py::arg("beta"), py::arg("search_bound") = 64);
  mod.def("cli", &cli, py::arg("args"));
}
