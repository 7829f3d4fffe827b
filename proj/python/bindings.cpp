#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cgm/cli.hpp"
#include "cgm/error.hpp"
#include "cgm/metalang.hpp"
#include "cgm/registry.hpp"

namespace py = pybind11;

namespace {

py::dict report_dict(const cgm::LawReport& r) {
  py::dict d;
  d["subject"] = r.subject;
  d["ok"] = r.ok();
  d["checks"] = r.checks_run;
  d["checked"] = r.checked;
  d["failed"] = r.failed;
  py::list failures;
  for (const auto& f : r.failures) {
    py::dict w;
    w["law"] = f.law;
    w["indices"] = f.indices;
    w["input"] = f.input;
    w["lhs"] = f.lhs;
    w["rhs"] = f.rhs;
    failures.append(w);
  }
  d["failures"] = failures;
  d["text"] = r.to_text();
  return d;
}

}  // namespace

PYBIND11_MODULE(_cgm, m) {
  m.doc() = "Category-graded monads: law suites, graded programs and aHL derivations";

  static PyObject* error_type = py::exception<cgm::Error>(m, "CgmError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cgm::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      exc.attr("code") = std::string(cgm::error_name(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("instance_names", &cgm::instance_names);
  m.def("laws", [](const std::string& name, std::size_t samples, std::uint64_t seed) {
    return report_dict(cgm::instance_laws(name, samples, seed));
  }, py::arg("instance"), py::arg("samples") = 200, py::arg("seed") = 0);
  m.def("roundtrip", [](int states, std::size_t samples, std::uint64_t seed) {
    return report_dict(cgm::roundtrip_report(states, samples, seed));
  }, py::arg("states"), py::arg("samples") = 200, py::arg("seed") = 0);
  m.def("translate", [](const std::string& from, const std::string& to, const std::string& instance,
                        std::size_t samples, std::uint64_t seed, int states) {
    return report_dict(cgm::translate_report(from, to, instance, samples, seed, states));
  }, py::arg("source"), py::arg("target"), py::arg("instance"), py::arg("samples") = 200, py::arg("seed") = 0,
     py::arg("states") = 2);

  m.def("run_program", [](const std::string& text) {
    auto r = cgm::run_program(cgm::parse_program(text));
    py::dict d;
    d["grade"] = r.type.index.describe();
    d["shape"] = r.type.shape;
    d["payload"] = r.computation.payload.to_string();
    d["rendered"] = r.rendered;
    return d;
  }, py::arg("source"));
  m.def("format_program", [](const std::string& text) { return cgm::print_program(cgm::parse_program(text)); },
        py::arg("source"));

  m.def("check_ahl", [](const std::string& text) {
    auto v = cgm::check_ahl(cgm::parse_ahl(text));
    py::dict d;
    d["valid"] = v.valid;
    d["error"] = v.error ? py::object(py::str(std::string(cgm::error_name(*v.error)))) : py::object(py::none());
    d["message"] = v.message;
    py::list nodes;
    for (const auto& n : v.nodes) {
      py::dict x;
      x["rule"] = n.rule;
      x["line"] = n.line;
      x["depth"] = n.depth;
      x["pre"] = n.pre;
      x["post"] = n.post;
      x["bound"] = cgm::rational_to_string(n.beta);
      x["failure"] = cgm::rational_to_string(n.failure);
      x["ok"] = n.ok;
      nodes.append(x);
    }
    d["nodes"] = nodes;
    d["text"] = v.to_text();
    return d;
  }, py::arg("source"));

  m.def("cli", [](const std::vector<std::string>& args) {
    auto r = cgm::run_cli(args);
    return py::make_tuple(r.exit_code, r.out, r.err);
  }, py::arg("args"));
}
