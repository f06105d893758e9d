// Python bindings: compile/run MASC source, emit the S-expression AST,
// translate to the functional IR, evaluate IR, and run the verification
// harness.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "masc/bundled.hpp"
#include "masc/checker.hpp"
#include "masc/emit_ast.hpp"
#include "masc/eval_ir.hpp"
#include "masc/interp.hpp"
#include "masc/parser.hpp"
#include "masc/translate.hpp"
#include "masc/verify.hpp"

namespace py = pybind11;
using namespace masc;

namespace {

Program compileSource(const std::string& source) {
  Diagnostics diags;
  Program p = parseProgram(source, diags);
  if (!diags.hasErrors()) rewriteBoundedLoops(p, diags);
  if (!diags.hasErrors()) checkProgram(p, diags);
  if (diags.hasErrors()) throw py::value_error(diags.str());
  return p;
}

py::int_ pyInt(const Int& n) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(n.str().c_str(), nullptr, 10));
}

py::object pyValue(const Value& v) {
  if (v.isRegister()) return pyInt(v.reg().raw);
  if (v.isNumber()) {
    const Rational& r = v.number();
    if (v.isIntegral()) return pyInt(v.integer());
    py::object fraction =
        py::module_::import("fractions").attr("Fraction");
    return fraction(pyInt(numerator(r)), pyInt(denominator(r)));
  }
  if (v.isArray()) {
    py::dict d;
    for (const auto& [i, e] : v.array().entries()) d[pyInt(i)] = pyValue(e);
    return d;
  }
  py::tuple t(v.tuple().items.size());
  for (std::size_t i = 0; i < v.tuple().items.size(); ++i)
    t[i] = pyValue(v.tuple().items[i]);
  return t;
}

Value cppValue(const py::handle& obj) {
  if (py::isinstance<py::int_>(obj))
    return Value(Int(py::cast<std::string>(py::str(obj))));
  if (py::isinstance<py::dict>(obj)) {
    ArrayValue a;
    for (auto item : py::cast<py::dict>(obj))
      a.setInPlace(Int(py::cast<std::string>(py::str(item.first))),
                   cppValue(item.second));
    return Value(std::move(a));
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    ArrayValue a;
    Int i = 0;
    for (auto item : py::cast<py::sequence>(obj)) {
      a.setInPlace(i, cppValue(item));
      ++i;
    }
    return Value(std::move(a));
  }
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    Int num(py::cast<std::string>(py::str(obj.attr("numerator"))));
    Int den(py::cast<std::string>(py::str(obj.attr("denominator"))));
    return Value(Rational(num) / Rational(den));
  }
  throw py::type_error("arguments must be int, Fraction, or list/dict");
}

std::vector<Value> cppArgs(const py::sequence& args) {
  std::vector<Value> out;
  for (auto a : args) out.push_back(cppValue(a));
  return out;
}

}  // namespace

PYBIND11_MODULE(_masc, m) {
  m.doc() = "MASC modeling-language toolchain";

  py::register_exception<AssertionFailure>(m, "MascAssertionError");

  m.def("check", [](const std::string& source) { compileSource(source); },
        py::arg("source"),
        "Parse, rewrite bounded loops, and statically check MASC source; "
        "raises ValueError with diagnostics on error.");

  m.def(
      "run",
      [](const std::string& source, const std::string& fn,
         const py::sequence& args) {
        Program p = compileSource(source);
        return pyValue(run(p, fn, cppArgs(args)));
      },
      py::arg("source"), py::arg("fn"), py::arg("args") = py::tuple(),
      "Execute a function under the exact-arithmetic reference semantics. "
      "Register-typed results are returned as raw integer values.");

  m.def(
      "emit_ast",
      [](const std::string& source) {
        Program p = compileSource(source);
        return printSexprFile(emitAstSexpr(p).items());
      },
      py::arg("source"), "S-expression AST of every function, as text.");

  m.def(
      "translate",
      [](const std::string& source, bool merge_lets) {
        Program p = compileSource(source);
        TranslateOptions opts;
        opts.mergeLets = merge_lets;
        std::vector<SExpr> forms;
        for (const auto& ir : translate(p, opts)) forms.push_back(ir.defun());
        return printSexprFile(forms);
      },
      py::arg("source"), py::arg("merge_lets") = true,
      "Functional IR (DEFUN forms) of every function, as text.");

  m.def(
      "eval_ir",
      [](const std::string& ir_text, const std::string& fn,
         const py::sequence& args) {
        auto irs = parseFuncIRs(parseSexprFile(ir_text));
        return pyValue(evalIR(irs, fn, cppArgs(args)));
      },
      py::arg("ir_text"), py::arg("fn"), py::arg("args") = py::tuple(),
      "Evaluate a function from rendered DEFUN forms.");

  m.def(
      "verify",
      [](std::uint64_t seed, bool quick) {
        VerifyOptions opts;
        opts.seed = seed;
        opts.quick = quick;
        VerifyReport rep = runVerification(opts);
        py::list rows;
        for (const auto& c : rep.checks)
          rows.append(py::make_tuple(c.name, c.ok, c.detail));
        return rows;
      },
      py::arg("seed") = 0, py::arg("quick") = true,
      "Run the verification harness; returns (name, ok, detail) rows.");

  m.def("bundled_names", [] {
    py::list names;
    for (const auto& b : bundledPrograms()) names.append(b.name);
    return names;
  });
  m.def(
      "bundled_source",
      [](const std::string& name) {
        const std::string* src = bundledSource(name);
        if (!src) throw py::key_error("no bundled program '" + name + "'");
        return *src;
      },
      py::arg("name"), "Source text of a bundled example program.");
}
