// masc: parse, check, run, emit-ast, translate, eval-ir, verify.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "masc/bundled.hpp"
#include "masc/checker.hpp"
#include "masc/emit_ast.hpp"
#include "masc/eval_ir.hpp"
#include "masc/interp.hpp"
#include "masc/parser.hpp"
#include "masc/translate.hpp"
#include "masc/verify.hpp"

using namespace masc;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string replaceExt(const std::string& path, const std::string& ext) {
  auto dot = path.rfind('.');
  auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ext;
  return path.substr(0, dot) + ext;
}

// "3,-5,7/2" -> numeric values.
std::vector<Value> parseArgs(const std::string& s) {
  std::vector<Value> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto bad = [&] { return UsageError("bad argument literal '" + tok + "'"); };
    if (tok.empty()) throw bad();
    std::string num = tok, den;
    if (auto slash = tok.find('/'); slash != std::string::npos) {
      num = tok.substr(0, slash);
      den = tok.substr(slash + 1);
    }
    auto isInt = [](const std::string& t) {
      if (t.empty()) return false;
      std::size_t i = t[0] == '-' ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!isInt(num) || (!den.empty() && !isInt(den))) throw bad();
    Rational v{Int(num)};
    if (!den.empty()) {
      Int d(den);
      if (d == 0) throw bad();
      v /= Rational(d);
    }
    out.emplace_back(v);
  }
  return out;
}

Program compile(const std::string& path, Diagnostics& diags) {
  Program p = parseProgram(readFile(path), diags);
  if (diags.hasErrors()) return p;
  rewriteBoundedLoops(p, diags);
  if (diags.hasErrors()) return p;
  checkProgram(p, diags);
  return p;
}

int reportDiags(const Diagnostics& diags) {
  std::cerr << diags.str();
  return diags.hasErrors() ? 1 : 0;
}

// Print a result value: tuples space-separated, registers as raw decimals.
std::string renderResult(const Value& v) {
  if (v.isTuple()) {
    std::string out;
    for (std::size_t i = 0; i < v.tuple().items.size(); ++i) {
      if (i) out += " ";
      out += renderResult(v.tuple().items[i]);
    }
    return out;
  }
  if (v.isRegister()) return v.reg().raw.str();
  return v.str();
}

// Pre-convert CLI arguments to the parameter types so that out-of-range
// register inputs warn (truncation matches assignment semantics).
std::vector<Value> convertCliArgs(const FunctionDef& fn,
                                  std::vector<Value> args) {
  if (args.size() != fn.params.size())
    throw UsageError("'" + fn.name + "' expects " +
                     std::to_string(fn.params.size()) + " arguments, got " +
                     std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const TypePtr& t = fn.params[i].type;
    if (!t) continue;
    if (t->kind == Type::K::Array || t->kind == Type::K::Struct)
      throw UsageError("parameter '" + fn.params[i].name +
                       "' is aggregate-typed; not supported on the command "
                       "line");
    if (t->isRegister()) {
      RegisterFormat f = t->regFormat();
      Int raw = convertRaw(args[i].number(), f);
      if (Rational(interpret(raw, f)) != args[i].number())
        std::cerr << "warning: argument " << i + 1 << " truncated to "
                  << t->str() << " (raw " << raw.str() << ")\n";
      args[i] = Value(RawRegister{raw, f});
    }
  }
  return args;
}

int cmdRun(const std::string& path, const std::string& fnName,
           const std::string& argsText, bool strict64, bool trace) {
  Diagnostics diags;
  Program p = compile(path, diags);
  if (diags.hasErrors()) return reportDiags(diags);
  const FunctionDef* fn = p.findFunction(fnName);
  if (!fn) throw UsageError("no function '" + fnName + "' in " + path);
  InterpOptions opts;
  opts.strict64Lint = strict64;
  if (trace) opts.trace = &std::cerr;
  Interp interp(p, opts);
  try {
    Value v = interp.run(fnName, convertCliArgs(*fn, parseArgs(argsText)));
    std::cerr << interp.warnings().str();
    std::cout << renderResult(v) << "\n";
  } catch (const AssertionFailure& e) {
    std::cerr << interp.warnings().str();
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const RuntimeError& e) {
    std::cerr << interp.warnings().str();
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Human-readable rendering of an IR function: the defun, pretty-printed.
std::string renderIRs(const std::vector<FuncIR>& irs) {
  std::vector<SExpr> forms;
  for (const auto& ir : irs) forms.push_back(ir.defun());
  return printSexprFile(forms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MASC modeling-language toolchain"};
  app.require_subcommand(1);

  std::string input, output, fnName, argsText;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  (void)seedGiven;
  bool noMerge = false, strict64 = false, trace = false, quick = false;


  CLI::App* parse = app.add_subcommand("parse", "parse a .masc file");
  parse->add_option("input", input)->required();

  CLI::App* check = app.add_subcommand("check", "parse and statically check");
  check->add_option("input", input)->required();
  check->add_flag("--strict-64bit-lint", strict64,
                  "warn on uint/int values wider than 64 bits");

  CLI::App* runC = app.add_subcommand("run", "execute a function");
  runC->add_option("input", input)->required();
  runC->add_option("--fn", fnName)->required();
  runC->add_option("--args", argsText, "comma-separated integers or p/q");
  runC->add_flag("--strict-64bit-lint", strict64);
  runC->add_flag("--trace", trace, "log calls and results to stderr");

  CLI::App* emit = app.add_subcommand("emit-ast", "write the S-expression AST");
  emit->add_option("input", input)->required();
  emit->add_option("-o,--output", output, "default: <input>.ast.lsp");

  CLI::App* trans = app.add_subcommand("translate", "write the functional IR");
  trans->add_option("input", input)->required();
  trans->add_option("-o,--output", output, "default: <input>.ir.lsp");
  trans->add_flag("--no-merge-lets", noMerge,
                  "one binding per LET, no grouping");

  CLI::App* evalC = app.add_subcommand("eval-ir", "evaluate a .ir.lsp function");
  evalC->add_option("input", input)->required();
  evalC->add_option("--fn", fnName)->required();
  evalC->add_option("--args", argsText);

  CLI::App* verifyC =
      app.add_subcommand("verify", "run the verification harness");
  verifyC->add_option("--seed", seed, "random seed (fallback: MASC_SEED)");
  verifyC->add_flag("--quick", quick, "smaller sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (parse->parsed()) {
      Diagnostics diags;
      parseProgram(readFile(input), diags);
      return reportDiags(diags);
    }
    if (check->parsed()) {
      Diagnostics diags;
      compile(input, diags);
      return reportDiags(diags);
    }
    if (runC->parsed())
      return cmdRun(input, fnName, argsText, strict64, trace);
    if (emit->parsed()) {
      Diagnostics diags;
      Program p = compile(input, diags);
      if (diags.hasErrors()) return reportDiags(diags);
      std::string path = output.empty() ? replaceExt(input, ".ast.lsp") : output;
      writeFile(path, printSexprFile(emitAstSexpr(p).items()));
      std::cerr << diags.str();
      std::cout << path << "\n";
      return 0;
    }
    if (trans->parsed()) {
      Diagnostics diags;
      Program p = compile(input, diags);
      if (diags.hasErrors()) return reportDiags(diags);
      TranslateOptions opts;
      opts.mergeLets = !noMerge;
      auto irs = translate(p, opts);
      std::string path = output.empty() ? replaceExt(input, ".ir.lsp") : output;
      writeFile(path, renderIRs(irs));
      std::cerr << diags.str();
      std::cout << renderIRs(irs);
      return 0;
    }
    if (evalC->parsed()) {
      auto irs = parseFuncIRs(parseSexprFile(readFile(input)));
      try {
        Value v = evalIR(irs, fnName, parseArgs(argsText));
        std::cout << renderResult(v) << "\n";
      } catch (const AssertionFailure& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      return 0;
    }
    if (verifyC->parsed()) {
      seedGiven = verifyC->count("--seed") > 0;
      if (!seedGiven) {
        if (const char* env = std::getenv("MASC_SEED"))
          seed = std::strtoull(env, nullptr, 10);
      }
      VerifyOptions opts;
      opts.seed = seed;
      opts.quick = quick;
      VerifyReport rep = runVerification(opts);
      std::cout << renderReport(rep);
      return rep.allOk() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SExprParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
