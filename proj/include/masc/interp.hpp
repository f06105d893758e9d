// Reference operational semantics: exact arithmetic with
// truncation-on-assignment.
#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

#include "masc/ast.hpp"
#include "masc/diagnostics.hpp"
#include "masc/value.hpp"

namespace masc {

struct AssertionFailure : std::runtime_error {
  std::string function;
  SrcLoc loc;
  AssertionFailure(std::string fn, SrcLoc loc)
      : std::runtime_error("assertion failed in " + fn),
        function(std::move(fn)),
        loc(loc) {}
};

struct RuntimeError : std::runtime_error {
  SrcLoc loc;
  RuntimeError(const std::string& msg, SrcLoc loc)
      : std::runtime_error(msg), loc(loc) {}
};

struct InterpOptions {
  // warn when a uint/int value exceeds 64 bits
  bool strict64Lint = false;
  // log every function call and result
  std::ostream* trace = nullptr;
};

class Interp {
 public:
  explicit Interp(const Program& p, InterpOptions opts = {});

  // Execute fn on the given arguments (converted to the parameter formats);
  // returns the value, or a TupleValue for multiple-value functions.
  Value run(const std::string& fn, const std::vector<Value>& args);

  // Warnings accumulated across runs (lint, array bounds).
  const Diagnostics& warnings() const { return warnings_; }

 private:
  struct Env;

  Value callFunction(const FunctionDef& fn, std::vector<Value> args,
                     int depth);
  Value evalExpr(const Expr& e, Env& env);
  Int evalRaw(const Expr& e, Env& env);
  enum class Flow { Normal, Returned, Broke };
  Flow execStmt(const Stmt& s, Env& env);
  void assignTo(const Expr& lhs, Value v, Env& env);
  void assignAggregate(const Expr& path, Value v, Env& env);
  Value convertValue(Value v, const TypePtr& t, SrcLoc loc);

  const Program& prog_;
  InterpOptions opts_;
  Diagnostics warnings_;
  std::map<std::string, const FunctionDef*> functions_;
  std::map<std::string, Value> constants_;
  const FunctionDef* curFn_ = nullptr;
  Value result_;
};

// Convenience wrapper: check is assumed done; runs fn once.
Value run(const Program& p, const std::string& fn,
          const std::vector<Value>& args, InterpOptions opts = {});

}  // namespace masc
