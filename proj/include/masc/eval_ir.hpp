// Strict evaluator for the functional IR, used to differentially test the
// translation against the reference interpreter.
#pragma once

#include <string>
#include <vector>

#include "masc/interp.hpp"  // AssertionFailure, RuntimeError
#include "masc/translate.hpp"
#include "masc/value.hpp"

namespace masc {

struct MeasureViolation {
  std::string fn;
  std::string detail;
};

struct EvalIROptions {
  // Check that every recursive call strictly decreases the measure and
  // that the measure is a nonnegative integer; failures are recorded in
  // `violations` (evaluation continues).
  std::vector<MeasureViolation>* violations = nullptr;
};

class IREvaluator {
 public:
  explicit IREvaluator(std::vector<FuncIR> defs, EvalIROptions opts = {});

  Value call(const std::string& fn, const std::vector<Value>& args);

 private:
  struct Env;
  struct TailCall;

  const FuncIR* find(const std::string& name) const;
  Value invoke(const FuncIR& fn, std::vector<Value> args,
               const Int* parentMeasure, int depth);
  Value eval(const SExpr& t, Env& env, const FuncIR& fn,
             const Int* measureHere, int depth, TailCall* tail);

  std::vector<FuncIR> defs_;
  EvalIROptions opts_;
  long long steps_ = 0;
};

// One-shot convenience wrapper.
Value evalIR(const std::vector<FuncIR>& defs, const std::string& fn,
             const std::vector<Value>& args, EvalIROptions opts = {});

}  // namespace masc
