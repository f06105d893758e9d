#include "masc/verify.hpp"

#include <cctype>
#include <functional>
#include <random>
#include <sstream>

#include "masc/booth.hpp"
#include "masc/bundled.hpp"
#include "masc/eval_ir.hpp"
#include "masc/interp.hpp"
#include "masc/translate.hpp"

namespace masc {

namespace {

Value uiArg(const Int& raw, std::int64_t n) {
  return Value(RawRegister{raw, {RegKind::UI, n, n}});
}

ArrayValue smallIntArray(std::mt19937_64& rng, int len) {
  ArrayValue a;
  for (int i = 0; i < len; ++i)
    a.setInPlace(Int(i), Value(Int(std::int64_t(rng() % 201)) - 100));
  return a;
}

// One differential case: run the interpreter and the translated IR on the
// same inputs and require identical results (or identical assertion
// failures). Registers go to the interpreter as raws in their format and to
// the IR as plain integers.
struct DiffCase {
  std::vector<Value> interpArgs;
  std::vector<Value> irArgs;
};

struct DiffSpec {
  std::string program;  // bundled name
  std::string fn;       // source-level function
  std::function<DiffCase(std::mt19937_64&)> gen;
};

bool runDiff(const DiffSpec& spec, std::uint64_t seed, int count,
             std::string& detail) {
  Program p = loadBundled(spec.program);
  auto irs = translate(p);
  std::string irName;
  for (char c : spec.fn) irName.push_back(char(std::toupper(c)));
  std::mt19937_64 rng(seed ^ std::hash<std::string>{}(spec.fn));
  for (int t = 0; t < count; ++t) {
    DiffCase c = spec.gen(rng);
    Value a, b;
    bool aThrew = false, bThrew = false;
    try {
      a = run(p, spec.fn, c.interpArgs);
    } catch (const AssertionFailure&) {
      aThrew = true;
    }
    try {
      b = evalIR(irs, irName, c.irArgs);
    } catch (const AssertionFailure&) {
      bThrew = true;
    }
    bool ok = (aThrew == bThrew) && (aThrew || sameDenotation(a, b));
    if (!ok) {
      std::ostringstream os;
      os << "mismatch on case " << t << ": ";
      for (const auto& v : c.irArgs) os << v.str() << " ";
      os << "-> interpreter "
         << (aThrew ? std::string("assert") : a.str()) << ", IR "
         << (bThrew ? std::string("assert") : b.str());
      detail = os.str();
      return false;
    }
  }
  detail = std::to_string(count) + " cases";
  return true;
}

}  // namespace

VerifyReport runVerification(const VerifyOptions& opts) {
  VerifyReport rep;
  auto add = [&](const std::string& name, bool ok, std::string detail) {
    rep.checks.push_back({name, ok, std::move(detail)});
  };

  int diffN = opts.quick ? 100 : 1000;

  std::vector<DiffSpec> diffs;
  diffs.push_back({"divide", "Divide", [](std::mt19937_64& rng) {
                     // n = 0 cases exercise assertion parity
                     Int m = Int(rng() % 5000), n = Int(rng() % 40);
                     return DiffCase{{Value(m), Value(n)}, {Value(m), Value(n)}};
                   }});
  diffs.push_back({"sum8", "Sum8", [](std::mt19937_64& rng) {
                     ArrayValue a = smallIntArray(rng, 8);
                     ArrayValue b = smallIntArray(rng, 8);
                     return DiffCase{{Value(a), Value(b)}, {Value(a), Value(b)}};
                   }});
  diffs.push_back({"foo", "foo", [](std::mt19937_64& rng) {
                     std::vector<Value> v{Value(Int(rng() % 100)),
                                          Value(Int(rng() % 100)),
                                          Value(Int(rng() % 100))};
                     return DiffCase{v, v};
                   }});
  diffs.push_back({"baz", "baz", [](std::mt19937_64& rng) {
                     std::vector<Value> v{Value(Int(rng() % 20)),
                                          Value(Int(rng() % 20)),
                                          Value(Int(rng() % 20))};
                     return DiffCase{v, v};
                   }});
  diffs.push_back({"sf8i2", "Block", [](std::mt19937_64&) {
                     return DiffCase{{}, {}};
                   }});
  diffs.push_back({"imul", "Imul", [](std::mt19937_64& rng) {
                     Int a = Int(rng() % (std::uint64_t(1) << 32));
                     Int b = Int(rng() % (std::uint64_t(1) << 32));
                     return DiffCase{{uiArg(a, 32), uiArg(b, 32)},
                                     {Value(a), Value(b)}};
                   }});

  for (const auto& d : diffs) {
    int n = d.program == "sf8i2" ? 1 : (d.program == "imul" && opts.quick ? 25 : diffN);
    std::string detail;
    bool ok = runDiff(d, opts.seed, n, detail);
    add("differential " + d.program + "/" + d.fn, ok, detail);
  }

  // Booth product identities over the exhaustive small grid.
  {
    bool okA = true, okB = true;
    std::string exA = "exhaustive n in 2..5, m in 1..3", exB = exA;
    for (std::int64_t n = 2; n <= 5; ++n)
      for (std::int64_t m = 1; m <= 3; ++m)
        for (Int x = 0; x < pow2(n - 1); ++x)
          for (Int y = 0; y < pow2(2 * m - 1); ++y) {
            if (okA &&
                pow2(n) + booth::sumPP4(x, y, m, n) != pow2(n + 2 * m) + x * y) {
              okA = false;
              exA = "fails at n=" + std::to_string(n) + " m=" +
                    std::to_string(m) + " x=" + x.str() + " y=" + y.str();
            }
            if (okB &&
                bits(booth::sumPP4p(x, y, m, n), n + 2 * m - 1, 0) != x * y) {
              okB = false;
              exB = "fails at n=" + std::to_string(n) + " m=" +
                    std::to_string(m) + " x=" + x.str() + " y=" + y.str();
            }
          }
    add("booth identity 2^n + S = 2^(n+2m) + xy", okA, exA);
    add("booth identity bits(S', n+2m-1, 0) = xy", okB, exB);
  }

  // Multiplier end to end: interpreter result equals the exact product.
  {
    Program p = loadBundled("imul");
    std::mt19937_64 rng(opts.seed);
    int n = opts.quick ? 200 : 2000;
    bool ok = true;
    std::string detail = std::to_string(n) + " random pairs + edge set";
    std::vector<Int> edges = {Int(0), Int(1), Int(2), pow2(31) - 1, pow2(31),
                              pow2(32) - 1};
    std::vector<std::pair<Int, Int>> cases;
    for (const Int& a : edges)
      for (const Int& b : edges) cases.emplace_back(a, b);
    for (int t = 0; t < n; ++t)
      cases.emplace_back(Int(rng() % (std::uint64_t(1) << 32)),
                         Int(rng() % (std::uint64_t(1) << 32)));
    for (const auto& [a, b] : cases) {
      Value v = run(p, "Imul", {uiArg(a, 32), uiArg(b, 32)});
      Int got = v.isRegister() ? v.reg().raw : v.integer();
      if (got != a * b) {
        ok = false;
        detail = "Imul(" + a.str() + ", " + b.str() + ") = " + got.str() +
                 " != " + Int(a * b).str();
        break;
      }
    }
    add("multiplier end-to-end Imul(s1, s2) = s1*s2", ok, detail);
  }

  return rep;
}

std::string renderReport(const VerifyReport& r) {
  std::size_t w = 0;
  for (const auto& c : r.checks) w = std::max(w, c.name.size());
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.ok ? "PASS  " : "FAIL  ") << c.name;
    os << std::string(w - c.name.size() + 2, ' ') << c.detail << "\n";
  }
  os << (r.allOk() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

}  // namespace masc
