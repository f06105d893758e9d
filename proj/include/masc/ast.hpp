// Typed MASC abstract syntax.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "masc/diagnostics.hpp"
#include "masc/numeric.hpp"
#include "masc/value.hpp"

namespace masc {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class K {
    Bool, UInt, Int, UI, SI, UF, SF,
    Array, Struct, Enum, Tuple,
    Numeric  // checker-internal: unbounded exact arithmetic result
  };

  K kind = K::Numeric;
  std::int64_t width = 0;    // UI/SI/UF/SF
  std::int64_t intBits = 0;  // UF/SF
  TypePtr elem;              // Array
  std::int64_t size = 0;     // Array (declared length)
  std::string name;          // Struct / Enum
  std::vector<std::pair<std::string, TypePtr>> fields;  // Struct
  std::vector<std::pair<std::string, Int>> members;     // Enum
  std::vector<TypePtr> tupleTypes;

  bool isRegister() const {
    return kind == K::UI || kind == K::SI || kind == K::UF || kind == K::SF;
  }
  bool isScalar() const {
    return kind != K::Array && kind != K::Struct && kind != K::Tuple;
  }
  RegisterFormat regFormat() const;
  std::string str() const;
  // Structural equality (struct/enum compare by name).
  static bool same(const TypePtr& a, const TypePtr& b);

  static TypePtr boolType();
  static TypePtr uintType();
  static TypePtr intType();
  static TypePtr numericType();
  static TypePtr reg(K kind, std::int64_t width, std::int64_t intBits = 0);
  static TypePtr array(TypePtr elem, std::int64_t size);
  static TypePtr tuple(std::vector<TypePtr> types);
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class K {
    IntLit, BoolLit, Var, Unary, Binary, Ternary,
    Index,     // base[idx]: array index or bit reference (checker decides)
    Subrange,  // base[hi:lo]
    Field, Call
  };
  enum class Op {
    None, Add, Sub, Mul, Mod, Shl, Shr, BitAnd, BitOr, BitXor, BitNot,
    LogAnd, LogOr, LogNot, Neg,
    Lt, Le, Gt, Ge, Eq, Ne
  };

  K kind;
  SrcLoc loc;
  Int intValue;          // IntLit
  bool boolValue = false;
  std::string name;      // Var / Call / Field member
  Op op = Op::None;
  ExprPtr a, b, c;       // operands; Ternary: a?b:c; Subrange: a[b:c]; Index: a[b]
  std::vector<ExprPtr> args;  // Call

  // Checker annotations.
  TypePtr type;              // result type (Numeric for computed values)
  bool integral = false;     // statically known to be an integer
  bool boolish = false;      // statically known to be 0/1
  bool isBitRef = false;     // Index resolved as a bit reference
  Int constValue;            // folded value (enum members, constants)
  bool hasConstValue = false;

  static ExprPtr intLit(SrcLoc loc, Int v);
  static ExprPtr var(SrcLoc loc, std::string name);
  static ExprPtr unary(SrcLoc loc, Op op, ExprPtr a);
  static ExprPtr binary(SrcLoc loc, Op op, ExprPtr a, ExprPtr b);
  ExprPtr clone() const;
};

const char* opToken(Expr::Op op);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Declarator {
  SrcLoc loc;
  std::string name;
  TypePtr type;   // full type including array shape
  ExprPtr init;   // may be null
};

struct SwitchArm {
  std::vector<ExprPtr> labels;  // empty for default
  bool isDefault = false;
  std::vector<StmtPtr> body;
  std::vector<Int> labelValues;  // folded by the checker
};

struct Stmt {
  enum class K {
    Block, Decl, Assign, MvAssign, If, For, While, Switch, Assert, Return,
    Break
  };

  K kind;
  SrcLoc loc;

  std::vector<StmtPtr> body;        // Block
  std::vector<Declarator> decls;    // Decl
  ExprPtr lhs, rhs;                 // Assign (compound ops desugared)
  std::vector<ExprPtr> mvTargets;   // MvAssign
  ExprPtr call;                     // MvAssign
  ExprPtr cond;                     // If / While / For test / Assert / Switch subject
  StmtPtr thenS, elseS;             // If
  StmtPtr init, update, loopBody;   // For
  ExprPtr whileBound;               // While: bound from the MASC directive
  std::vector<SwitchArm> arms;      // Switch
  std::vector<ExprPtr> retVals;     // Return

  static StmtPtr make(K kind, SrcLoc loc);
};

struct Param {
  SrcLoc loc;
  std::string name;
  TypePtr type;
};

struct FunctionDef {
  SrcLoc loc;
  std::string name;
  std::vector<Param> params;
  std::vector<TypePtr> returnTypes;  // >1 entries for multiple-value returns
  StmtPtr body;                      // Block
};

struct ConstantDef {
  SrcLoc loc;
  std::string name;
  TypePtr type;
  ExprPtr init;
  Value value;  // folded by the checker
  bool folded = false;
};

struct Program {
  std::vector<std::pair<std::string, TypePtr>> typedefs;
  std::vector<ConstantDef> constants;
  std::vector<FunctionDef> functions;
  bool checked = false;

  const FunctionDef* findFunction(const std::string& name) const;
  const ConstantDef* findConstant(const std::string& name) const;
};

}  // namespace masc
