#include "masc/ast.hpp"

namespace masc {

RegisterFormat Type::regFormat() const {
  switch (kind) {
    case K::UInt: return {RegKind::UINT};
    case K::Int: return {RegKind::INT};
    case K::Bool: return {RegKind::UINT};  // stored as 0/1
    case K::Enum: return {RegKind::INT};
    case K::UI: return {RegKind::UI, width};
    case K::SI: return {RegKind::SI, width};
    case K::UF: return {RegKind::UF, width, intBits};
    case K::SF: return {RegKind::SF, width, intBits};
    default: throw NumericError("type has no register format: " + str());
  }
}

std::string Type::str() const {
  switch (kind) {
    case K::Bool: return "bool";
    case K::UInt: return "uint";
    case K::Int: return "int";
    case K::UI: return "ui" + std::to_string(width);
    case K::SI: return "si" + std::to_string(width);
    case K::UF:
      return "uf" + std::to_string(width) + "i" + std::to_string(intBits);
    case K::SF:
      return "sf" + std::to_string(width) + "i" + std::to_string(intBits);
    case K::Array: return elem->str() + "[" + std::to_string(size) + "]";
    case K::Struct: return "struct " + name;
    case K::Enum: return "enum " + name;
    case K::Tuple: {
      std::string out = "<";
      for (size_t i = 0; i < tupleTypes.size(); ++i) {
        if (i) out += ", ";
        out += tupleTypes[i]->str();
      }
      return out + ">";
    }
    case K::Numeric: return "number";
  }
  return "?";
}

bool Type::same(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case K::UI:
    case K::SI:
      return a->width == b->width;
    case K::UF:
    case K::SF:
      return a->width == b->width && a->intBits == b->intBits;
    case K::Array:
      return a->size == b->size && same(a->elem, b->elem);
    case K::Struct:
    case K::Enum:
      return a->name == b->name;
    case K::Tuple: {
      if (a->tupleTypes.size() != b->tupleTypes.size()) return false;
      for (size_t i = 0; i < a->tupleTypes.size(); ++i)
        if (!same(a->tupleTypes[i], b->tupleTypes[i])) return false;
      return true;
    }
    default:
      return true;
  }
}

namespace {
TypePtr simple(Type::K k) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  return t;
}
}  // namespace

TypePtr Type::boolType() { static TypePtr t = simple(K::Bool); return t; }
TypePtr Type::uintType() { static TypePtr t = simple(K::UInt); return t; }
TypePtr Type::intType() { static TypePtr t = simple(K::Int); return t; }
TypePtr Type::numericType() { static TypePtr t = simple(K::Numeric); return t; }

TypePtr Type::reg(K kind, std::int64_t width, std::int64_t intBits) {
  auto t = std::make_shared<Type>();
  t->kind = kind;
  t->width = width;
  t->intBits = intBits;
  return t;
}

TypePtr Type::array(TypePtr elem, std::int64_t size) {
  auto t = std::make_shared<Type>();
  t->kind = K::Array;
  t->elem = std::move(elem);
  t->size = size;
  return t;
}

TypePtr Type::tuple(std::vector<TypePtr> types) {
  auto t = std::make_shared<Type>();
  t->kind = K::Tuple;
  t->tupleTypes = std::move(types);
  return t;
}

ExprPtr Expr::intLit(SrcLoc loc, Int v) {
  auto e = std::make_unique<Expr>();
  e->kind = K::IntLit;
  e->loc = loc;
  e->intValue = std::move(v);
  return e;
}

ExprPtr Expr::var(SrcLoc loc, std::string name) {
  auto e = std::make_unique<Expr>();
  e->kind = K::Var;
  e->loc = loc;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::unary(SrcLoc loc, Op op, ExprPtr a) {
  auto e = std::make_unique<Expr>();
  e->kind = K::Unary;
  e->loc = loc;
  e->op = op;
  e->a = std::move(a);
  return e;
}

ExprPtr Expr::binary(SrcLoc loc, Op op, ExprPtr a, ExprPtr b) {
  auto e = std::make_unique<Expr>();
  e->kind = K::Binary;
  e->loc = loc;
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr Expr::clone() const {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->loc = loc;
  e->intValue = intValue;
  e->boolValue = boolValue;
  e->name = name;
  e->op = op;
  if (a) e->a = a->clone();
  if (b) e->b = b->clone();
  if (c) e->c = c->clone();
  for (const auto& arg : args) e->args.push_back(arg->clone());
  return e;
}

const char* opToken(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Mod: return "%";
    case Op::Shl: return "<<";
    case Op::Shr: return ">>";
    case Op::BitAnd: return "&";
    case Op::BitOr: return "|";
    case Op::BitXor: return "^";
    case Op::BitNot: return "~";
    case Op::LogAnd: return "&&";
    case Op::LogOr: return "||";
    case Op::LogNot: return "!";
    case Op::Neg: return "-";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    default: return "?";
  }
}

StmtPtr Stmt::make(K kind, SrcLoc loc) {
  auto s = std::make_unique<Stmt>();
  s->kind = kind;
  s->loc = loc;
  return s;
}

const FunctionDef* Program::findFunction(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const ConstantDef* Program::findConstant(const std::string& name) const {
  for (const auto& c : constants)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace masc
