#include <set>
#include <sstream>

#include "masc/parser.hpp"

namespace masc {

namespace {

int exprPrec(const Expr& e) {
  switch (e.kind) {
    case Expr::K::Ternary: return 0;
    case Expr::K::Binary:
      switch (e.op) {
        case Expr::Op::LogOr: return 1;
        case Expr::Op::LogAnd: return 2;
        case Expr::Op::BitOr: return 3;
        case Expr::Op::BitXor: return 4;
        case Expr::Op::BitAnd: return 5;
        case Expr::Op::Eq:
        case Expr::Op::Ne: return 6;
        case Expr::Op::Lt:
        case Expr::Op::Le:
        case Expr::Op::Gt:
        case Expr::Op::Ge: return 7;
        case Expr::Op::Shl:
        case Expr::Op::Shr: return 8;
        case Expr::Op::Add:
        case Expr::Op::Sub: return 9;
        default: return 10;  // * %
      }
    case Expr::K::Unary: return 11;
    default: return 12;  // postfix and primary
  }
}

struct Printer {
  std::ostringstream out;
  int indent = 0;

  void line(const std::string& s) {
    for (int i = 0; i < indent; ++i) out << "  ";
    out << s << "\n";
  }

  std::string expr(const Expr& e, int minPrec = 0) {
    int prec = exprPrec(e);
    std::string s;
    switch (e.kind) {
      case Expr::K::IntLit: s = e.intValue.str(); break;
      case Expr::K::BoolLit: s = e.boolValue ? "true" : "false"; break;
      case Expr::K::Var: s = e.name; break;
      case Expr::K::Unary:
        s = std::string(opToken(e.op)) + expr(*e.a, prec);
        break;
      case Expr::K::Binary:
        // left-associative: the right child needs one level more
        s = expr(*e.a, prec) + " " + opToken(e.op) + " " +
            expr(*e.b, prec + 1);
        break;
      case Expr::K::Ternary:
        s = expr(*e.a, 1) + " ? " + expr(*e.b, 1) + " : " + expr(*e.c, 0);
        break;
      case Expr::K::Index:
        s = expr(*e.a, prec) + "[" + expr(*e.b) + "]";
        break;
      case Expr::K::Subrange:
        s = expr(*e.a, prec) + "[" + expr(*e.b) + ":" + expr(*e.c) + "]";
        break;
      case Expr::K::Field:
        s = expr(*e.a, prec) + "." + e.name;
        break;
      case Expr::K::Call: {
        s = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) s += ", ";
          s += expr(*e.args[i]);
        }
        s += ")";
        break;
      }
    }
    if (prec < minPrec) return "(" + s + ")";
    return s;
  }

  static std::string typeName(const Type& t) {
    if (t.kind == Type::K::Struct || t.kind == Type::K::Enum) return t.name;
    return t.str();
  }

  std::string declarator(const Declarator& d) {
    std::string s = d.name;
    if (d.type->kind == Type::K::Array)
      s += "[" + std::to_string(d.type->size) + "]";
    if (d.init) s += " = " + expr(*d.init);
    return s;
  }

  std::string assignText(const Stmt& s) {
    return expr(*s.lhs) + " = " + expr(*s.rhs);
  }

  std::string declText(const Stmt& s) {
    const Type& base = s.decls[0].type->kind == Type::K::Array
                           ? *s.decls[0].type->elem
                           : *s.decls[0].type;
    std::string text = typeName(base) + " ";
    for (std::size_t i = 0; i < s.decls.size(); ++i) {
      if (i) text += ", ";
      text += declarator(s.decls[i]);
    }
    return text;
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::K::Block:
        line("{");
        ++indent;
        for (const auto& inner : s.body) stmt(*inner);
        --indent;
        line("}");
        break;
      case Stmt::K::Decl:
        line(declText(s) + ";");
        break;
      case Stmt::K::Assign:
        line(assignText(s) + ";");
        break;
      case Stmt::K::MvAssign: {
        std::string text = "<";
        for (std::size_t i = 0; i < s.mvTargets.size(); ++i) {
          if (i) text += ", ";
          text += expr(*s.mvTargets[i]);
        }
        line(text + "> = " + expr(*s.call) + ";");
        break;
      }
      case Stmt::K::If:
        line("if (" + expr(*s.cond) + ") {");
        ++indent;
        for (const auto& inner : s.thenS->body) stmt(*inner);
        --indent;
        if (s.elseS) {
          line("} else {");
          ++indent;
          for (const auto& inner : s.elseS->body) stmt(*inner);
          --indent;
        }
        line("}");
        break;
      case Stmt::K::For: {
        if (s.whileBound)
          line("// MASC: " + expr(*s.whileBound) + " iterations");
        std::string init = s.init->kind == Stmt::K::Decl ? declText(*s.init)
                                                         : assignText(*s.init);
        line("for (" + init + "; " + expr(*s.cond) + "; " +
             assignText(*s.update) + ") {");
        ++indent;
        for (const auto& inner : s.loopBody->body) stmt(*inner);
        --indent;
        line("}");
        break;
      }
      case Stmt::K::While:
        if (s.whileBound)
          line("// MASC: " + expr(*s.whileBound) + " iterations");
        line("while (" + expr(*s.cond) + ") {");
        ++indent;
        for (const auto& inner : s.loopBody->body) stmt(*inner);
        --indent;
        line("}");
        break;
      case Stmt::K::Switch:
        line("switch (" + expr(*s.cond) + ") {");
        for (const auto& arm : s.arms) {
          for (const auto& lab : arm.labels) line("case " + expr(*lab) + ":");
          if (arm.isDefault) line("default:");
          ++indent;
          for (const auto& inner : arm.body) stmt(*inner);
          --indent;
        }
        line("}");
        break;
      case Stmt::K::Assert:
        line("assert(" + expr(*s.cond) + ");");
        break;
      case Stmt::K::Return: {
        if (s.retVals.size() == 1) {
          line("return " + expr(*s.retVals[0]) + ";");
        } else {
          std::string text = "return <";
          for (std::size_t i = 0; i < s.retVals.size(); ++i) {
            if (i) text += ", ";
            text += expr(*s.retVals[i]);
          }
          line(text + ">;");
        }
        break;
      }
      case Stmt::K::Break:
        line("break;");
        break;
    }
  }

  void program(const Program& p) {
    std::set<std::string> enumMembers;
    for (const auto& [name, t] : p.typedefs) {
      if (t->kind == Type::K::Enum) {
        std::string text = "enum " + t->name + " { ";
        for (std::size_t i = 0; i < t->members.size(); ++i) {
          if (i) text += ", ";
          text += t->members[i].first + " = " + t->members[i].second.str();
          enumMembers.insert(t->members[i].first);
        }
        line(text + " };");
      } else if (t->kind == Type::K::Struct) {
        line("struct " + t->name + " {");
        ++indent;
        for (const auto& [fname, ft] : t->fields) {
          if (ft->kind == Type::K::Array)
            line(typeName(*ft->elem) + " " + fname + "[" +
                 std::to_string(ft->size) + "];");
          else
            line(typeName(*ft) + " " + fname + ";");
        }
        --indent;
        line("};");
      } else {
        line("typedef " + typeName(*t) + " " + name + ";");
      }
      line("");
    }
    for (const auto& c : p.constants) {
      if (enumMembers.count(c.name)) continue;
      if (c.type->kind == Type::K::Array)
        line("const " + typeName(*c.type->elem) + " " + c.name + "[" +
             std::to_string(c.type->size) + "] = " + expr(*c.init) + ";");
      else
        line("const " + typeName(*c.type) + " " + c.name + " = " +
             expr(*c.init) + ";");
      line("");
    }
    for (const auto& fn : p.functions) {
      std::string head;
      if (fn.returnTypes.size() > 1) {
        head = "<";
        for (std::size_t i = 0; i < fn.returnTypes.size(); ++i) {
          if (i) head += ", ";
          head += typeName(*fn.returnTypes[i]);
        }
        head += ">";
      } else {
        const Type& rt = *fn.returnTypes[0];
        head = rt.kind == Type::K::Array
                   ? typeName(*rt.elem) + "[" + std::to_string(rt.size) + "]"
                   : typeName(rt);
      }
      head += " " + fn.name + "(";
      for (std::size_t i = 0; i < fn.params.size(); ++i) {
        if (i) head += ", ";
        const Type& pt = *fn.params[i].type;
        if (pt.kind == Type::K::Array)
          head += typeName(*pt.elem) + " " + fn.params[i].name + "[" +
                  std::to_string(pt.size) + "]";
        else
          head += typeName(pt) + " " + fn.params[i].name;
      }
      line(head + ") {");
      ++indent;
      for (const auto& inner : fn.body->body) stmt(*inner);
      --indent;
      line("}");
      line("");
    }
  }
};

}  // namespace

std::string printProgram(const Program& p) {
  Printer pr;
  pr.program(p);
  return pr.out.str();
}

}  // namespace masc
