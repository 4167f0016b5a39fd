#include <set>

#include "surfaces.hpp"

namespace iospec::render {

namespace {

using ir::Expr;
using ir::Op;

const std::set<std::string> kReserved = {
    "False", "None",   "True",  "and",   "as",       "assert", "async", "await", "break", "class",  "continue",
    "def",   "del",    "elif",  "else",  "except",   "finally", "for",  "from",  "global", "if",    "import",
    "in",    "is",     "lambda", "nonlocal", "not",  "or",     "pass",  "raise", "return", "try",   "while",
    "with",  "yield",  "print", "input", "int",      "sum",    "len",   "math",  "str"};

struct PyExpr {
  std::string text;
  int prec;  // 10 atom or call, 6 mul, 5 add, 4 comparison, 3 not, 2 and, 1 or
};

std::string at_least(const PyExpr& e, int prec) { return e.prec >= prec ? e.text : "(" + e.text + ")"; }

Op flipped(Op op) {
  switch (op) {
    case Op::Eq:
      return Op::Neq;
    case Op::Neq:
      return Op::Eq;
    case Op::Lt:
      return Op::Geq;
    case Op::Leq:
      return Op::Gt;
    case Op::Gt:
      return Op::Leq;
    case Op::Geq:
      return Op::Lt;
    default:
      return op;
  }
}

bool is_break_only(const ir::Block& b) { return b.size() == 1 && std::holds_alternative<ir::Break>(b[0].node); }

bool uses_product(const ir::Block& b);

bool expr_uses_product(const Expr& e) {
  if (e.op == Op::Product) return true;
  for (const auto& k : e.kids) {
    if (expr_uses_product(k)) return true;
  }
  return false;
}

bool uses_product(const ir::Block& b) {
  for (const auto& st : b) {
    const auto& n = st.node;
    if (const auto* a = std::get_if<ir::Assign>(&n); a && expr_uses_product(a->value)) return true;
    if (const auto* p = std::get_if<ir::Print>(&n)) {
      for (const auto& seg : p->segments) {
        if (const auto* e = std::get_if<Expr>(&seg); e && expr_uses_product(*e)) return true;
      }
    }
    if (const auto* f = std::get_if<ir::If>(&n)) {
      if (expr_uses_product(f->cond) || uses_product(f->then_body) || uses_product(f->else_body)) return true;
    }
    if (const auto* l = std::get_if<ir::Loop>(&n); l && uses_product(l->body)) return true;
  }
  return false;
}

class PythonGen {
 public:
  explicit PythonGen(const ir::Program& p) : prog_(p) {
    std::set<std::string> taken;
    for (const auto& v : p.vars) {
      std::string name = v.hint;
      if (kReserved.count(name) || taken.count(name)) {
        int k = 2;
        while (kReserved.count(name + "_" + std::to_string(k)) || taken.count(name + "_" + std::to_string(k))) ++k;
        name += "_" + std::to_string(k);
      }
      taken.insert(name);
      names_.push_back(name);
    }
  }

  Doc run() {
    Doc doc;
    if (uses_product(prog_.body)) doc.text("import math\n");
    emit_block(doc, prog_.body, 0, 0);
    return doc;
  }

 private:
  const std::string& name(int var) const { return names_[static_cast<std::size_t>(var)]; }
  bool is_list(int var) const { return prog_.vars[static_cast<std::size_t>(var)].is_list(); }

  PyExpr expr(const Expr& e) const {
    auto bin = [&](const char* op, int prec, int lp, int rp) {
      return PyExpr{at_least(expr(e.kids[0]), lp) + " " + op + " " + at_least(expr(e.kids[1]), rp), prec};
    };
    switch (e.op) {
      case Op::Lit:
        if (e.value < 0) return {"(" + std::to_string(e.value) + ")", 10};
        return {std::to_string(e.value), 10};
      case Op::Var:
        return {name(e.var), 10};
      case Op::Sum:
        return {"sum(" + name(e.var) + ")", 10};
      case Op::Product:
        return {"math.prod(" + name(e.var) + ")", 10};
      case Op::Length:
        return {"len(" + name(e.var) + ")", 10};
      case Op::Last:
        return {name(e.var) + "[-1]", 10};
      case Op::Add:
        return bin("+", 5, 5, 6);
      case Op::Sub:
        return bin("-", 5, 5, 6);
      case Op::Mul:
        return bin("*", 6, 6, 7);
      case Op::Eq:
        return bin("==", 4, 5, 5);
      case Op::Neq:
        return bin("!=", 4, 5, 5);
      case Op::Lt:
        return bin("<", 4, 5, 5);
      case Op::Leq:
        return bin("<=", 4, 5, 5);
      case Op::Gt:
        return bin(">", 4, 5, 5);
      case Op::Geq:
        return bin(">=", 4, 5, 5);
      case Op::And:
        return bin("and", 2, 2, 3);
      case Op::Or:
        return bin("or", 1, 1, 2);
      case Op::Not:
        return {"not " + at_least(expr(e.kids[0]), 3), 3};
    }
    return {"None", 10};
  }

  PyExpr negated(const Expr& cond) const {
    const Op f = flipped(cond.op);
    if (f != cond.op) return expr(Expr::binary(f, cond.kids[0], cond.kids[1]));
    if (cond.op == Op::Not) return expr(cond.kids[0]);
    return expr(Expr::negation(cond));
  }

  std::string shown(const Expr& e) const {
    // str() of a Python list puts spaces after commas.
    if (e.op == Op::Var && is_list(e.var)) return "str(" + name(e.var) + ").replace(' ', '')";
    return expr(e).text;
  }

  Line print_line(const ir::Print& p) const {
    std::string arg;
    if (p.segments.size() == 1) {
      if (const auto* e = std::get_if<Expr>(&p.segments[0])) {
        arg = shown(*e);
      } else {
        arg = quote(std::get<std::string>(p.segments[0]));
      }
    } else {
      arg = "f\"";
      for (const auto& seg : p.segments) {
        if (const auto* e = std::get_if<Expr>(&seg)) {
          arg += "{" + shown(*e) + "}";
        } else {
          const std::string q = quote(std::get<std::string>(seg), true);
          arg += q.substr(1, q.size() - 2);
        }
      }
      arg += "\"";
    }
    return {marked("print", Region::Print), plain("(" + arg + ")")};
  }

  void emit_block(Doc& doc, const ir::Block& b, std::size_t from, int indent) const {
    if (from >= b.size()) {
      emit_line(doc, indent, {plain("pass")});
      return;
    }
    for (std::size_t i = from; i < b.size(); ++i) emit_stmt(doc, b[i], indent);
  }

  void emit_stmt(Doc& doc, const ir::Stmt& st, int indent) const {
    const auto& n = st.node;
    if (const auto* r = std::get_if<ir::ReadInto>(&n)) {
      emit_line(doc, indent, {plain(name(r->var) + " = "), marked("int(input())", Region::Read)});
    } else if (const auto* a = std::get_if<ir::Append>(&n)) {
      emit_line(doc, indent, {plain(name(a->list) + " += [" + name(a->value) + "]")});
    } else if (const auto* a = std::get_if<ir::Assign>(&n)) {
      emit_line(doc, indent, {plain(name(a->var) + " = " + expr(a->value).text)});
    } else if (const auto* il = std::get_if<ir::InitList>(&n)) {
      emit_line(doc, indent, {plain(name(il->list) + " = []")});
    } else if (const auto* p = std::get_if<ir::Print>(&n)) {
      emit_line(doc, indent, print_line(*p));
    } else if (const auto* f = std::get_if<ir::If>(&n)) {
      emit_line(doc, indent, {plain("if " + expr(f->cond).text + " :")});
      emit_block(doc, f->then_body, 0, indent + 2);
      if (!f->else_body.empty()) {
        emit_line(doc, indent, {plain("else :")});
        emit_block(doc, f->else_body, 0, indent + 2);
      }
    } else if (const auto* l = std::get_if<ir::Loop>(&n)) {
      emit_loop(doc, *l, indent);
    } else if (std::holds_alternative<ir::Break>(n)) {
      emit_line(doc, indent, {plain("break")});
    }
  }

  // A leading exit test becomes the while condition.
  void emit_loop(Doc& doc, const ir::Loop& l, int indent) const {
    const auto* guard = l.body.empty() ? nullptr : std::get_if<ir::If>(&l.body[0].node);
    std::string cond = "True";
    ir::Block body;
    if (guard && is_break_only(guard->then_body) && !is_break_only(guard->else_body)) {
      cond = negated(guard->cond).text;
      body = guard->else_body;
    } else if (guard && is_break_only(guard->else_body) && !is_break_only(guard->then_body)) {
      cond = expr(guard->cond).text;
      body = guard->then_body;
    } else {
      guard = nullptr;
    }
    std::size_t from = 0;
    if (guard) {
      body.insert(body.end(), l.body.begin() + 1, l.body.end());
    } else {
      body = l.body;
    }
    emit_line(doc, indent, {plain("while " + cond + " :")});
    doc.open(Region::LoopBody);
    emit_block(doc, body, from, indent + 2);
    doc.close();
  }

  const ir::Program& prog_;
  std::vector<std::string> names_;
};

}  // namespace

Doc python_doc(const ir::Program& p) {
  if (p.body.empty()) {
    Doc doc;
    doc.text("pass\n");
    return doc;
  }
  return PythonGen(p).run();
}

}  // namespace iospec::render
