#include <algorithm>
#include <cctype>
#include <memory>
#include <set>

#include "doc.hpp"
#include "ir_util.hpp"
#include "surfaces.hpp"

namespace iospec::render {

namespace {

using ir::Expr;
using ir::Op;
using ir::Role;

const std::set<std::string> kReserved = {
    "case",   "class",    "data",   "default", "deriving", "do",      "else",   "foreign", "if",     "import",
    "in",     "infix",    "infixl", "infixr",  "instance", "let",     "module", "newtype", "of",     "then",
    "type",   "where",    "main",   "readLn",  "print",    "putStrLn", "concat", "show",    "sum",    "product",
    "length", "last",     "not",    "return",  "undefined", "mod",    "div"};

const char* const kHelpers[] = {"loop", "go", "aux"};

struct Scheme {
  const char* temp;
  const char* sum;
  const char* product;
  const char* length;
};
const Scheme kSchemes[] = {
    {"v", "s", "p", "l"},
    {"val", "total", "prod", "count"},
    {"next", "acc", "prd", "len"},
};

struct HsExpr {
  std::string text;
  int prec;  // 10 atom, 9 application, 7 mul, 6 add, 4 comparison, 3 and, 2 or
};

std::string at_least(const HsExpr& e, int prec) { return e.prec >= prec ? e.text : "(" + e.text + ")"; }

struct HsStmt;
using HsBlock = std::vector<HsStmt>;

struct HsStmt {
  enum class Kind { Line, If, LetFn } kind = Kind::Line;
  Line line;
  bool binds = false;  // "x <- ..." or "let x = ...", never last in a do-block
  std::string cond;
  HsBlock then_block, else_block;
  std::string head;  // "loop s l"
  HsBlock body;
};

HsStmt line_stmt(Line l) {
  HsStmt s;
  s.line = std::move(l);
  return s;
}

HsStmt binding_stmt(Line l) {
  HsStmt s = line_stmt(std::move(l));
  s.binds = true;
  return s;
}

struct Scope {
  std::map<int, HsExpr> env;
  // Bindings so far on this path, per variable (-1 for helpers); the k-th
  // gets k primes, so names never shadow.
  std::map<int, int> bound;
};

struct Cont;
using ContPtr = std::shared_ptr<const Cont>;

struct LoopCtx {
  std::string helper;
  std::vector<int> params;
  ContPtr after;
};

struct Cont {
  enum class Kind { Done, Rest, Call } kind;
  const ir::Block* block = nullptr;
  std::size_t index = 0;
  ContPtr next;
  std::shared_ptr<const LoopCtx> loop;
};

int role_rank(Role r) {
  switch (r) {
    case Role::SumAcc:
      return 0;
    case Role::ProductAcc:
      return 1;
    case Role::LengthAcc:
      return 2;
    case Role::List:
      return 3;
    case Role::Input:
      return 4;
    case Role::Temp:
      return 5;
  }
  return 6;
}

class HaskellGen {
 public:
  HaskellGen(const ir::Program& p, std::size_t helper, std::size_t scheme)
      : prog_(p), live_(ir::loop_liveness(p)), helper_(kHelpers[helper]), scheme_(kSchemes[scheme]) {
    // Display names are distinct up front, so the binding structure is the
    // same under every scheme.
    std::set<std::string> taken = kReserved;
    taken.insert(helper_);
    for (const auto& v : p.vars) {
      const std::string base = display_name(v, scheme);
      std::string name = base;
      for (int k = 2; taken.count(name); ++k) name = base + std::to_string(k);
      taken.insert(name);
      display_.push_back(name);
    }
  }

  Doc run() {
    Doc doc;
    doc.text("main :: IO ()\n");
    if (prog_.body.empty()) {
      doc.text("main = return ()\n");
      return doc;
    }
    doc.text("main = do\n");
    auto done = std::make_shared<Cont>(Cont{Cont::Kind::Done, nullptr, 0, nullptr, nullptr});
    emit_block(doc, gen(prog_.body, 0, done, Scope{}), 2);
    return doc;
  }

 private:
  std::string display_name(const ir::Variable& v, std::size_t scheme) const {
    switch (v.role) {
      case Role::Temp:
        return scheme_.temp;
      case Role::SumAcc:
        return scheme_.sum;
      case Role::ProductAcc:
        return scheme_.product;
      case Role::LengthAcc:
        return scheme_.length;
      case Role::Input:
      case Role::List: {
        std::string name = v.hint;
        name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
        if (scheme == 2) name += v.role == Role::List ? "s" : "Val";
        return name;
      }
    }
    return v.hint;
  }

  std::string fresh(Scope& sc, int var) const {
    const int k = sc.bound[var]++;
    return (var < 0 ? helper_ : display_[static_cast<std::size_t>(var)]) + std::string(static_cast<std::size_t>(k), '\'');
  }

  HsExpr value_of(int var, const Scope& sc) const {
    auto it = sc.env.find(var);
    if (it != sc.env.end()) return it->second;
    return {prog_.vars[static_cast<std::size_t>(var)].is_list() ? "[]" : "0", 10};
  }

  HsExpr expr(const Expr& e, const Scope& sc) const {
    auto bin = [&](const char* op, int prec, int lp, int rp) {
      return HsExpr{at_least(expr(e.kids[0], sc), lp) + " " + op + " " + at_least(expr(e.kids[1], sc), rp), prec};
    };
    switch (e.op) {
      case Op::Lit:
        if (e.value < 0) return {"(" + std::to_string(e.value) + ")", 10};
        return {std::to_string(e.value), 10};
      case Op::Var:
        return value_of(e.var, sc);
      case Op::Sum:
        return {"sum " + at_least(value_of(e.var, sc), 10), 9};
      case Op::Product:
        return {"product " + at_least(value_of(e.var, sc), 10), 9};
      case Op::Length:
        return {"length " + at_least(value_of(e.var, sc), 10), 9};
      case Op::Last:
        return {"last " + at_least(value_of(e.var, sc), 10), 9};
      case Op::Add:
        // Accumulator updates right after initialization: 0 + v is v.
        if (expr(e.kids[0], sc).text == "0") return expr(e.kids[1], sc);
        return bin("+", 6, 6, 7);
      case Op::Sub:
        return bin("-", 6, 6, 7);
      case Op::Mul:
        if (expr(e.kids[0], sc).text == "1") return expr(e.kids[1], sc);
        return bin("*", 7, 7, 8);
      case Op::Eq:
        return bin("==", 4, 5, 5);
      case Op::Neq:
        return bin("/=", 4, 5, 5);
      case Op::Lt:
        return bin("<", 4, 5, 5);
      case Op::Leq:
        return bin("<=", 4, 5, 5);
      case Op::Gt:
        return bin(">", 4, 5, 5);
      case Op::Geq:
        return bin(">=", 4, 5, 5);
      case Op::And:
        return bin("&&", 3, 4, 3);
      case Op::Or:
        return bin("||", 2, 3, 2);
      case Op::Not:
        return {"not " + at_least(expr(e.kids[0], sc), 10), 9};
    }
    return {"undefined", 10};
  }

  Line print_line(const ir::Print& p, const Scope& sc) const {
    if (p.segments.size() == 1) {
      if (const auto* e = std::get_if<Expr>(&p.segments[0])) {
        return {marked("print", Region::Print), plain(" " + at_least(expr(*e, sc), 10))};
      }
      return {marked("putStrLn", Region::Print), plain(" " + quote(std::get<std::string>(p.segments[0])))};
    }
    std::string items;
    for (const auto& seg : p.segments) {
      if (!items.empty()) items += ", ";
      if (const auto* e = std::get_if<Expr>(&seg)) {
        items += "show " + at_least(expr(*e, sc), 10);
      } else {
        items += quote(std::get<std::string>(seg));
      }
    }
    return {marked("putStrLn", Region::Print), plain(" (concat [" + items + "])")};
  }

  std::vector<int> loop_params(const ir::Loop& l) const {
    const ir::LoopLiveness& lv = live_.at(&l);
    std::vector<int> params;
    for (int v : ir::modified_vars(l.body)) {
      if (lv.entry.count(v) || lv.after.count(v)) params.push_back(v);
    }
    std::stable_sort(params.begin(), params.end(), [&](int a, int b) {
      return role_rank(prog_.vars[static_cast<std::size_t>(a)].role) <
             role_rank(prog_.vars[static_cast<std::size_t>(b)].role);
    });
    return params;
  }

  static bool used_later(const ir::Block& b, std::size_t i, int var) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (ir::touched_vars(b[j]).count(var)) return true;
    }
    return false;
  }

  // Compound values referenced again in the same block get a name instead of
  // being repeated at every use.
  void bind(HsBlock& out, Scope& sc, int var, HsExpr value, bool shared) {
    if (value.prec == 10 || !shared) {
      sc.env[var] = std::move(value);
      return;
    }
    const std::string name = fresh(sc, var);
    out.push_back(binding_stmt({plain("let " + name + " = " + value.text)}));
    sc.env[var] = {name, 10};
  }

  // Statements b[i..] followed by the continuation k, as one do-block.
  HsBlock gen(const ir::Block& b, std::size_t i, const ContPtr& k, Scope sc, HsBlock out = {}) {
    for (; i < b.size(); ++i) {
      const auto& n = b[i].node;
      if (const auto* r = std::get_if<ir::ReadInto>(&n)) {
        const std::string name = fresh(sc, r->var);
        out.push_back(binding_stmt({plain(name + " <- "), marked("readLn", Region::Read)}));
        sc.env[r->var] = {name, 10};
      } else if (const auto* a = std::get_if<ir::Append>(&n)) {
        const HsExpr list = value_of(a->list, sc);
        const std::string item = "[" + value_of(a->value, sc).text + "]";
        bind(out, sc, a->list, list.text == "[]" ? HsExpr{item, 10} : HsExpr{at_least(list, 6) + " ++ " + item, 5},
             used_later(b, i, a->list));
      } else if (const auto* a = std::get_if<ir::Assign>(&n)) {
        bind(out, sc, a->var, expr(a->value, sc), used_later(b, i, a->var));
      } else if (const auto* il = std::get_if<ir::InitList>(&n)) {
        sc.env[il->list] = {"[]", 10};
      } else if (const auto* p = std::get_if<ir::Print>(&n)) {
        out.push_back(line_stmt(print_line(*p, sc)));
      } else if (const auto* f = std::get_if<ir::If>(&n)) {
        auto rest = std::make_shared<Cont>(Cont{Cont::Kind::Rest, &b, i + 1, k, nullptr});
        HsStmt st;
        st.kind = HsStmt::Kind::If;
        st.cond = expr(f->cond, sc).text;
        st.then_block = gen(f->then_body, 0, rest, sc);
        st.else_block = gen(f->else_body, 0, rest, sc);
        out.push_back(std::move(st));
        return out;
      } else if (const auto* l = std::get_if<ir::Loop>(&n)) {
        auto ctx = std::make_shared<LoopCtx>();
        ctx->helper = fresh(sc, -1);
        ctx->params = loop_params(*l);
        ctx->after = std::make_shared<Cont>(Cont{Cont::Kind::Rest, &b, i + 1, k, nullptr});
        std::string args;
        for (int v : ctx->params) args += " " + at_least(value_of(v, sc), 10);
        Scope inner = sc;
        std::string head = ctx->helper;
        for (int v : ctx->params) {
          const std::string name = fresh(inner, v);
          inner.env[v] = {name, 10};
          head += " " + name;
        }
        auto call = std::make_shared<Cont>(Cont{Cont::Kind::Call, nullptr, 0, nullptr, ctx});
        HsStmt let;
        let.kind = HsStmt::Kind::LetFn;
        let.head = head;
        let.body = gen(l->body, 0, call, std::move(inner));
        out.push_back(std::move(let));
        out.push_back(line_stmt({plain(ctx->helper + args)}));
        return out;
      } else if (std::holds_alternative<ir::Break>(n)) {
        return finish(std::move(out), k_loop_after(k), sc);
      }
    }
    return finish(std::move(out), k, sc);
  }

  // Continuation taken by a break: after the innermost loop.
  static ContPtr k_loop_after(ContPtr k) {
    while (k && k->kind != Cont::Kind::Call) k = k->next;
    return k ? k->loop->after : nullptr;
  }

  HsBlock finish(HsBlock out, const ContPtr& k, const Scope& sc) {
    switch (k->kind) {
      case Cont::Kind::Done:
        if (out.empty() || out.back().binds) out.push_back(line_stmt({plain("return ()")}));
        return out;
      case Cont::Kind::Rest:
        return gen(*k->block, k->index, k->next, sc, std::move(out));
      case Cont::Kind::Call: {
        std::string call = k->loop->helper;
        for (int v : k->loop->params) call += " " + at_least(value_of(v, sc), 10);
        out.push_back(line_stmt({plain(call)}));
        return out;
      }
    }
    return out;
  }

  void emit_block(Doc& doc, const HsBlock& block, int indent) const {
    for (const auto& st : block) emit_stmt(doc, st, indent);
  }

  void emit_branch(Doc& doc, const char* keyword, const HsBlock& block, int indent) const {
    if (block.size() == 1 && block[0].kind == HsStmt::Kind::Line) {
      Line l{plain(std::string(keyword) + " ")};
      l.insert(l.end(), block[0].line.begin(), block[0].line.end());
      emit_line(doc, indent, l);
      return;
    }
    emit_line(doc, indent, {plain(std::string(keyword) + " do")});
    emit_block(doc, block, indent + 2);
  }

  void emit_stmt(Doc& doc, const HsStmt& st, int indent) const {
    switch (st.kind) {
      case HsStmt::Kind::Line:
        emit_line(doc, indent, st.line);
        return;
      case HsStmt::Kind::If:
        emit_line(doc, indent, {plain("if " + st.cond)});
        emit_branch(doc, "then", st.then_block, indent + 2);
        emit_branch(doc, "else", st.else_block, indent + 2);
        return;
      case HsStmt::Kind::LetFn:
        // The body sits to the right of the helper name, as layout requires.
        if (st.body.size() == 1) {
          emit_line(doc, indent, {plain("let " + st.head + " =")});
          doc.open(Region::LoopBody);
          emit_stmt(doc, st.body[0], indent + 6);
          doc.close();
        } else {
          emit_line(doc, indent, {plain("let " + st.head + " = do")});
          doc.open(Region::LoopBody);
          emit_block(doc, st.body, indent + 6);
          doc.close();
        }
        return;
    }
  }

  const ir::Program& prog_;
  std::map<const ir::Loop*, ir::LoopLiveness> live_;
  std::string helper_;
  Scheme scheme_;
  std::vector<std::string> display_;
};

}  // namespace

Doc haskell_doc(const ir::Program& p, Rng& rng) {
  const std::size_t helper = rng.index(3);
  const std::size_t scheme = rng.index(3);
  return HaskellGen(p, helper, scheme).run();
}

}  // namespace iospec::render
