#include <map>
#include <set>

#include "iospec/codegen.hpp"
#include "iospec/dsl.hpp"
#include "ir_util.hpp"

namespace iospec {

std::string_view to_string(ProgramStyle style) {
  return style == ProgramStyle::ListAccum ? "ListAccum" : "FoldState";
}

namespace {

using ir::Expr;
using ir::Op;
using ir::Role;

struct VarUse {
  bool all = false;   // some GetAll occurrence
  bool curr = false;  // some GetCurrent occurrence
  bool raw_all = false;  // GetAll outside sum/prod/len
  std::string raw_term;
  bool sum = false, product = false, length = false;
};

class Lowering {
 public:
  Lowering(const Specification& s, ProgramStyle style) : style_(style) {
    prog_.style = style;
    order_ = read_variables(s);
    collect(s);
    if (style == ProgramStyle::FoldState) {
      for (const auto& v : order_) {
        const VarUse& u = uses_[v.str()];
        if (u.raw_all) throw StyleUnsupported("no fold-style state for '" + u.raw_term + "'");
      }
    }
    allocate();
    ir::Block body = lower(s);
    prog_.body = place_inits(std::move(body));
  }

  ir::Program take() { return std::move(prog_); }

 private:
  void collect(const Specification& s) {
    const auto& node = s.node().value;
    if (const auto* w = std::get_if<WriteOutput>(&node)) {
      for (const auto& alt : w->alternatives) {
        for (const auto& seg : alt.segments()) {
          if (const auto* t = std::get_if<Term>(&seg)) collect_term(*t, false);
        }
      }
    } else if (const auto* b = std::get_if<Branch>(&node)) {
      collect_term(b->condition, false);
      collect(b->if_false);
      collect(b->if_true);
    } else if (const auto* l = std::get_if<TillExit>(&node)) {
      collect(l->body);
    } else if (const auto* q = std::get_if<Seq>(&node)) {
      collect(q->first);
      collect(q->second);
    }
  }

  void collect_term(const Term& t, bool under_fold) {
    switch (t.op()) {
      case TermOp::GetAll: {
        VarUse& u = uses_[t.var().str()];
        u.all = true;
        if (!under_fold && !u.raw_all) {
          u.raw_all = true;
          u.raw_term = print_term(t);
        }
        return;
      }
      case TermOp::GetCurrent:
        uses_[t.var().str()].curr = true;
        return;
      case TermOp::Sum:
      case TermOp::Product:
      case TermOp::Length: {
        const Term& arg = t.children()[0];
        VarUse& u = uses_[arg.var().str()];
        if (t.op() == TermOp::Sum) u.sum = true;
        if (t.op() == TermOp::Product) u.product = true;
        if (t.op() == TermOp::Length) u.length = true;
        collect_term(arg, true);
        return;
      }
      default:
        for (const auto& c : t.children()) collect_term(c, false);
    }
  }

  int add_var(std::string hint, Role role, const std::string& source) {
    prog_.vars.push_back({std::move(hint), role, source});
    return static_cast<int>(prog_.vars.size()) - 1;
  }

  void allocate() {
    for (const auto& v : order_) {
      const std::string& name = v.str();
      const VarUse& u = uses_[name];
      Slots& slot = slots_[name];
      if (style_ == ProgramStyle::ListAccum) {
        if (u.all) {
          slot.list = add_var(name, Role::List, name);
          slot.target = add_var("v", Role::Temp, name);
        } else {
          slot.target = add_var(name, Role::Input, name);
          slot.current = slot.target;
        }
      } else {
        if (u.curr) {
          slot.target = add_var(name, Role::Input, name);
          slot.current = slot.target;
        } else {
          slot.target = add_var("v", Role::Temp, name);
        }
      }
    }
    if (style_ != ProgramStyle::FoldState) return;
    // Accumulators in a fixed role order so helper parameters read s, p, l.
    for (const auto& v : order_) {
      const VarUse& u = uses_[v.str()];
      Slots& slot = slots_[v.str()];
      if (u.sum) {
        slot.sum = add_var("s", Role::SumAcc, v.str());
        prog_.state_vars.push_back({slot.sum, 0, Op::Sum, v.str()});
      }
    }
    for (const auto& v : order_) {
      const VarUse& u = uses_[v.str()];
      Slots& slot = slots_[v.str()];
      if (u.product) {
        slot.product = add_var("p", Role::ProductAcc, v.str());
        prog_.state_vars.push_back({slot.product, 1, Op::Product, v.str()});
      }
    }
    for (const auto& v : order_) {
      const VarUse& u = uses_[v.str()];
      Slots& slot = slots_[v.str()];
      if (u.length) {
        slot.length = add_var("l", Role::LengthAcc, v.str());
        prog_.state_vars.push_back({slot.length, 0, Op::Length, v.str()});
      }
    }
  }

  Expr lower_term(const Term& t) {
    auto bin = [&](Op op) { return Expr::binary(op, lower_term(t.children()[0]), lower_term(t.children()[1])); };
    switch (t.op()) {
      case TermOp::IntLit:
        return Expr::lit(t.literal());
      case TermOp::GetCurrent: {
        const Slots& slot = slots_.at(t.var().str());
        if (slot.current >= 0) return Expr::variable(slot.current);
        return Expr::on_list(Op::Last, slot.list);
      }
      case TermOp::GetAll:
        return Expr::variable(slots_.at(t.var().str()).list);
      case TermOp::Sum:
      case TermOp::Product:
      case TermOp::Length: {
        const Slots& slot = slots_.at(t.children()[0].var().str());
        if (style_ == ProgramStyle::FoldState) {
          const int acc = t.op() == TermOp::Sum ? slot.sum : t.op() == TermOp::Product ? slot.product : slot.length;
          return Expr::variable(acc);
        }
        const Op op = t.op() == TermOp::Sum ? Op::Sum : t.op() == TermOp::Product ? Op::Product : Op::Length;
        return Expr::on_list(op, slot.list);
      }
      case TermOp::Add:
        return bin(Op::Add);
      case TermOp::Sub:
        return bin(Op::Sub);
      case TermOp::Mul:
        return bin(Op::Mul);
      case TermOp::Eq:
        return bin(Op::Eq);
      case TermOp::Neq:
        return bin(Op::Neq);
      case TermOp::Lt:
        return bin(Op::Lt);
      case TermOp::Leq:
        return bin(Op::Leq);
      case TermOp::Gt:
        return bin(Op::Gt);
      case TermOp::Geq:
        return bin(Op::Geq);
      case TermOp::And:
        return bin(Op::And);
      case TermOp::Or:
        return bin(Op::Or);
      case TermOp::Not:
        return Expr::negation(lower_term(t.children()[0]));
    }
    return Expr::lit(0);
  }

  ir::Block lower(const Specification& s) {
    ir::Block out;
    lower_into(s, out);
    return out;
  }

  void lower_into(const Specification& s, ir::Block& out) {
    const auto& node = s.node().value;
    if (const auto* r = std::get_if<ReadInput>(&node)) {
      const Slots& slot = slots_.at(r->var.str());
      out.push_back({ir::ReadInto{slot.target}});
      if (slot.list >= 0) out.push_back({ir::Append{slot.list, slot.target}});
      const Expr value = Expr::variable(slot.target);
      if (slot.sum >= 0) {
        out.push_back({ir::Assign{slot.sum, Expr::binary(Op::Add, Expr::variable(slot.sum), value)}});
      }
      if (slot.product >= 0) {
        out.push_back({ir::Assign{slot.product, Expr::binary(Op::Mul, Expr::variable(slot.product), value)}});
      }
      if (slot.length >= 0) {
        out.push_back({ir::Assign{slot.length, Expr::binary(Op::Add, Expr::variable(slot.length), Expr::lit(1))}});
      }
    } else if (const auto* w = std::get_if<WriteOutput>(&node)) {
      // Programs commit to the first alternative, like interpret.
      const OutputPattern& first = w->alternatives.front();
      if (first.empty()) return;
      ir::Print print;
      for (const auto& seg : first.segments()) {
        if (const auto* text = std::get_if<std::string>(&seg)) {
          print.segments.emplace_back(*text);
        } else {
          print.segments.emplace_back(lower_term(std::get<Term>(seg)));
        }
      }
      out.push_back({std::move(print)});
    } else if (const auto* b = std::get_if<Branch>(&node)) {
      out.push_back({ir::If{lower_term(b->condition), lower(b->if_true), lower(b->if_false)}});
    } else if (const auto* l = std::get_if<TillExit>(&node)) {
      out.push_back({ir::Loop{lower(l->body)}});
    } else if (std::holds_alternative<Exit>(node)) {
      out.push_back({ir::Break{}});
    } else if (const auto* q = std::get_if<Seq>(&node)) {
      lower_into(q->first, out);
      lower_into(q->second, out);
    }
  }

  // Initializers go right before the first top-level statement touching the
  // variable, so reads that set up loop bounds come first.
  ir::Block place_inits(ir::Block body) {
    std::vector<ir::Stmt> pending;
    std::vector<int> pending_vars;
    for (std::size_t i = 0; i < prog_.vars.size(); ++i) {
      const int id = static_cast<int>(i);
      if (prog_.vars[i].role == Role::List) {
        pending.push_back({ir::InitList{id}});
        pending_vars.push_back(id);
      }
    }
    for (const auto& acc : prog_.state_vars) {
      pending.push_back({ir::Assign{acc.var, Expr::lit(acc.init)}});
      pending_vars.push_back(acc.var);
    }
    std::vector<bool> placed(pending.size(), false);
    ir::Block out;
    for (auto& st : body) {
      std::set<int> touched = ir::touched_vars(st);
      // A read into a list's temp starts the list.
      for (int v : std::set<int>(touched)) {
        const ir::Variable& var = prog_.vars[static_cast<std::size_t>(v)];
        if (var.role == Role::Temp && slots_.at(var.source).list >= 0) touched.insert(slots_.at(var.source).list);
      }
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (!placed[k] && touched.count(pending_vars[k])) {
          out.push_back(pending[k]);
          placed[k] = true;
        }
      }
      out.push_back(std::move(st));
    }
    return out;
  }

  struct Slots {
    int target = -1;   // receives reads
    int current = -1;  // scalar holding curr(v), if any
    int list = -1;
    int sum = -1, product = -1, length = -1;
  };

  ProgramStyle style_;
  ir::Program prog_;
  std::vector<Varname> order_;
  std::map<std::string, VarUse> uses_;
  std::map<std::string, Slots> slots_;
};

}  // namespace

ir::Program lower_to_ir(const Specification& s, ProgramStyle style) { return Lowering(s, style).take(); }

bool supports_fold_style(const Specification& s) {
  try {
    lower_to_ir(s, ProgramStyle::FoldState);
    return true;
  } catch (const StyleUnsupported&) {
    return false;
  }
}

}  // namespace iospec
