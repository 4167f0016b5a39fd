#include <optional>

#include "iospec/codegen.hpp"

namespace iospec {

namespace {

using ir::Expr;
using ir::Op;

struct Cell {
  std::optional<std::int64_t> scalar;
  // Set when the assigned expression failed; reported once the value is used.
  std::optional<std::string> poison;
  std::vector<std::int64_t> list;
};

class IrMachine {
 public:
  IrMachine(const ir::Program& p, std::span<const std::int64_t> feed, const Limits& limits)
      : prog_(p), feed_(feed), limits_(limits), cells_(p.vars.size()) {}

  Trace run() {
    exec(prog_.body);
    return std::move(trace_);
  }

 private:
  enum class Flow { Normal, Break };

  [[noreturn]] void eval_error(const std::string& what) { throw InterpretError(InterpretErrorKind::Eval, what); }

  std::int64_t scalar(int var) {
    const auto& c = cells_.at(static_cast<std::size_t>(var));
    if (c.poison) eval_error(*c.poison);
    if (!c.scalar) eval_error("variable '" + prog_.vars[static_cast<std::size_t>(var)].hint + "' has no value");
    return *c.scalar;
  }

  std::int64_t arith(Op op, std::int64_t a, std::int64_t b) {
    try {
      if (op == Op::Add) return checked_add(a, b);
      if (op == Op::Sub) return checked_sub(a, b);
      return checked_mul(a, b);
    } catch (const EvalError& e) {
      eval_error(e.what());
    }
  }

  std::int64_t eval_int(const Expr& e) {
    switch (e.op) {
      case Op::Lit:
        return e.value;
      case Op::Var:
        return scalar(e.var);
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
        return arith(e.op, eval_int(e.kids[0]), eval_int(e.kids[1]));
      case Op::Sum:
      case Op::Product: {
        std::int64_t acc = e.op == Op::Sum ? 0 : 1;
        for (auto v : list(e.var)) acc = arith(e.op == Op::Sum ? Op::Add : Op::Mul, acc, v);
        return acc;
      }
      case Op::Length:
        return static_cast<std::int64_t>(list(e.var).size());
      case Op::Last: {
        const auto& l = list(e.var);
        if (l.empty()) eval_error("last of an empty list");
        return l.back();
      }
      default:
        return eval_bool(e) ? 1 : 0;
    }
  }

  bool eval_bool(const Expr& e) {
    switch (e.op) {
      case Op::Eq:
        return eval_int(e.kids[0]) == eval_int(e.kids[1]);
      case Op::Neq:
        return eval_int(e.kids[0]) != eval_int(e.kids[1]);
      case Op::Lt:
        return eval_int(e.kids[0]) < eval_int(e.kids[1]);
      case Op::Leq:
        return eval_int(e.kids[0]) <= eval_int(e.kids[1]);
      case Op::Gt:
        return eval_int(e.kids[0]) > eval_int(e.kids[1]);
      case Op::Geq:
        return eval_int(e.kids[0]) >= eval_int(e.kids[1]);
      case Op::And:
        return eval_bool(e.kids[0]) && eval_bool(e.kids[1]);
      case Op::Or:
        return eval_bool(e.kids[0]) || eval_bool(e.kids[1]);
      case Op::Not:
        return !eval_bool(e.kids[0]);
      default:
        eval_error("integer used as condition");
    }
  }

  const std::vector<std::int64_t>& list(int var) { return cells_.at(static_cast<std::size_t>(var)).list; }

  void event() {
    if (static_cast<std::int64_t>(trace_.events.size()) > limits_.max_trace_events) {
      throw InterpretError(InterpretErrorKind::TraceLimitExceeded, "trace event limit exceeded");
    }
  }

  std::string render(const ir::Print& p) {
    std::string line;
    for (const auto& seg : p.segments) {
      if (const auto* text = std::get_if<std::string>(&seg)) {
        line += *text;
        continue;
      }
      const Expr& e = std::get<Expr>(seg);
      if (e.op == Op::Var && prog_.vars[static_cast<std::size_t>(e.var)].is_list()) {
        line += show_list(list(e.var));
      } else {
        line += std::to_string(eval_int(e));
      }
    }
    return line;
  }

  Flow exec(const ir::Block& block) {
    for (const auto& st : block) {
      if (exec_one(st) == Flow::Break) return Flow::Break;
    }
    return Flow::Normal;
  }

  Flow exec_one(const ir::Stmt& st) {
    const auto& n = st.node;
    if (const auto* r = std::get_if<ir::ReadInto>(&n)) {
      if (next_ >= feed_.size()) {
        throw InterpretError(InterpretErrorKind::InputsExhausted,
                             "no input left for '" + prog_.vars[static_cast<std::size_t>(r->var)].hint + "'");
      }
      const std::int64_t v = feed_[next_++];
      cells_[static_cast<std::size_t>(r->var)].scalar = v;
      cells_[static_cast<std::size_t>(r->var)].poison.reset();
      trace_.input(v);
      event();
    } else if (const auto* a = std::get_if<ir::Append>(&n)) {
      cells_[static_cast<std::size_t>(a->list)].list.push_back(scalar(a->value));
    } else if (const auto* a = std::get_if<ir::Assign>(&n)) {
      // Accumulators update on every read while the specification evaluates
      // its aggregate only where used, so failures are deferred to the use.
      Cell& cell = cells_[static_cast<std::size_t>(a->var)];
      try {
        cell.scalar = eval_int(a->value);
        cell.poison.reset();
      } catch (const InterpretError& e) {
        cell.scalar.reset();
        cell.poison = e.what();
      }
    } else if (const auto* i = std::get_if<ir::InitList>(&n)) {
      cells_[static_cast<std::size_t>(i->list)].list.clear();
    } else if (const auto* p = std::get_if<ir::Print>(&n)) {
      trace_.output(render(*p));
      event();
    } else if (const auto* b = std::get_if<ir::If>(&n)) {
      return exec(eval_bool(b->cond) ? b->then_body : b->else_body);
    } else if (const auto* l = std::get_if<ir::Loop>(&n)) {
      for (std::int64_t iterations = 1;; ++iterations) {
        if (iterations > limits_.max_loop_iterations) {
          throw InterpretError(InterpretErrorKind::LoopLimitExceeded, "loop iteration limit exceeded");
        }
        if (exec(l->body) == Flow::Break) break;
      }
    } else if (std::holds_alternative<ir::Break>(n)) {
      return Flow::Break;
    }
    return Flow::Normal;
  }

  const ir::Program& prog_;
  std::span<const std::int64_t> feed_;
  std::size_t next_ = 0;
  const Limits& limits_;
  std::vector<Cell> cells_;
  Trace trace_;
};

bool block_ok(const ir::Block& b, bool in_loop, bool fold) {
  for (const auto& st : b) {
    if (std::holds_alternative<ir::Break>(st.node) && !in_loop) return false;
    if ((std::holds_alternative<ir::InitList>(st.node) || std::holds_alternative<ir::Append>(st.node)) && fold) {
      return false;
    }
    if (const auto* i = std::get_if<ir::If>(&st.node)) {
      if (!block_ok(i->then_body, in_loop, fold) || !block_ok(i->else_body, in_loop, fold)) return false;
    }
    if (const auto* l = std::get_if<ir::Loop>(&st.node)) {
      if (!block_ok(l->body, true, fold)) return false;
    }
  }
  return true;
}

}  // namespace

Trace interpret_ir(const ir::Program& p, std::span<const std::int64_t> feed, const Limits& limits) {
  return IrMachine(p, feed, limits).run();
}

bool ir_well_formed(const ir::Program& p) {
  const bool fold = p.style == ProgramStyle::FoldState;
  if (fold) {
    for (const auto& v : p.vars) {
      if (v.is_list()) return false;
    }
  }
  return block_ok(p.body, false, fold);
}

}  // namespace iospec
