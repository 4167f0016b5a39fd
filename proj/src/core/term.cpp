#include "iospec/term.hpp"

#include <cctype>

namespace iospec {

Varname::Varname(std::string name) : name_(std::move(name)) {
  if (!valid(name_)) throw std::invalid_argument("invalid variable name '" + name_ + "'");
}

bool Varname::valid(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Int:
      return "integer";
    case TermKind::IntList:
      return "integer list";
    case TermKind::Bool:
      return "boolean";
  }
  return "?";
}

bool is_comparison(TermOp op) {
  switch (op) {
    case TermOp::Eq:
    case TermOp::Neq:
    case TermOp::Lt:
    case TermOp::Leq:
    case TermOp::Gt:
    case TermOp::Geq:
      return true;
    default:
      return false;
  }
}

namespace {

struct Signature {
  TermKind result;
  std::vector<TermKind> args;
};

Signature signature(TermOp op) {
  using K = TermKind;
  switch (op) {
    case TermOp::GetAll:
      return {K::IntList, {}};
    case TermOp::GetCurrent:
    case TermOp::IntLit:
      return {K::Int, {}};
    case TermOp::Add:
    case TermOp::Sub:
    case TermOp::Mul:
      return {K::Int, {K::Int, K::Int}};
    case TermOp::Sum:
    case TermOp::Product:
    case TermOp::Length:
      return {K::Int, {K::IntList}};
    case TermOp::Eq:
    case TermOp::Neq:
    case TermOp::Lt:
    case TermOp::Leq:
    case TermOp::Gt:
    case TermOp::Geq:
      return {K::Bool, {K::Int, K::Int}};
    case TermOp::And:
    case TermOp::Or:
      return {K::Bool, {K::Bool, K::Bool}};
    case TermOp::Not:
      return {K::Bool, {K::Bool}};
  }
  throw std::logic_error("unknown term operator");
}

}  // namespace

const Varname& Term::var() const {
  if (node_->var.empty()) throw std::logic_error("term has no variable");
  return node_->var.front();
}

Term Term::make(TermOp op, std::vector<Term> children) {
  const Signature sig = signature(op);
  if (sig.args.empty()) throw std::invalid_argument("operator takes no children");
  if (children.size() != sig.args.size()) throw KindError("wrong number of operands");
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].kind() != sig.args[i]) {
      throw KindError("expected " + std::string(to_string(sig.args[i])) + " operand, got " +
                      std::string(to_string(children[i].kind())));
    }
  }
  return Term(std::make_shared<const Node>(Node{op, sig.result, {}, 0, std::move(children)}));
}

Term Term::variable(TermOp op, std::string_view name) {
  if (op != TermOp::GetAll && op != TermOp::GetCurrent) {
    throw std::invalid_argument("not a variable accessor");
  }
  return Term(std::make_shared<const Node>(
      Node{op, signature(op).result, {Varname(std::string(name))}, 0, {}}));
}

Term Term::literal_int(std::int64_t value) {
  return Term(std::make_shared<const Node>(Node{TermOp::IntLit, TermKind::Int, {}, value, {}}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.var == y.var && x.literal == y.literal && x.children == y.children;
}

namespace term {
Term all(std::string_view var) { return Term::variable(TermOp::GetAll, var); }
Term curr(std::string_view var) { return Term::variable(TermOp::GetCurrent, var); }
Term lit(std::int64_t value) { return Term::literal_int(value); }
Term add(Term a, Term b) { return Term::make(TermOp::Add, {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return Term::make(TermOp::Sub, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return Term::make(TermOp::Mul, {std::move(a), std::move(b)}); }
Term sum(Term list) { return Term::make(TermOp::Sum, {std::move(list)}); }
Term prod(Term list) { return Term::make(TermOp::Product, {std::move(list)}); }
Term len(Term list) { return Term::make(TermOp::Length, {std::move(list)}); }
Term eq(Term a, Term b) { return Term::make(TermOp::Eq, {std::move(a), std::move(b)}); }
Term neq(Term a, Term b) { return Term::make(TermOp::Neq, {std::move(a), std::move(b)}); }
Term lt(Term a, Term b) { return Term::make(TermOp::Lt, {std::move(a), std::move(b)}); }
Term leq(Term a, Term b) { return Term::make(TermOp::Leq, {std::move(a), std::move(b)}); }
Term gt(Term a, Term b) { return Term::make(TermOp::Gt, {std::move(a), std::move(b)}); }
Term geq(Term a, Term b) { return Term::make(TermOp::Geq, {std::move(a), std::move(b)}); }
Term conj(Term a, Term b) { return Term::make(TermOp::And, {std::move(a), std::move(b)}); }
Term disj(Term a, Term b) { return Term::make(TermOp::Or, {std::move(a), std::move(b)}); }
Term negate(Term a) { return Term::make(TermOp::Not, {std::move(a)}); }
Term compare(TermOp op, Term a, Term b) {
  if (!is_comparison(op)) throw std::invalid_argument("not a comparison operator");
  return Term::make(op, {std::move(a), std::move(b)});
}
}  // namespace term

const std::vector<std::int64_t>* Environment::history(std::string_view var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError(EvalErrorKind::Overflow, "integer overflow in +");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw EvalError(EvalErrorKind::Overflow, "integer overflow in -");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError(EvalErrorKind::Overflow, "integer overflow in *");
  return r;
}

namespace {

const std::vector<std::int64_t>& lookup(const Term& t, const Environment& env) {
  const auto* h = env.history(t.var().str());
  if (h == nullptr) {
    throw EvalError(EvalErrorKind::UnboundVariable, "unbound variable '" + t.var().str() + "'");
  }
  return *h;
}

std::vector<std::int64_t> eval_list(const Term& t, const Environment& env) {
  return std::get<std::vector<std::int64_t>>(eval_term(t, env));
}

}  // namespace

Value eval_term(const Term& t, const Environment& env) {
  auto kids = t.children();
  switch (t.op()) {
    case TermOp::GetAll:
      return lookup(t, env);
    case TermOp::GetCurrent: {
      const auto& h = lookup(t, env);
      if (h.empty()) {
        throw EvalError(EvalErrorKind::EmptyHistory, "variable '" + t.var().str() + "' has no value yet");
      }
      return h.back();
    }
    case TermOp::IntLit:
      return t.literal();
    case TermOp::Add:
      return checked_add(eval_int(kids[0], env), eval_int(kids[1], env));
    case TermOp::Sub:
      return checked_sub(eval_int(kids[0], env), eval_int(kids[1], env));
    case TermOp::Mul:
      return checked_mul(eval_int(kids[0], env), eval_int(kids[1], env));
    case TermOp::Sum: {
      std::int64_t acc = 0;
      for (auto v : eval_list(kids[0], env)) acc = checked_add(acc, v);
      return acc;
    }
    case TermOp::Product: {
      std::int64_t acc = 1;
      for (auto v : eval_list(kids[0], env)) acc = checked_mul(acc, v);
      return acc;
    }
    case TermOp::Length:
      return static_cast<std::int64_t>(eval_list(kids[0], env).size());
    case TermOp::Eq:
      return eval_int(kids[0], env) == eval_int(kids[1], env);
    case TermOp::Neq:
      return eval_int(kids[0], env) != eval_int(kids[1], env);
    case TermOp::Lt:
      return eval_int(kids[0], env) < eval_int(kids[1], env);
    case TermOp::Leq:
      return eval_int(kids[0], env) <= eval_int(kids[1], env);
    case TermOp::Gt:
      return eval_int(kids[0], env) > eval_int(kids[1], env);
    case TermOp::Geq:
      return eval_int(kids[0], env) >= eval_int(kids[1], env);
    case TermOp::And:
      return eval_bool(kids[0], env) && eval_bool(kids[1], env);
    case TermOp::Or:
      return eval_bool(kids[0], env) || eval_bool(kids[1], env);
    case TermOp::Not:
      return !eval_bool(kids[0], env);
  }
  throw std::logic_error("unknown term operator");
}

std::int64_t eval_int(const Term& t, const Environment& env) {
  return std::get<std::int64_t>(eval_term(t, env));
}

bool eval_bool(const Term& t, const Environment& env) { return std::get<bool>(eval_term(t, env)); }

std::string show_list(std::span<const std::int64_t> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  out += ']';
  return out;
}

}  // namespace iospec
