#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iospec {

/// Identifier `[a-zA-Z][a-zA-Z0-9_]*` naming a historic variable.
class Varname {
 public:
  explicit Varname(std::string name);

  const std::string& str() const { return name_; }

  static bool valid(std::string_view name);

  friend bool operator==(const Varname&, const Varname&) = default;
  friend auto operator<=>(const Varname&, const Varname&) = default;

 private:
  std::string name_;
};

enum class TermKind { Int, IntList, Bool };

enum class TermOp {
  GetAll,
  GetCurrent,
  IntLit,
  Add,
  Sub,
  Mul,
  Sum,
  Product,
  Length,
  Eq,
  Neq,
  Lt,
  Leq,
  Gt,
  Geq,
  And,
  Or,
  Not,
};

std::string_view to_string(TermKind kind);

// Raised when a term is assembled from children of the wrong kind.
class KindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntactically inspectable expression over historic variables.
///
/// Terms are immutable trees; copies share structure. The only way to build
/// one is through the factories below, which enforce the kind discipline.
class Term {
 public:
  TermOp op() const { return node_->op; }
  TermKind kind() const { return node_->kind; }
  // Variable of GetAll / GetCurrent.
  const Varname& var() const;
  // Value of IntLit.
  std::int64_t literal() const { return node_->literal; }
  std::span<const Term> children() const { return node_->children; }

  static Term make(TermOp op, std::vector<Term> children);
  static Term variable(TermOp op, std::string_view name);
  static Term literal_int(std::int64_t value);

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermOp op;
    TermKind kind;
    std::vector<Varname> var;  // zero or one entry
    std::int64_t literal = 0;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

bool is_comparison(TermOp op);

// Factories, named after the surface syntax.
namespace term {
Term all(std::string_view var);
Term curr(std::string_view var);
Term lit(std::int64_t value);
Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term sum(Term list);
Term prod(Term list);
Term len(Term list);
Term eq(Term a, Term b);
Term neq(Term a, Term b);
Term lt(Term a, Term b);
Term leq(Term a, Term b);
Term gt(Term a, Term b);
Term geq(Term a, Term b);
Term conj(Term a, Term b);
Term disj(Term a, Term b);
Term negate(Term a);
Term compare(TermOp op, Term a, Term b);
}  // namespace term

/// Variable histories, oldest value first.
class Environment {
 public:
  // Binds var to the empty history unless it is already bound.
  void declare(const Varname& var) { bindings_[var.str()]; }
  void append(const Varname& var, std::int64_t value) { bindings_[var.str()].push_back(value); }
  // nullptr when the variable has never been bound.
  const std::vector<std::int64_t>* history(std::string_view var) const;
  const std::map<std::string, std::vector<std::int64_t>, std::less<>>& bindings() const {
    return bindings_;
  }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::map<std::string, std::vector<std::int64_t>, std::less<>> bindings_;
};

using Value = std::variant<std::int64_t, std::vector<std::int64_t>, bool>;

enum class EvalErrorKind { UnboundVariable, EmptyHistory, Overflow };

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

// Checked 64-bit arithmetic; throws EvalError(Overflow) instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

Value eval_term(const Term& t, const Environment& env);
std::int64_t eval_int(const Term& t, const Environment& env);
bool eval_bool(const Term& t, const Environment& env);

// Haskell-style list display, e.g. "[1,-2,3]".
std::string show_list(std::span<const std::int64_t> values);

}  // namespace iospec
