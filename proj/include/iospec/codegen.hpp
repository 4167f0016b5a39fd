#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iospec/rng.hpp"
#include "iospec/semantics.hpp"
#include "iospec/spec.hpp"

namespace iospec {

enum class ProgramStyle { ListAccum, FoldState };

std::string_view to_string(ProgramStyle style);

namespace ir {

enum class Role {
  Input,       // scalar holding the latest value of a specification variable
  Temp,        // scalar receiving a read before it is folded or appended
  List,        // full history of a specification variable
  SumAcc,
  ProductAcc,
  LengthAcc,
};

struct Variable {
  std::string hint;    // preferred display name
  Role role;
  std::string source;  // specification variable it derives from
  bool is_list() const { return role == Role::List; }
};

enum class Op {
  Lit,
  Var,
  Add,
  Sub,
  Mul,
  Sum,      // over a list variable
  Product,  // over a list variable
  Length,   // over a list variable
  Last,     // over a list variable
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

struct Expr {
  Op op = Op::Lit;
  std::int64_t value = 0;  // Lit
  int var = -1;            // Var, and the list operand of Sum/Product/Length/Last
  std::vector<Expr> kids;

  static Expr lit(std::int64_t v) { return Expr{Op::Lit, v, -1, {}}; }
  static Expr variable(int v) { return Expr{Op::Var, 0, v, {}}; }
  static Expr on_list(Op op, int list) { return Expr{op, 0, list, {}}; }
  static Expr binary(Op op, Expr a, Expr b) { return Expr{op, 0, -1, {std::move(a), std::move(b)}}; }
  static Expr negation(Expr a) { return Expr{Op::Not, 0, -1, {std::move(a)}}; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct ReadInto {
  int var;
};
struct Append {
  int list;
  int value;
};
struct Assign {
  int var;
  Expr value;
};
struct InitList {
  int list;
};
using PrintSegment = std::variant<std::string, Expr>;
struct Print {
  std::vector<PrintSegment> segments;
};
struct If {
  Expr cond;
  Block then_body;
  Block else_body;
};
struct Loop {
  Block body;
};
struct Break {};

struct Stmt {
  std::variant<ReadInto, Append, Assign, InitList, Print, If, Loop, Break> node;
};

// Fold-style state variable: starts at `init`, updated after every read of
// `source`.
struct Accumulator {
  int var;
  std::int64_t init;
  Op fold;  // Sum, Product or Length
  std::string source;
};

struct Program {
  ProgramStyle style = ProgramStyle::ListAccum;
  std::vector<Variable> vars;
  Block body;
  std::vector<Accumulator> state_vars;
};

}  // namespace ir

class StyleUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoHolableConstruct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RetriesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowers a well-formed specification. ListAccum always succeeds; FoldState
/// throws StyleUnsupported when a history is used other than through
/// sum/prod/len.
ir::Program lower_to_ir(const Specification& s, ProgramStyle style);

// True when FoldState lowering succeeds.
bool supports_fold_style(const Specification& s);

/// Executes the program; errors are reported as InterpretError.
Trace interpret_ir(const ir::Program& p, std::span<const std::int64_t> feed, const Limits& limits = {});

// Structural check: every Break is inside a Loop, FoldState has no lists.
bool ir_well_formed(const ir::Program& p);

enum class Surface { Haskell, Python };
enum class HolePolicy { None, ReadsAndPrints, LoopBody };

struct RenderTarget {
  Surface surface = Surface::Haskell;
  HolePolicy holes = HolePolicy::None;
};

struct Rendering {
  std::string text;
  // Original text of each hole, in order of appearance.
  std::vector<std::string> fills;
};

/// Program text. The rng only picks cosmetics (helper and variable names)
/// for the Haskell surface; Python output does not depend on it.
std::string render_program(const ir::Program& p, Surface surface, Rng& rng);

/// Same draw from rng as render_program, with policy-selected constructs
/// replaced by "???". Throws NoHolableConstruct when nothing matches.
Rendering render_with_holes(const ir::Program& p, RenderTarget target, Rng& rng);

// Substitutes fills for "???" in order.
std::string restore_holes(const Rendering& r);

// Haskell text in fold style when supported, list style otherwise.
std::string haskell_program(const Specification& s, Rng& rng);
std::string python_program(const Specification& s, Rng& rng);

/// Two Haskell renderings with distinct text; up to 100 redraws of the second.
std::pair<std::string, std::string> different_programs(const Specification& s1, const Specification& s2, Rng& rng);

}  // namespace iospec
