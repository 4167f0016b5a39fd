#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iospec/term.hpp"

namespace iospec {

class Rng;

/// Bounds used when drawing from the unbounded value sets.
struct SamplerBounds {
  std::int64_t nats_max = 100;
  std::int64_t ints_min = -100;
  std::int64_t ints_max = 100;
};

/// Admissible values for a read: all integers, naturals, or a closed range.
class ValueSet {
 public:
  enum class Kind { Ints, Nats, Range };

  static ValueSet ints() { return ValueSet(Kind::Ints, 0, 0); }
  static ValueSet nats() { return ValueSet(Kind::Nats, 0, 0); }
  // Requires lo <= hi.
  static ValueSet range(std::int64_t lo, std::int64_t hi);

  Kind kind() const { return kind_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

  bool contains(std::int64_t v) const;

  // Sampling interval for this set under the given bounds.
  std::pair<std::int64_t, std::int64_t> sampling_interval(const SamplerBounds& bounds) const;
  std::int64_t sample(Rng& rng, const SamplerBounds& bounds = {}) const;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;

 private:
  ValueSet(Kind kind, std::int64_t lo, std::int64_t hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  std::int64_t lo_;
  std::int64_t hi_;
};

/// Expected shape of one output line: literal text interleaved with term splices.
///
/// Kept canonical: empty literals are dropped and adjacent literals merged, so
/// the pattern with zero segments is exactly the optional-output alternative.
class OutputPattern {
 public:
  using Segment = std::variant<std::string, Term>;

  OutputPattern() = default;
  // Throws std::invalid_argument for newline characters in literals and
  // KindError for boolean splices.
  explicit OutputPattern(std::vector<Segment> segments);

  static OutputPattern skip() { return OutputPattern(); }
  static OutputPattern text(std::string literal);
  static OutputPattern splice(Term t);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  // Rendered line; throws EvalError.
  std::string render(const Environment& env) const;

  friend bool operator==(const OutputPattern&, const OutputPattern&) = default;

 private:
  std::vector<Segment> segments_;
};

class Specification;

struct Nop {
  friend bool operator==(const Nop&, const Nop&) = default;
};
struct Exit {
  friend bool operator==(const Exit&, const Exit&) = default;
};
struct ReadInput;
struct WriteOutput;
struct Branch;
struct TillExit;
struct Seq;

struct SpecNode;

/// Immutable specification tree. A default-constructed value is Nop.
///
/// Sequential composition is kept right-nested and Nop-free, so structural
/// equality (operator==) coincides with equality of canonical forms.
class Specification {
 public:
  Specification() = default;

  const SpecNode& node() const;
  bool is_nop() const;

  template <class T>
  const T* as() const;

  friend bool operator==(const Specification& a, const Specification& b);

 private:
  friend Specification make_node(SpecNode node);
  explicit Specification(std::shared_ptr<const SpecNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const SpecNode> node_;
};

struct ReadInput {
  Varname var;
  ValueSet values;
  friend bool operator==(const ReadInput&, const ReadInput&) = default;
};

struct WriteOutput {
  std::vector<OutputPattern> alternatives;
  friend bool operator==(const WriteOutput&, const WriteOutput&) = default;
};

// Note the order: the first branch applies when the condition is false.
struct Branch {
  Term condition;
  Specification if_false;
  Specification if_true;
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct TillExit {
  Specification body;
  friend bool operator==(const TillExit&, const TillExit&) = default;
};

struct Seq {
  Specification first;
  Specification second;
  friend bool operator==(const Seq&, const Seq&) = default;
};

struct SpecNode {
  std::variant<Nop, ReadInput, WriteOutput, Branch, TillExit, Exit, Seq> value;
};

template <class T>
const T* Specification::as() const {
  return std::get_if<T>(&node().value);
}

Specification nop();
Specification read_input(std::string_view var, ValueSet values);
// Throws std::invalid_argument when there are no alternatives.
Specification write_output(std::vector<OutputPattern> alternatives);
Specification write_output(OutputPattern pattern);
// Throws KindError unless the condition is boolean.
Specification branch(Term condition, Specification if_false, Specification if_true);
Specification till_exit(Specification body);
Specification exit_loop();

// Monoid composition: Nop is eliminated, result is right-nested.
Specification seq(Specification a, Specification b);
Specification seq(std::initializer_list<Specification> parts);

// Statements of a right-nested Seq chain, in order (empty for Nop).
std::vector<Specification> statements(const Specification& s);

struct Violation {
  std::string path;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty when every invariant holds.
std::vector<Violation> well_formed(const Specification& s);

// Names read anywhere in s, in first-occurrence order.
std::vector<Varname> read_variables(const Specification& s);

// The count-then-sum specification used throughout the docs and tests:
//   read n : nats
//   loop { if (len(all(x)) == curr(n)) then { exit } else { read x : ints } }
//   write ["{sum(all(x))}"]
Specification example_specification();

}  // namespace iospec
