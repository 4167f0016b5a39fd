#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iospec/harness.hpp"
#include "iospec/rng.hpp"
#include "iospec/spec.hpp"
#include "iospec/specgen.hpp"
#include "iospec/trace.hpp"

namespace iospec {

struct Require;

namespace req {

struct ExactInteger {
  std::int64_t expected = 0;
};
struct ExactTrace {
  Trace expected;
};
struct ExactIndexSet {
  std::vector<std::int64_t> expected;  // 1-based
};
struct ExactBool {
  bool expected = false;
};
struct Behavior {
  Specification spec;
  std::size_t n_tests = 100;
  std::uint64_t seed = 0;
};
struct SampleTrace {
  Specification spec;
};
struct ProducingTraces {
  std::vector<Trace> traces;
};
struct TriggeringDifference {
  Specification spec1;
  Specification spec2;
};
struct NoSubstring {
  std::string needle = "++";
};
// With a command, code answers are written to a file whose path is appended
// to the command line; exit code 0 passes.
struct AlwaysPass {
  std::vector<std::string> command;
};
struct Conjunction {
  std::shared_ptr<const Require> left;
  std::shared_ptr<const Require> right;
};

}  // namespace req

/// Serializable predicate on a solution.
struct Require {
  std::variant<req::ExactInteger, req::ExactTrace, req::ExactIndexSet, req::ExactBool, req::Behavior, req::SampleTrace,
               req::ProducingTraces, req::TriggeringDifference, req::NoSubstring, req::AlwaysPass, req::Conjunction>
      descriptor;
};

std::string_view tag_of(const Require& r);

Require exact_answer(std::int64_t expected);
Require exact_answer(Trace expected);
Require exact_answer(std::vector<std::int64_t> expected_indices);
Require exact_answer(bool expected);
Require behavior(Specification s, std::size_t n_tests = 100, std::uint64_t seed = 0);
Require sample_trace(Specification s);
Require producing_traces(std::vector<Trace> ts);
Require triggering_difference(Specification s1, Specification s2);
Require no_lists(std::string needle = "++");
Require always_pass();
Require compiling_program(std::vector<std::string> checker_command = {});
Require conj(Require left, Require right);

class RequirementFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const Require& r);
Require require_from_json(std::string_view text);

// Structural equality, via the JSON form.
bool operator==(const Require& a, const Require& b);

struct Solution;

namespace answer {

struct TraceAnswer {
  Trace trace;
};
struct InputsAnswer {
  std::vector<std::int64_t> inputs;
};
struct IndexAnswer {
  std::vector<std::int64_t> indices;
};
struct BoolAnswer {
  bool value = false;
};
struct IntegerAnswer {
  std::int64_t value = 0;
};
struct CodeAnswer {
  std::string code;
};
struct ProgramAnswer {
  Candidate program;
};
// Answers a Conjunction component-wise.
struct PairAnswer {
  std::shared_ptr<const Solution> left;
  std::shared_ptr<const Solution> right;
};

}  // namespace answer

struct Solution {
  std::variant<answer::TraceAnswer, answer::InputsAnswer, answer::IndexAnswer, answer::BoolAnswer,
               answer::IntegerAnswer, answer::CodeAnswer, answer::ProgramAnswer, answer::PairAnswer>
      value;
};

std::string_view kind_of(const Solution& s);
Solution pair_answer(Solution left, Solution right);

class SolutionKindMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TestResult {
  bool passed = true;
  std::string message;
  std::optional<std::vector<std::int64_t>> counterexample_inputs;
};

/// Failed exact answers read "<actual> /= <expected>".
TestResult check_solution(const Require& r, const Solution& s);

struct MultipleChoice {
  std::string description;            // "1) ...\n2) ...\n"
  std::vector<std::int64_t> solution;  // 1-based, ascending
};

/// Shuffles rights and wrongs together, keeps the first n and numbers them.
MultipleChoice multiple_choice(std::size_t n, const std::vector<std::string>& rights,
                               const std::vector<std::string>& wrongs, Rng& rng);

struct TaskInstance {
  std::string question;
  Require requirement;
  // Known-good answer; never part of the question.
  Solution reference;
};

using TaskParameter = std::variant<Specification, SimilarPair>;

struct TaskTemplate {
  std::string name;
  std::function<TaskParameter(Rng&)> parameter;
  std::function<TaskInstance(const TaskParameter&, Rng&)> instance;
};

class UnknownTemplate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& builtin_template_names();
TaskTemplate builtin_template(const std::string& name);

/// Parameter and instance draw from separate streams split off Rng(seed).
TaskInstance generate_task_instance(const TaskTemplate& t, std::uint64_t seed);

}  // namespace iospec
