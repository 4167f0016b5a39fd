#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "iospec/codegen.hpp"
#include "iospec/rng.hpp"
#include "iospec/semantics.hpp"
#include "iospec/spec.hpp"
#include "iospec/trace.hpp"

namespace iospec {

enum class Pacing {
  // The whole feed is written up front; stdin stays open so a read past the
  // feed can be detected.
  Eager,
  // One line is written each time the candidate blocks on an empty stdin.
  Strict,
};

struct ExternalProgram {
  std::string command;  // looked up on PATH
  std::vector<std::string> args;
  int timeout_ms = 5000;
  Pacing pacing = Pacing::Eager;
};

using Candidate = std::variant<ir::Program, ExternalProgram>;

enum class RunErrorKind { Timeout, NonzeroExit, ExtraInputRequested, IOFailure };

std::string_view to_string(RunErrorKind kind);

struct RunError {
  RunErrorKind kind;
  int exit_code = 0;  // NonzeroExit only; 128 + signal for killed processes
  std::string message;
  friend bool operator==(const RunError&, const RunError&) = default;
};

using RunOutcome = std::variant<Trace, RunError>;

std::string describe(const RunOutcome& outcome);

/// External candidates yield In events for the values they consumed and Out
/// events for their stdout lines, in observation order. Output buffering in
/// the candidate can move Out events later; fulfills re-attributes them.
RunOutcome run_candidate(const Candidate& c, std::span<const std::int64_t> feed, const Limits& limits = {});

/// Orders the inputs and outputs of an observed run the way s would have
/// interleaved them. Runs that s cannot replay are returned unchanged.
Trace attribute_events(const Specification& s, const Trace& observed, const Limits& limits = {});

/// Places the observed inputs and outputs into the event order of shape,
/// provided the inputs agree; otherwise returns observed unchanged.
Trace align_events(const Trace& observed, const Trace& shape);

enum class Execution { Serial, Parallel };

struct TestFailure {
  std::size_t index = 0;  // 0-based test number
  std::vector<std::int64_t> feed;
  RunOutcome actual;
};

struct TestReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::optional<TestFailure> first_failure;
};

/// Samples n_tests feeds from rng and checks that each run of c is accepted
/// by s. Testing stops at the first failure, so a failing report has
/// total = failure index + 1 whichever execution is used.
TestReport fulfills(const Candidate& c, const Specification& s, std::size_t n_tests, Rng& rng,
                    Execution exec = Execution::Serial, const Limits& limits = {});

/// Single test of the fulfills loop on a known feed.
bool run_is_accepted(const Candidate& c, const Specification& s, std::span<const std::int64_t> feed,
                     RunOutcome* actual = nullptr, const Limits& limits = {});

struct SoundnessReport {
  std::size_t cases = 0;
  std::size_t accepted = 0;
  std::size_t sampling_failures = 0;
  // First rejected case by (spec index, feed index).
  std::optional<std::pair<std::size_t, std::size_t>> first_rejection;
  friend bool operator==(const SoundnessReport&, const SoundnessReport&) = default;
};

/// accept(s, interpret(s, feed)) over feeds_per_spec sampled feeds per
/// specification; feeds for spec i come from Rng(mix_seed(seed, i)), so the
/// result does not depend on the execution mode.
SoundnessReport soundness_check(std::span<const Specification> specs, std::size_t feeds_per_spec, std::uint64_t seed,
                                Execution exec = Execution::Serial, const Limits& limits = {});

}  // namespace iospec
