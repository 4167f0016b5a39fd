#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "iospec/rng.hpp"
#include "iospec/spec.hpp"
#include "iospec/trace.hpp"

namespace iospec {

/// Termination guards shared by every executor.
struct Limits {
  std::int64_t max_loop_iterations = 1000;  // per loop entry
  std::int64_t max_trace_events = 10000;
};

enum class InterpretErrorKind {
  InputsExhausted,
  ValueOutsideSet,
  LoopLimitExceeded,
  TraceLimitExceeded,
  Eval,
};

std::string_view to_string(InterpretErrorKind kind);

class InterpretError : public std::runtime_error {
 public:
  InterpretError(InterpretErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  InterpretErrorKind kind() const { return kind_; }

 private:
  InterpretErrorKind kind_;
};

/// Runs s on the feed, always taking the first output alternative.
///
/// Feed values left over when s completes are ignored.
Trace interpret(const Specification& s, std::span<const std::int64_t> feed, const Limits& limits = {});

struct SamplerConfig {
  SamplerBounds bounds;
  // Upper end of the narrowed range for loop-count variables.
  std::int64_t count_max = 10;
  // Whole-run attempts before giving up.
  int retries = 10;
};

class SamplingFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws a feed that makes s run to completion.
///
/// Two steering heuristics keep loops short: variables compared against
/// len(all(_)) draw from [0, count_max], and reads guarded by a
/// `curr(v) <op> literal` exit test hit the exit value with probability 1/4
/// (always after 10 iterations of the enclosing loop).
std::vector<std::int64_t> sample_inputs(const Specification& s, Rng& rng, const Limits& limits = {},
                                        const SamplerConfig& config = {});

/// n traces of s, shortest feed first; duplicates are avoided where possible.
std::vector<Trace> example_traces(const Specification& s, std::size_t n, Rng& rng, const Limits& limits = {},
                                  const SamplerConfig& config = {});

/// Whether s permits t, considering every output alternative.
bool accept(const Specification& s, const Trace& t, const Limits& limits = {});

}  // namespace iospec
