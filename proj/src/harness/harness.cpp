#include <algorithm>
#include <atomic>
#include <limits>

#include "harness_internal.hpp"

namespace iospec {

std::string_view to_string(RunErrorKind kind) {
  switch (kind) {
    case RunErrorKind::Timeout:
      return "Timeout";
    case RunErrorKind::NonzeroExit:
      return "NonzeroExit";
    case RunErrorKind::ExtraInputRequested:
      return "ExtraInputRequested";
    case RunErrorKind::IOFailure:
      return "IOFailure";
  }
  return "?";
}

std::string describe(const RunOutcome& outcome) {
  if (const auto* t = std::get_if<Trace>(&outcome)) return display(*t);
  const auto& e = std::get<RunError>(outcome);
  return std::string(to_string(e.kind)) + ": " + e.message;
}

namespace {

// Internal programs fail the way a console program would.
RunError from_interpret_error(const InterpretError& e) {
  switch (e.kind()) {
    case InterpretErrorKind::InputsExhausted:
      return {RunErrorKind::ExtraInputRequested, 0, e.what()};
    case InterpretErrorKind::LoopLimitExceeded:
    case InterpretErrorKind::TraceLimitExceeded:
      return {RunErrorKind::Timeout, 0, e.what()};
    default:
      return {RunErrorKind::NonzeroExit, 1, e.what()};
  }
}

}  // namespace

RunOutcome run_candidate(const Candidate& c, std::span<const std::int64_t> feed, const Limits& limits) {
  if (const auto* p = std::get_if<ir::Program>(&c)) {
    try {
      return interpret_ir(*p, feed, limits);
    } catch (const InterpretError& e) {
      return from_interpret_error(e);
    }
  }
  return detail::run_external(std::get<ExternalProgram>(c), feed);
}

Trace align_events(const Trace& observed, const Trace& shape) {
  const std::vector<std::int64_t> inputs = inputs_of(observed);
  if (inputs != inputs_of(shape)) return observed;
  std::vector<std::string> outputs;
  for (const auto& e : observed.events) {
    if (const auto* o = std::get_if<OutputEvent>(&e)) outputs.push_back(o->text);
  }
  Trace t;
  t.terminated = observed.terminated;
  std::size_t in = 0, out = 0;
  for (const auto& e : shape.events) {
    if (std::holds_alternative<InputEvent>(e)) {
      t.input(inputs[in++]);
    } else if (out < outputs.size()) {
      t.output(outputs[out++]);
    }
  }
  for (; out < outputs.size(); ++out) t.output(outputs[out]);
  return t;
}

Trace attribute_events(const Specification& s, const Trace& observed, const Limits& limits) {
  try {
    return align_events(observed, interpret(s, inputs_of(observed), limits));
  } catch (const InterpretError&) {
    return observed;
  }
}

bool run_is_accepted(const Candidate& c, const Specification& s, std::span<const std::int64_t> feed,
                     RunOutcome* actual, const Limits& limits) {
  RunOutcome outcome = run_candidate(c, feed, limits);
  bool ok = false;
  if (auto* t = std::get_if<Trace>(&outcome)) {
    if (std::holds_alternative<ExternalProgram>(c)) *t = attribute_events(s, *t, limits);
    ok = accept(s, *t, limits);
  }
  if (actual) *actual = std::move(outcome);
  return ok;
}

TestReport fulfills(const Candidate& c, const Specification& s, std::size_t n_tests, Rng& rng, Execution exec,
                    const Limits& limits) {
  // Feeds are drawn up front so both execution modes test the same cases.
  std::vector<std::vector<std::int64_t>> feeds;
  feeds.reserve(n_tests);
  for (std::size_t i = 0; i < n_tests; ++i) feeds.push_back(sample_inputs(s, rng, limits));

  TestReport report;
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n_tests; ++i) {
      RunOutcome actual;
      ++report.total;
      if (run_is_accepted(c, s, feeds[i], &actual, limits)) {
        ++report.passed;
        continue;
      }
      report.first_failure = TestFailure{i, feeds[i], std::move(actual)};
      break;
    }
    return report;
  }

  const auto n = static_cast<std::int64_t>(n_tests);
  std::atomic<std::int64_t> lowest_failure{n};
  std::vector<RunOutcome> outcomes(n_tests);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    if (i > lowest_failure.load()) continue;
    const auto k = static_cast<std::size_t>(i);
    if (!run_is_accepted(c, s, feeds[k], &outcomes[k], limits)) {
      std::int64_t seen = lowest_failure.load();
      while (i < seen && !lowest_failure.compare_exchange_weak(seen, i)) {
      }
    }
  }
  const std::int64_t fail = lowest_failure.load();
  if (fail == n) {
    report.total = report.passed = n_tests;
  } else {
    const auto k = static_cast<std::size_t>(fail);
    report.total = k + 1;
    report.passed = k;
    report.first_failure = TestFailure{k, feeds[k], std::move(outcomes[k])};
  }
  return report;
}

namespace {

struct SpecTally {
  std::size_t cases = 0, accepted = 0, sampling_failures = 0;
  std::size_t first_rejected_feed = std::numeric_limits<std::size_t>::max();
};

SpecTally check_one(const Specification& s, std::size_t feeds, std::uint64_t seed, const Limits& limits) {
  SpecTally tally;
  Rng rng(seed);
  for (std::size_t j = 0; j < feeds; ++j) {
    std::vector<std::int64_t> feed;
    try {
      feed = sample_inputs(s, rng, limits);
    } catch (const SamplingFailed&) {
      ++tally.sampling_failures;
      continue;
    }
    ++tally.cases;
    bool ok = false;
    try {
      ok = accept(s, interpret(s, feed, limits), limits);
    } catch (const InterpretError&) {
    }
    if (ok) {
      ++tally.accepted;
    } else if (tally.first_rejected_feed == std::numeric_limits<std::size_t>::max()) {
      tally.first_rejected_feed = j;
    }
  }
  return tally;
}

}  // namespace

SoundnessReport soundness_check(std::span<const Specification> specs, std::size_t feeds_per_spec, std::uint64_t seed,
                                Execution exec, const Limits& limits) {
  std::vector<SpecTally> tallies(specs.size());
  const auto n = static_cast<std::int64_t>(specs.size());
  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      tallies[i] = check_one(specs[i], feeds_per_spec, mix_seed(seed, static_cast<std::uint64_t>(i)), limits);
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      tallies[i] = check_one(specs[i], feeds_per_spec, mix_seed(seed, static_cast<std::uint64_t>(i)), limits);
    }
  }
  SoundnessReport report;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    report.cases += tallies[i].cases;
    report.accepted += tallies[i].accepted;
    report.sampling_failures += tallies[i].sampling_failures;
    if (!report.first_rejection && tallies[i].first_rejected_feed != std::numeric_limits<std::size_t>::max()) {
      report.first_rejection = std::make_pair(i, tallies[i].first_rejected_feed);
    }
  }
  return report;
}

}  // namespace iospec
