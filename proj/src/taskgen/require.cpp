#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "iospec/dsl.hpp"
#include "iospec/taskgen.hpp"

namespace iospec {

using json = nlohmann::ordered_json;

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

Require wrap(auto descriptor) { return Require{std::move(descriptor)}; }

std::vector<std::int64_t> as_set(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string show_list(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string show_bool(bool b) { return b ? "True" : "False"; }

}  // namespace

std::string_view tag_of(const Require& r) {
  return std::visit(overloaded{
                        [](const req::ExactInteger&) { return "ExactInteger"; },
                        [](const req::ExactTrace&) { return "ExactTrace"; },
                        [](const req::ExactIndexSet&) { return "ExactIndexSet"; },
                        [](const req::ExactBool&) { return "ExactBool"; },
                        [](const req::Behavior&) { return "Behavior"; },
                        [](const req::SampleTrace&) { return "SampleTrace"; },
                        [](const req::ProducingTraces&) { return "ProducingTraces"; },
                        [](const req::TriggeringDifference&) { return "TriggeringDifference"; },
                        [](const req::NoSubstring&) { return "NoSubstring"; },
                        [](const req::AlwaysPass&) { return "AlwaysPass"; },
                        [](const req::Conjunction&) { return "Conjunction"; },
                    },
                    r.descriptor);
}

Require exact_answer(std::int64_t expected) { return wrap(req::ExactInteger{expected}); }
Require exact_answer(Trace expected) { return wrap(req::ExactTrace{std::move(expected)}); }
Require exact_answer(std::vector<std::int64_t> expected_indices) {
  return wrap(req::ExactIndexSet{as_set(std::move(expected_indices))});
}
Require exact_answer(bool expected) { return wrap(req::ExactBool{expected}); }
Require behavior(Specification s, std::size_t n_tests, std::uint64_t seed) {
  return wrap(req::Behavior{std::move(s), n_tests, seed});
}
Require sample_trace(Specification s) { return wrap(req::SampleTrace{std::move(s)}); }
Require producing_traces(std::vector<Trace> ts) { return wrap(req::ProducingTraces{std::move(ts)}); }
Require triggering_difference(Specification s1, Specification s2) {
  return wrap(req::TriggeringDifference{std::move(s1), std::move(s2)});
}
Require no_lists(std::string needle) { return wrap(req::NoSubstring{std::move(needle)}); }
Require always_pass() { return wrap(req::AlwaysPass{}); }
Require compiling_program(std::vector<std::string> checker_command) {
  return wrap(req::AlwaysPass{std::move(checker_command)});
}
Require conj(Require left, Require right) {
  return wrap(req::Conjunction{std::make_shared<const Require>(std::move(left)),
                               std::make_shared<const Require>(std::move(right))});
}

// ---- JSON ----

namespace {

json encode(const Require& r) {
  json j;
  j["type"] = std::string(tag_of(r));
  std::visit(overloaded{
                 [&](const req::ExactInteger& d) { j["expected"] = d.expected; },
                 [&](const req::ExactTrace& d) { j["expected"] = display(d.expected); },
                 [&](const req::ExactIndexSet& d) { j["expected"] = d.expected; },
                 [&](const req::ExactBool& d) { j["expected"] = d.expected; },
                 [&](const req::Behavior& d) {
                   j["spec"] = print_spec(d.spec);
                   j["nTests"] = d.n_tests;
                   j["seed"] = d.seed;
                 },
                 [&](const req::SampleTrace& d) { j["spec"] = print_spec(d.spec); },
                 [&](const req::ProducingTraces& d) {
                   j["traces"] = json::array();
                   for (const auto& t : d.traces) j["traces"].push_back(display(t));
                 },
                 [&](const req::TriggeringDifference& d) {
                   j["spec1"] = print_spec(d.spec1);
                   j["spec2"] = print_spec(d.spec2);
                 },
                 [&](const req::NoSubstring& d) { j["needle"] = d.needle; },
                 [&](const req::AlwaysPass& d) {
                   if (!d.command.empty()) j["command"] = d.command;
                 },
                 [&](const req::Conjunction& d) {
                   j["left"] = encode(*d.left);
                   j["right"] = encode(*d.right);
                 },
             },
             r.descriptor);
  return j;
}

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) throw RequirementFormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

Specification spec_field(const json& j, const char* name) {
  try {
    return parse_spec(field(j, name).get<std::string>());
  } catch (const RequirementFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw RequirementFormatError(std::string("field '") + name + "': " + e.what());
  }
}

Trace trace_text(const json& j) {
  try {
    return parse_trace(j.get<std::string>());
  } catch (const std::exception& e) {
    throw RequirementFormatError(std::string("bad trace: ") + e.what());
  }
}

Require decode(const json& j) {
  if (!j.is_object()) throw RequirementFormatError("requirement must be a JSON object");
  const std::string type = field(j, "type").get<std::string>();
  if (type == "ExactInteger") return exact_answer(field(j, "expected").get<std::int64_t>());
  if (type == "ExactTrace") return exact_answer(trace_text(field(j, "expected")));
  if (type == "ExactIndexSet") return exact_answer(field(j, "expected").get<std::vector<std::int64_t>>());
  if (type == "ExactBool") return exact_answer(field(j, "expected").get<bool>());
  if (type == "Behavior") {
    return behavior(spec_field(j, "spec"), field(j, "nTests").get<std::size_t>(),
                    field(j, "seed").get<std::uint64_t>());
  }
  if (type == "SampleTrace") return sample_trace(spec_field(j, "spec"));
  if (type == "ProducingTraces") {
    std::vector<Trace> ts;
    for (const auto& t : field(j, "traces")) ts.push_back(trace_text(t));
    return producing_traces(std::move(ts));
  }
  if (type == "TriggeringDifference") return triggering_difference(spec_field(j, "spec1"), spec_field(j, "spec2"));
  if (type == "NoSubstring") return no_lists(field(j, "needle").get<std::string>());
  if (type == "AlwaysPass") {
    return compiling_program(j.contains("command") ? j.at("command").get<std::vector<std::string>>()
                                                   : std::vector<std::string>{});
  }
  if (type == "Conjunction") return conj(decode(field(j, "left")), decode(field(j, "right")));
  throw RequirementFormatError("unknown requirement type '" + type + "'");
}

}  // namespace

std::string to_json(const Require& r) { return encode(r).dump(2); }

Require require_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RequirementFormatError(e.what());
  }
  try {
    return decode(j);
  } catch (const json::exception& e) {
    throw RequirementFormatError(e.what());
  }
}

bool operator==(const Require& a, const Require& b) { return encode(a) == encode(b); }

// ---- solutions ----

std::string_view kind_of(const Solution& s) {
  return std::visit(overloaded{
                        [](const answer::TraceAnswer&) { return "trace"; },
                        [](const answer::InputsAnswer&) { return "inputs"; },
                        [](const answer::IndexAnswer&) { return "indices"; },
                        [](const answer::BoolAnswer&) { return "bool"; },
                        [](const answer::IntegerAnswer&) { return "integer"; },
                        [](const answer::CodeAnswer&) { return "code"; },
                        [](const answer::ProgramAnswer&) { return "program"; },
                        [](const answer::PairAnswer&) { return "pair"; },
                    },
                    s.value);
}

Solution pair_answer(Solution left, Solution right) {
  return Solution{answer::PairAnswer{std::make_shared<const Solution>(std::move(left)),
                                     std::make_shared<const Solution>(std::move(right))}};
}

namespace {

TestResult pass() { return {}; }

TestResult fail(std::string message, std::optional<std::vector<std::int64_t>> feed = std::nullopt) {
  return {false, std::move(message), std::move(feed)};
}

template <class Answer>
const Answer& expect(const Require& r, const Solution& s) {
  if (const auto* a = std::get_if<Answer>(&s.value)) return *a;
  throw SolutionKindMismatch(std::string(tag_of(r)) + " cannot check a " + std::string(kind_of(s)) + " answer");
}

TestResult check_program_traces(const req::ProducingTraces& d, const Candidate& c) {
  for (std::size_t i = 0; i < d.traces.size(); ++i) {
    const Trace& expected = d.traces[i];
    const std::vector<std::int64_t> feed = inputs_of(expected);
    RunOutcome outcome = run_candidate(c, feed);
    const std::string label = "trace " + std::to_string(i + 1) + ": ";
    if (auto* t = std::get_if<Trace>(&outcome)) {
      if (std::holds_alternative<ExternalProgram>(c)) *t = align_events(*t, expected);
      if (*t == expected) continue;
      return fail(label + display(*t) + " /= " + display(expected), feed);
    }
    return fail(label + describe(outcome) + " /= " + display(expected), feed);
  }
  return pass();
}

TestResult check_difference(const req::TriggeringDifference& d, const std::vector<std::int64_t>& feed) {
  if (distinguishes(d.spec1, d.spec2, feed, true)) return pass();
  std::string runs[2];
  std::optional<Trace> traces[2];
  const Specification* specs[2] = {&d.spec1, &d.spec2};
  for (int k = 0; k < 2; ++k) {
    try {
      traces[k] = interpret(*specs[k], feed);
    } catch (const InterpretError& e) {
      runs[k] = e.what();
    }
  }
  if (traces[0] && traces[1]) return fail("both programs produce " + display(*traces[0]), feed);
  std::string msg = "inputs " + show_list(feed) + " do not drive both programs to completion";
  for (int k = 0; k < 2; ++k) {
    if (!traces[k]) msg += "; program " + std::to_string(k + 1) + ": " + runs[k];
  }
  return fail(msg, feed);
}

TestResult check_with_command(const std::vector<std::string>& command, const std::string& code) {
  char path[] = "/tmp/iospec-answer-XXXXXX";
  const int fd = ::mkstemp(path);
  if (fd < 0) return fail("cannot create a temporary file for the checker");
  ::close(fd);
  {
    std::ofstream out(path, std::ios::binary);
    out << code;
  }
  ExternalProgram checker{command.front(), {command.begin() + 1, command.end()}, 30000};
  checker.args.emplace_back(path);
  const RunOutcome outcome = run_candidate(checker, {});
  std::remove(path);
  if (std::holds_alternative<Trace>(outcome)) return pass();
  return fail("checker rejected the code: " + describe(outcome));
}

}  // namespace

TestResult check_solution(const Require& r, const Solution& s) {
  return std::visit(
      overloaded{
          [&](const req::ExactInteger& d) {
            const auto& a = expect<answer::IntegerAnswer>(r, s);
            if (a.value == d.expected) return pass();
            return fail(std::to_string(a.value) + " /= " + std::to_string(d.expected));
          },
          [&](const req::ExactTrace& d) {
            const auto& a = expect<answer::TraceAnswer>(r, s);
            if (a.trace == d.expected) return pass();
            return fail(display(a.trace) + " /= " + display(d.expected));
          },
          [&](const req::ExactIndexSet& d) {
            const auto given = as_set(expect<answer::IndexAnswer>(r, s).indices);
            if (given == d.expected) return pass();
            return fail(show_list(given) + " /= " + show_list(d.expected));
          },
          [&](const req::ExactBool& d) {
            const auto& a = expect<answer::BoolAnswer>(r, s);
            if (a.value == d.expected) return pass();
            return fail(show_bool(a.value) + " /= " + show_bool(d.expected));
          },
          [&](const req::Behavior& d) {
            const auto& a = expect<answer::ProgramAnswer>(r, s);
            Rng rng(d.seed);
            const TestReport report = fulfills(a.program, d.spec, d.n_tests, rng);
            if (!report.first_failure) return pass();
            const TestFailure& f = *report.first_failure;
            return fail("Falsified (after " + std::to_string(report.total) + " test" +
                            (report.total == 1 ? "" : "s") + "): inputs " + show_list(f.feed) + " gave " +
                            describe(f.actual) + ", which is not an accepted trace",
                        f.feed);
          },
          [&](const req::SampleTrace& d) {
            const auto& a = expect<answer::TraceAnswer>(r, s);
            if (accept(d.spec, a.trace)) return pass();
            return fail(display(a.trace) + " is not a possible trace");
          },
          [&](const req::ProducingTraces& d) {
            return check_program_traces(d, expect<answer::ProgramAnswer>(r, s).program);
          },
          [&](const req::TriggeringDifference& d) {
            return check_difference(d, expect<answer::InputsAnswer>(r, s).inputs);
          },
          [&](const req::NoSubstring& d) {
            const auto& a = expect<answer::CodeAnswer>(r, s);
            if (a.code.find(d.needle) == std::string::npos) return pass();
            return fail("code contains \"" + d.needle + "\"");
          },
          [&](const req::AlwaysPass& d) {
            if (d.command.empty()) return pass();
            return check_with_command(d.command, expect<answer::CodeAnswer>(r, s).code);
          },
          [&](const req::Conjunction& d) {
            const auto& a = expect<answer::PairAnswer>(r, s);
            TestResult left = check_solution(*d.left, *a.left);
            if (!left.passed) {
              left.message = "left component: " + left.message;
              return left;
            }
            TestResult right = check_solution(*d.right, *a.right);
            if (!right.passed) right.message = "right component: " + right.message;
            return right;
          },
      },
      r.descriptor);
}

}  // namespace iospec
