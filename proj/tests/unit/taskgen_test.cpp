#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "iospec/dsl.hpp"
#include "iospec/taskgen.hpp"

namespace iospec {
namespace {

const std::vector<std::string> kExampleTraces = {"?0 !0 stop", "?1 ?-3 !-3 stop", "?2 ?1 ?5 !6 stop",
                                               "?2 ?10 ?10 !20 stop", "?2 ?-3 ?-2 !-5 stop"};

Solution trace_answer(const std::string& text) { return {answer::TraceAnswer{parse_trace(text)}}; }
Solution program(Candidate c) { return {answer::ProgramAnswer{std::move(c)}}; }
Solution indices(std::vector<std::int64_t> v) { return {answer::IndexAnswer{std::move(v)}}; }

TEST(ExactAnswer, IntegersAndTraces) {
  const TestResult wrong = check_solution(exact_answer(std::int64_t{5}), {answer::IntegerAnswer{4}});
  EXPECT_FALSE(wrong.passed);
  EXPECT_NE(wrong.message.find("4 /= 5"), std::string::npos);
  EXPECT_TRUE(check_solution(exact_answer(std::int64_t{9}), {answer::IntegerAnswer{9}}).passed);
  EXPECT_TRUE(check_solution(exact_answer(parse_trace("?0 !0 stop")), trace_answer("?0 !0 stop")).passed);
  EXPECT_FALSE(check_solution(exact_answer(true), {answer::BoolAnswer{false}}).passed);
}

TEST(ExactAnswer, IndexSetsCompareAsSets) {
  const Require r = exact_answer(std::vector<std::int64_t>{2, 5, 6});
  EXPECT_TRUE(check_solution(r, indices({2, 5, 6})).passed);
  EXPECT_TRUE(check_solution(r, indices({6, 2, 5})).passed);
  EXPECT_FALSE(check_solution(r, indices({2, 5})).passed);
  EXPECT_FALSE(check_solution(r, indices({2, 5, 6, 7})).passed);
  EXPECT_FALSE(check_solution(exact_answer(std::vector<std::int64_t>{}), indices({1})).passed);
}

TEST(CheckSolution, KindMismatchThrows) {
  EXPECT_THROW(check_solution(exact_answer(std::int64_t{5}), trace_answer("stop")), SolutionKindMismatch);
  EXPECT_THROW(check_solution(no_lists(), indices({1})), SolutionKindMismatch);
  EXPECT_THROW(check_solution(conj(always_pass(), always_pass()), indices({1})), SolutionKindMismatch);
  EXPECT_TRUE(check_solution(always_pass(), indices({1})).passed);
}

TEST(SampleTrace, AcceptsOnlyPossibleTraces) {
  const Require r = sample_trace(example_specification());
  EXPECT_TRUE(check_solution(r, trace_answer("?2 ?1 ?5 !6 stop")).passed);
  EXPECT_FALSE(check_solution(r, trace_answer("?0 !1 stop")).passed);
  EXPECT_TRUE(check_solution(sample_trace(nop()), trace_answer("stop")).passed);
}

TEST(Behavior, FaithfulAndConstantCandidates) {
  const Specification s = example_specification();
  EXPECT_TRUE(check_solution(behavior(s, 100, 1), program(lower_to_ir(s, ProgramStyle::ListAccum))).passed);
  const TestResult r =
      check_solution(behavior(s, 100, 1), program(lower_to_ir(parse_spec("write [\"0\"]\n"), ProgramStyle::ListAccum)));
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample_inputs.has_value());
  EXPECT_FALSE(r.message.empty());
  const ExternalProgram script{IOSPEC_TEST_DATA_DIR "/fixtures/example.sh"};
  EXPECT_TRUE(check_solution(behavior(s, 30, 2), program(script)).passed);
}

TEST(ProducingTraces, ExampleTracesAndHardCodedCandidate) {
  std::vector<Trace> ts;
  for (const auto& t : kExampleTraces) ts.push_back(parse_trace(t));
  const Specification s = example_specification();
  EXPECT_TRUE(check_solution(producing_traces(ts), program(lower_to_ir(s, ProgramStyle::FoldState))).passed);

  // Only right for the first trace.
  const TestResult r =
      check_solution(producing_traces(ts), program(ExternalProgram{"sh", {"-c", "read n; echo 0"}}));
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.message.find("trace 2"), std::string::npos);

  EXPECT_TRUE(check_solution(producing_traces({parse_trace("stop")}), program(lower_to_ir(nop(), ProgramStyle::ListAccum)))
                  .passed);
}

TEST(TriggeringDifference, WitnessesAndNonWitnesses) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    const SimilarPair pair = similar_specifications(cfg);
    const Require r = triggering_difference(pair.first, pair.second);
    EXPECT_TRUE(check_solution(r, {answer::InputsAnswer{pair.witness}}).passed) << seed;
    EXPECT_FALSE(check_solution(triggering_difference(pair.first, pair.first), {answer::InputsAnswer{pair.witness}})
                     .passed);
  }
  const Specification sum = example_specification();
  const Specification len = parse_spec(
      "read n : nats\nloop {\n  if (len(all(x)) == curr(n)) then { exit } else { read x : ints }\n}\n"
      "write [\"{len(all(x))}\"]\n");
  const Require r = triggering_difference(sum, len);
  EXPECT_TRUE(check_solution(r, {answer::InputsAnswer{{1, 9}}}).passed);
  const TestResult same = check_solution(r, {answer::InputsAnswer{{1, 1}}});
  EXPECT_FALSE(same.passed);
  EXPECT_NE(same.message.find("?1 ?1 !1 stop"), std::string::npos);
  EXPECT_FALSE(check_solution(r, {answer::InputsAnswer{{2, 1}}}).passed);  // too short for both
}

TEST(NoSubstring, NeedleAndConjunction) {
  EXPECT_FALSE(check_solution(no_lists(), {answer::CodeAnswer{"x ++ [v]"}}).passed);
  EXPECT_TRUE(check_solution(no_lists(), {answer::CodeAnswer{"loop (s+v) (l+1)"}}).passed);

  const Specification s = example_specification();
  const Require both = conj(behavior(s, 50, 4), no_lists());
  Rng rng(0);
  const ir::Program folded = lower_to_ir(s, ProgramStyle::FoldState);
  const Solution good = pair_answer(program(folded), {answer::CodeAnswer{render_program(folded, Surface::Haskell, rng)}});
  EXPECT_TRUE(check_solution(both, good).passed);

  const ir::Program listy = lower_to_ir(s, ProgramStyle::ListAccum);
  const Solution listed = pair_answer(program(listy), {answer::CodeAnswer{render_program(listy, Surface::Haskell, rng)}});
  const TestResult r = check_solution(both, listed);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.message.find("right component"), std::string::npos);
}

TEST(CompilingProgram, ExternalChecker) {
  const Require r = compiling_program({"sh", "-c", "grep -q main \"$0\""});
  EXPECT_TRUE(check_solution(r, {answer::CodeAnswer{"main = return ()"}}).passed);
  EXPECT_FALSE(check_solution(r, {answer::CodeAnswer{"nothing here"}}).passed);
  EXPECT_TRUE(check_solution(compiling_program(), {answer::CodeAnswer{"anything"}}).passed);
}

TEST(RequireJson, RoundTripsEveryDescriptor) {
  const Specification s = example_specification();
  const std::vector<Require> all = {
      exact_answer(std::int64_t{-3}),
      exact_answer(parse_trace("?1 !\"a b\" stop")),
      exact_answer(std::vector<std::int64_t>{1, 4}),
      exact_answer(false),
      behavior(s, 7, 18446744073709551615ULL),
      sample_trace(s),
      producing_traces({parse_trace("?0 !0 stop"), parse_trace("stop")}),
      triggering_difference(s, nop()),
      no_lists("foldr"),
      always_pass(),
      compiling_program({"ghc", "-fno-code"}),
      conj(behavior(s), conj(no_lists(), always_pass())),
  };
  for (const auto& r : all) {
    const Require back = require_from_json(to_json(r));
    EXPECT_EQ(back, r) << to_json(r);
    EXPECT_EQ(to_json(back), to_json(r));
  }
  EXPECT_EQ(std::string(tag_of(require_from_json(R"({"type": "AlwaysPass"})"))), "AlwaysPass");
  EXPECT_THROW(require_from_json("{"), RequirementFormatError);
  EXPECT_THROW(require_from_json(R"({"type": "Bogus"})"), RequirementFormatError);
  EXPECT_THROW(require_from_json(R"({"type": "ExactInteger"})"), RequirementFormatError);
  EXPECT_THROW(require_from_json(R"({"type": "SampleTrace", "spec": "read"})"), RequirementFormatError);
}

TEST(MultipleChoice, TwoItemsExhaustive) {
  std::set<std::int64_t> positions;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const MultipleChoice mc = multiple_choice(2, {"A"}, {"B"}, rng);
    ASSERT_EQ(mc.solution.size(), 1u);
    const std::string expected_line = std::to_string(mc.solution[0]) + ") A\n";
    EXPECT_NE(mc.description.find(expected_line), std::string::npos);
    positions.insert(mc.solution[0]);
  }
  EXPECT_EQ(positions, (std::set<std::int64_t>{1, 2}));
}

TEST(MultipleChoice, NoRightsAndOversizedRequests) {
  Rng rng(1);
  EXPECT_TRUE(multiple_choice(3, {}, {"x", "y"}, rng).solution.empty());
  const MultipleChoice all = multiple_choice(10, {"r"}, {"w"}, rng);
  EXPECT_EQ(std::count(all.description.begin(), all.description.end(), '\n'), 2);
}

TEST(MultipleChoice, SevenOfTen) {
  const std::vector<std::string> rights = {"r1", "r2", "r3", "r4", "r5"};
  const std::vector<std::string> wrongs = {"w1", "w2", "w3", "w4", "w5"};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const MultipleChoice mc = multiple_choice(7, rights, wrongs, rng);
    EXPECT_EQ(std::count(mc.description.begin(), mc.description.end(), '\n'), 7);
    EXPECT_TRUE(std::is_sorted(mc.solution.begin(), mc.solution.end()));
    for (auto i : mc.solution) {
      EXPECT_GE(i, 1);
      EXPECT_LE(i, 7);
    }
    EXPECT_TRUE(check_solution(exact_answer(mc.solution), indices(mc.solution)).passed);
  }
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

TEST(BuiltinTemplates, QuestionsOpenWithTheirProse) {
  const std::vector<std::pair<std::string, std::string>> prose = {
      {"trace1", "Give the interaction trace of the following program for input(s) ["},
      {"trace2", "Give a sequence of input values for which the two programs below behave differently!\n"},
      {"prog1", "Write a program capable of these interactions:\n(? represent inputs, ! represent outputs)\n"},
      {"prog2", "Complete the given skeleton into a program capable of these interactions:\n"},
      {"prog3", "Complete the following template into a syntactically correct program\n"
                "(replace the ??? with calls to readLn and print)\n"},
      {"prog4", "Re-write the given program s.t. it does not contain any accumulation list.\n"},
      {"prog5", "Re-implement the following Python program in Haskell:\n"},
      {"desc1", "Do the following two programs have the same behavior?\n"},
      {"desc2", "Which of the given trace can the program below produce?\n"},
  };
  for (const auto& [name, opening] : prose) {
    const TaskInstance inst = generate_task_instance(builtin_template(name), 3);
    EXPECT_TRUE(starts_with(inst.question, opening)) << name << ":\n" << inst.question;
  }
}

TEST(BuiltinTemplates, Wiring) {
  const auto tag = [](const std::string& name) {
    return std::string(tag_of(generate_task_instance(builtin_template(name), 1).requirement));
  };
  EXPECT_EQ(tag("trace1"), "ExactTrace");
  EXPECT_EQ(tag("trace2"), "TriggeringDifference");
  EXPECT_EQ(tag("prog1"), "ProducingTraces");
  EXPECT_EQ(tag("prog2"), "ProducingTraces");
  EXPECT_EQ(tag("prog3"), "AlwaysPass");
  EXPECT_EQ(tag("prog4"), "Conjunction");
  EXPECT_EQ(tag("prog5"), "Behavior");
  EXPECT_EQ(tag("desc1"), "ExactBool");
  EXPECT_EQ(tag("desc2"), "ExactIndexSet");

  const TaskInstance p4 = generate_task_instance(builtin_template("prog4"), 8);
  const auto& both = std::get<req::Conjunction>(p4.requirement.descriptor);
  EXPECT_EQ(std::get<req::Behavior>(both.left->descriptor).spec, example_specification());
  EXPECT_EQ(std::get<req::NoSubstring>(both.right->descriptor).needle, "++");
  EXPECT_NE(p4.question.find("++"), std::string::npos);

  const TaskInstance p2 = generate_task_instance(builtin_template("prog2"), 8);
  EXPECT_NE(p2.question.find("---\nmain :: IO ()\nmain = do\n  n <- readLn\n  let loop s m = undefined\n  loop 0 0"),
            std::string::npos);
  EXPECT_EQ(std::get<req::ProducingTraces>(p2.requirement.descriptor).traces.size(), 5u);

  const TaskInstance d2 = generate_task_instance(builtin_template("desc2"), 8);
  EXPECT_NE(d2.question.find("\n7) "), std::string::npos);

  EXPECT_THROW(builtin_template("bogus"), UnknownTemplate);
}

TEST(BuiltinTemplates, Deterministic) {
  for (const auto& name : builtin_template_names()) {
    const TaskInstance a = generate_task_instance(builtin_template(name), 42);
    const TaskInstance b = generate_task_instance(builtin_template(name), 42);
    EXPECT_EQ(a.question, b.question) << name;
    EXPECT_EQ(to_json(a.requirement), to_json(b.requirement)) << name;
    EXPECT_FALSE(a.question.empty());
  }
}

TEST(BuiltinTemplates, SolvableByReference) {
  for (const auto& name : builtin_template_names()) {
    const TaskTemplate t = builtin_template(name);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TaskInstance inst = generate_task_instance(t, seed);
      const TestResult r = check_solution(inst.requirement, inst.reference);
      EXPECT_TRUE(r.passed) << name << " seed " << seed << ": " << r.message;
    }
  }
}

TEST(BuiltinTemplates, Trace1ReferenceIsTheInterpretedTrace) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TaskInstance inst = generate_task_instance(builtin_template("trace1"), seed);
    const Trace& t = std::get<answer::TraceAnswer>(inst.reference.value).trace;
    const auto& r = std::get<req::ExactTrace>(inst.requirement.descriptor);
    EXPECT_EQ(t, r.expected);
    // The question names exactly the trace's inputs.
    std::string shown = "[";
    for (auto v : inputs_of(t)) shown += (shown.size() > 1 ? "," : "") + std::to_string(v);
    EXPECT_NE(inst.question.find(shown + "]!\n"), std::string::npos) << inst.question;
  }
}

TEST(BuiltinTemplates, Desc1CoinIsFair) {
  int same = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TaskInstance inst = generate_task_instance(builtin_template("desc1"), seed);
    same += std::get<req::ExactBool>(inst.requirement.descriptor).expected ? 1 : 0;
  }
  EXPECT_GE(same, 60);
  EXPECT_GE(200 - same, 60);
}

TEST(BuiltinTemplates, Desc2ChoicesAreRightExactlyWhenPermitted) {
  const TaskTemplate t = builtin_template("desc2");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TaskInstance inst = generate_task_instance(t, seed);
    // Same parameter stream as generate_task_instance.
    Rng root(seed);
    Rng parameter_rng = root.split();
    const Specification shown = std::get<SimilarPair>(t.parameter(parameter_rng)).first;

    const auto& expected = std::get<req::ExactIndexSet>(inst.requirement.descriptor).expected;
    std::istringstream lines(inst.question.substr(inst.question.find("\n1) ") + 1));
    std::string line;
    std::vector<std::int64_t> permitted;
    int listed = 0;
    while (std::getline(lines, line) && !line.empty()) {
      const auto close = line.find(") ");
      ++listed;
      if (accept(shown, parse_trace(line.substr(close + 2)))) permitted.push_back(std::stoll(line.substr(0, close)));
    }
    EXPECT_EQ(listed, 7) << inst.question;
    EXPECT_EQ(permitted, expected) << inst.question;
  }
}

}  // namespace
}  // namespace iospec
