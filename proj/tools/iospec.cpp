// iospec: generate specifications, programs and exercises; check answers.
//
// Exit codes: 0 pass, 1 check failed, 2 usage or parse error, 3 runtime error.
#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iospec/codegen.hpp"
#include "iospec/dsl.hpp"
#include "iospec/harness.hpp"
#include "iospec/semantics.hpp"
#include "iospec/specgen.hpp"
#include "iospec/taskgen.hpp"

namespace fs = std::filesystem;
using namespace iospec;

namespace {

enum Exit { kPass = 0, kFailed = 1, kUsage = 2, kRuntime = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

Specification load_spec(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_spec(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message());
  } catch (const WellFormednessError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::int64_t> parse_ints(std::string text, bool commas) {
  if (commas) std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<std::int64_t> out;
  std::string word;
  while (in >> word) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(word, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != word.size()) throw UsageError("not an integer: '" + word + "'");
  }
  return out;
}

struct AnswerSource {
  std::optional<std::string> text;
  std::vector<std::string> command;
  int timeout_ms = 5000;
  Pacing pacing = Pacing::Eager;
};

const std::string& need_text(const AnswerSource& a, std::string_view what) {
  if (!a.text) throw UsageError("this task expects " + std::string(what) + " (--answer or --answer-file)");
  return *a.text;
}

Solution build_answer(const Require& r, const AnswerSource& a) {
  const std::string_view tag = tag_of(r);
  if (tag == "ExactInteger") {
    const auto v = parse_ints(need_text(a, "an integer"), false);
    if (v.size() != 1) throw UsageError("expected a single integer");
    return {answer::IntegerAnswer{v.front()}};
  }
  if (tag == "ExactTrace" || tag == "SampleTrace") {
    try {
      return {answer::TraceAnswer{parse_trace(trim(need_text(a, "a trace")))}};
    } catch (const TraceParseError& e) {
      throw UsageError(std::string("bad trace: ") + e.what());
    }
  }
  if (tag == "ExactIndexSet") return {answer::IndexAnswer{parse_ints(need_text(a, "choice numbers"), true)}};
  if (tag == "ExactBool") {
    std::string word = trim(need_text(a, "yes or no"));
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
    if (word == "yes" || word == "true") return {answer::BoolAnswer{true}};
    if (word == "no" || word == "false") return {answer::BoolAnswer{false}};
    throw UsageError("expected yes or no, got '" + word + "'");
  }
  if (tag == "TriggeringDifference") return {answer::InputsAnswer{parse_ints(need_text(a, "input values"), false)}};
  if (tag == "ProducingTraces" || tag == "Behavior") {
    if (a.command.empty()) throw UsageError("this task expects a program: -- CMD [ARGS...]");
    ExternalProgram p{a.command.front(), {a.command.begin() + 1, a.command.end()}, a.timeout_ms, a.pacing};
    return {answer::ProgramAnswer{std::move(p)}};
  }
  if (tag == "NoSubstring") return {answer::CodeAnswer{need_text(a, "program text")}};
  if (tag == "AlwaysPass") return {answer::CodeAnswer{a.text.value_or("")}};
  const auto& both = std::get<req::Conjunction>(r.descriptor);
  return pair_answer(build_answer(*both.left, a), build_answer(*both.right, a));
}

int report_result(const TestResult& result) {
  if (result.passed) {
    std::cout << "+++ OK, passed.\n";
    return kPass;
  }
  std::cerr << "*** Failed! " << result.message << "\n";
  return kFailed;
}

std::optional<ProgramStyle> style_named(const std::string& s) {
  if (s == "list") return ProgramStyle::ListAccum;
  if (s == "fold") return ProgramStyle::FoldState;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  // Everything after "--" is a candidate command line.
  std::vector<char*> own_args;
  std::vector<std::string> command;
  for (int i = 0; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--") {
      command.assign(argv + i + 1, argv + argc);
      break;
    }
    own_args.push_back(argv[i]);
  }

  CLI::App app{"Console I/O specifications, programs and exercises"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int size = 3;
  std::string file, trace_text, style = "list", lang = "haskell", holes = "none", name, out_dir;
  std::size_t count = 5;
  std::size_t n_tests = 100;
  int timeout_ms = 5000;
  bool strict = false, parallel = false;
  std::optional<std::string> answer_text, answer_file;

  auto* gen = app.add_subcommand("gen", "Generate specifications");
  gen->require_subcommand(1);
  auto* gen_spec = gen->add_subcommand("spec", "Print a random specification");
  gen_spec->add_option("--seed", seed)->required();
  gen_spec->add_option("--size", size)->check(CLI::PositiveNumber);
  auto* gen_pair = gen->add_subcommand("pair", "Print two similar specifications and a witness feed");
  gen_pair->add_option("--seed", seed)->required();

  auto* render = app.add_subcommand("render", "Render a specification as a program");
  render->add_option("file", file)->required();
  render->add_option("--style", style)->check(CLI::IsMember({"list", "fold"}));
  render->add_option("--lang", lang)->check(CLI::IsMember({"haskell", "python"}));
  render->add_option("--holes", holes)->check(CLI::IsMember({"none", "io", "loop"}));
  render->add_option("--seed", seed);

  auto* traces = app.add_subcommand("traces", "Print example traces");
  traces->add_option("file", file)->required();
  traces->add_option("-n", count)->check(CLI::PositiveNumber);
  traces->add_option("--seed", seed);

  auto* accept_cmd = app.add_subcommand("accept", "Check a trace against a specification");
  accept_cmd->add_option("file", file)->required();
  accept_cmd->add_option("--trace", trace_text)->required();

  auto* task = app.add_subcommand("task", "Create or grade exercises");
  task->require_subcommand(1);
  auto* task_new = task->add_subcommand("new", "Write question.txt and requirement.json");
  task_new->add_option("name", name)->required();
  task_new->add_option("--seed", seed)->required();
  task_new->add_option("-o", out_dir)->required();
  auto* task_check = task->add_subcommand("check", "Grade an answer; a program answer follows --");
  task_check->add_option("dir", out_dir)->required();
  auto* answer_group = task_check->add_option_group("answer");
  answer_group->add_option("--answer", answer_text);
  answer_group->add_option("--answer-file", answer_file);
  answer_group->require_option(0, 1);
  task_check->add_option("--timeout", timeout_ms)->check(CLI::PositiveNumber);
  task_check->add_flag("--strict-pacing", strict);

  auto* test_program = app.add_subcommand("test-program", "Test a command against a specification");
  test_program->add_option("file", file)->required();
  test_program->add_option("-n", n_tests)->check(CLI::PositiveNumber);
  test_program->add_option("--seed", seed);
  test_program->add_option("--timeout", timeout_ms)->check(CLI::PositiveNumber);
  test_program->add_flag("--strict-pacing", strict);
  test_program->add_flag("--parallel", parallel);

  auto* practice = app.add_subcommand("practice", "Pose one exercise and grade the answer read from stdin");
  practice->add_option("name", name)->required();
  practice->add_option("--seed", seed);

  try {
    app.parse(static_cast<int>(own_args.size()), own_args.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  const Pacing pacing = strict ? Pacing::Strict : Pacing::Eager;
  try {
    if (gen_spec->parsed()) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.size_hint = size;
      std::cout << print_spec(random_specification(cfg));
      return kPass;
    }
    if (gen_pair->parsed()) {
      GenConfig cfg;
      cfg.seed = seed;
      const SimilarPair pair = similar_specifications(cfg);
      std::cout << print_spec(pair.first) << "---\n" << print_spec(pair.second) << "---\nwitness:";
      for (auto v : pair.witness) std::cout << ' ' << v;
      std::cout << "\n";
      return kPass;
    }
    if (render->parsed()) {
      const Specification s = load_spec(file);
      const ir::Program p = lower_to_ir(s, *style_named(style));
      RenderTarget target;
      target.surface = lang == "python" ? Surface::Python : Surface::Haskell;
      target.holes = holes == "io" ? HolePolicy::ReadsAndPrints : holes == "loop" ? HolePolicy::LoopBody : HolePolicy::None;
      Rng rng(seed);
      std::cout << render_with_holes(p, target, rng).text << "\n";
      return kPass;
    }
    if (traces->parsed()) {
      const Specification s = load_spec(file);
      Rng rng(seed);
      for (const auto& t : example_traces(s, count, rng)) std::cout << display(t) << "\n";
      return kPass;
    }
    if (accept_cmd->parsed()) {
      const Specification s = load_spec(file);
      Trace t;
      try {
        t = parse_trace(trace_text);
      } catch (const TraceParseError& e) {
        throw UsageError(std::string("bad trace: ") + e.what());
      }
      const bool ok = accept(s, t);
      std::cout << (ok ? "accepted" : "rejected") << "\n";
      return ok ? kPass : kFailed;
    }
    if (task_new->parsed()) {
      TaskInstance inst;
      try {
        inst = generate_task_instance(builtin_template(name), seed);
      } catch (const UnknownTemplate& e) {
        throw UsageError(e.what());
      }
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "question.txt", inst.question + "\n");
      write_file(fs::path(out_dir) / "requirement.json", to_json(inst.requirement) + "\n");
      std::cout << inst.question << "\n";
      return kPass;
    }
    if (task_check->parsed()) {
      Require r;
      try {
        r = require_from_json(read_file((fs::path(out_dir) / "requirement.json").string()));
      } catch (const RequirementFormatError& e) {
        throw UsageError(std::string("requirement.json: ") + e.what());
      }
      AnswerSource source{answer_text, command, timeout_ms, pacing};
      if (answer_file) source.text = read_file(*answer_file);
      const Solution solution = build_answer(r, source);
      return report_result(check_solution(r, solution));
    }
    if (test_program->parsed()) {
      const Specification s = load_spec(file);
      if (command.empty()) throw UsageError("missing program: -- CMD [ARGS...]");
      const ExternalProgram prog{command.front(), {command.begin() + 1, command.end()}, timeout_ms, pacing};
      Rng rng(seed);
      const TestReport report = fulfills(prog, s, n_tests, rng, parallel ? Execution::Parallel : Execution::Serial);
      if (!report.first_failure) {
        std::cout << "+++ OK, passed " << report.passed << " tests.\n";
        return kPass;
      }
      const TestFailure& f = *report.first_failure;
      std::cerr << "*** Failed! Falsified (after " << report.total << (report.total == 1 ? " test" : " tests")
                << "):\ninputs:";
      for (auto v : f.feed) std::cerr << ' ' << v;
      std::cerr << "\nactual: " << describe(f.actual) << "\n";
      return kFailed;
    }
    if (practice->parsed()) {
      TaskInstance inst;
      try {
        inst = generate_task_instance(builtin_template(name), seed);
      } catch (const UnknownTemplate& e) {
        throw UsageError(e.what());
      }
      std::cout << inst.question << "\n" << std::flush;
      std::ostringstream in;
      in << std::cin.rdbuf();
      AnswerSource source;
      source.text = in.str();
      // Program answers are given as a shell command line.
      if (!trim(in.str()).empty()) source.command = {"sh", "-c", trim(in.str())};
      return report_result(check_solution(inst.requirement, build_answer(inst.requirement, source)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolutionKindMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
