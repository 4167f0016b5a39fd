#include <set>

#include "iospec/codegen.hpp"
#include "iospec/semantics.hpp"
#include "iospec/taskgen.hpp"

namespace iospec {

MultipleChoice multiple_choice(std::size_t n, const std::vector<std::string>& rights,
                               const std::vector<std::string>& wrongs, Rng& rng) {
  std::vector<std::pair<std::string, bool>> items;
  for (const auto& r : rights) items.emplace_back(r, true);
  for (const auto& w : wrongs) items.emplace_back(w, false);
  rng.shuffle(items);
  if (items.size() > n) items.resize(n);

  MultipleChoice mc;
  for (std::size_t i = 0; i < items.size(); ++i) {
    mc.description += std::to_string(i + 1) + ") " + items[i].first + "\n";
    if (items[i].second) mc.solution.push_back(static_cast<std::int64_t>(i + 1));
  }
  return mc;
}

namespace {

// Stacks two descriptions.
std::string above(const std::string& top, const std::string& bottom) { return top + "\n" + bottom; }

std::string unlines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::vector<std::string> displays(const std::vector<Trace>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(display(t));
  return out;
}

std::string show_inputs(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

ProgramStyle preferred_style(const Specification& s) {
  return supports_fold_style(s) ? ProgramStyle::FoldState : ProgramStyle::ListAccum;
}

Solution program_answer(const Specification& s) {
  return Solution{answer::ProgramAnswer{lower_to_ir(s, preferred_style(s))}};
}

const Specification& spec_of(const TaskParameter& p) { return std::get<Specification>(p); }
const SimilarPair& pair_of(const TaskParameter& p) { return std::get<SimilarPair>(p); }

TaskParameter random_spec_parameter(Rng& rng) {
  GenConfig cfg;
  cfg.seed = rng.next_u64();
  return random_specification(cfg);
}

TaskParameter fixed_example(Rng&) { return example_specification(); }

// Pairs whose programs read identically (only a value set differs) are
// redrawn: nothing in the rendered text would tell them apart.
TaskParameter similar_pair_parameter(Rng& rng) {
  Rng none(0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    GenConfig cfg;
    cfg.seed = rng.next_u64();
    SimilarPair pair = similar_specifications(cfg);
    if (python_program(pair.first, none) != python_program(pair.second, none)) return pair;
  }
  throw GenerationFailed("no similar pair with distinguishable programs in 20 draws");
}

TaskInstance trace1(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const std::string prog = haskell_program(s, rng);
  const Trace t = example_traces(s, 1, rng).front();
  return {above("Give the interaction trace of the following program for input(s) " + show_inputs(inputs_of(t)) + "!",
                prog),
          exact_answer(t), Solution{answer::TraceAnswer{t}}};
}

TaskInstance trace2(const TaskParameter& param, Rng& rng) {
  const SimilarPair& pair = pair_of(param);
  const std::string p1 = haskell_program(pair.first, rng);
  const std::string p2 = haskell_program(pair.second, rng);
  return {above(above(above("Give a sequence of input values for which the two programs below behave differently!", p1),
                      "---"),
                p2),
          triggering_difference(pair.first, pair.second), Solution{answer::InputsAnswer{pair.witness}}};
}

TaskInstance prog1(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const std::vector<Trace> ts = example_traces(s, 5, rng);
  return {above(above("Write a program capable of these interactions:", "(? represent inputs, ! represent outputs)"),
                unlines(displays(ts))),
          producing_traces(ts), program_answer(s)};
}

TaskInstance prog2(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const std::vector<Trace> ts = example_traces(s, 5, rng);
  std::string q = above("Complete the given skeleton into a program capable of these interactions:", unlines(displays(ts)));
  for (const char* line : {"---", "main :: IO ()", "main = do", "  n <- readLn", "  let loop s m = undefined",
                           "  loop 0 0"}) {
    q = above(q, line);
  }
  return {q, producing_traces(ts), program_answer(s)};
}

TaskInstance prog3(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const Rendering r =
      render_with_holes(lower_to_ir(s, preferred_style(s)), {Surface::Haskell, HolePolicy::ReadsAndPrints}, rng);
  return {above(above("Complete the following template into a syntactically correct program",
                      "(replace the ??? with calls to readLn and print)"),
                r.text),
          compiling_program(), Solution{answer::CodeAnswer{restore_holes(r)}}};
}

TaskInstance prog4(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const std::string listy = render_program(lower_to_ir(s, ProgramStyle::ListAccum), Surface::Haskell, rng);
  const ir::Program folded = lower_to_ir(s, ProgramStyle::FoldState);
  const std::string folded_text = render_program(folded, Surface::Haskell, rng);
  const std::uint64_t test_seed = rng.next_u64();
  return {above("Re-write the given program s.t. it does not contain any accumulation list.", listy),
          conj(behavior(s, 100, test_seed), no_lists()),
          pair_answer(Solution{answer::ProgramAnswer{folded}}, Solution{answer::CodeAnswer{folded_text}})};
}

TaskInstance prog5(const TaskParameter& param, Rng& rng) {
  const Specification& s = spec_of(param);
  const std::string prog = python_program(s, rng);
  const std::uint64_t test_seed = rng.next_u64();
  return {above("Re-implement the following Python program in Haskell:", prog), behavior(s, 100, test_seed),
          program_answer(s)};
}

TaskInstance desc1(const TaskParameter& param, Rng& rng) {
  const SimilarPair& pair = pair_of(param);
  const bool same = rng.index(2) == 0;
  const auto [p1, p2] = different_programs(pair.first, same ? pair.first : pair.second, rng);
  return {above(above(above("Do the following two programs have the same behavior?", p1), "---"), p2),
          exact_answer(same), Solution{answer::BoolAnswer{same}}};
}

TaskInstance desc2(const TaskParameter& param, Rng& rng) {
  const SimilarPair& pair = pair_of(param);
  const std::string prog = haskell_program(pair.first, rng);
  const std::vector<Trace> ts1 = example_traces(pair.first, 5, rng);
  // Traces of the second program that the first also permits would be
  // wrong options that are in fact right.
  std::vector<std::string> wrongs;
  std::set<std::string> seen;
  auto consider = [&](const Trace& t) {
    if (!accept(pair.first, t) && seen.insert(display(t)).second) wrongs.push_back(display(t));
  };
  for (const auto& t : example_traces(pair.second, 5, rng)) consider(t);
  for (int k = 0; k < 100 && wrongs.size() < 5; ++k) consider(interpret(pair.second, sample_inputs(pair.second, rng)));

  const MultipleChoice mc = multiple_choice(7, displays(ts1), wrongs, rng);
  return {above(above("Which of the given trace can the program below produce?", prog), mc.description),
          exact_answer(mc.solution), Solution{answer::IndexAnswer{mc.solution}}};
}

}  // namespace

const std::vector<std::string>& builtin_template_names() {
  static const std::vector<std::string> names = {"trace1", "trace2", "prog1", "prog2", "prog3",
                                                 "prog4",  "prog5",  "desc1", "desc2"};
  return names;
}

TaskTemplate builtin_template(const std::string& name) {
  if (name == "trace1") return {name, random_spec_parameter, trace1};
  if (name == "trace2") return {name, similar_pair_parameter, trace2};
  if (name == "prog1") return {name, random_spec_parameter, prog1};
  if (name == "prog2") return {name, fixed_example, prog2};
  if (name == "prog3") return {name, random_spec_parameter, prog3};
  if (name == "prog4") return {name, fixed_example, prog4};
  if (name == "prog5") return {name, random_spec_parameter, prog5};
  if (name == "desc1") return {name, similar_pair_parameter, desc1};
  if (name == "desc2") return {name, similar_pair_parameter, desc2};
  throw UnknownTemplate("unknown task template '" + name + "'");
}

TaskInstance generate_task_instance(const TaskTemplate& t, std::uint64_t seed) {
  Rng root(seed);
  Rng parameter_rng = root.split();
  Rng instance_rng = root.split();
  const TaskParameter p = t.parameter(parameter_rng);
  return t.instance(p, instance_rng);
}

}  // namespace iospec
