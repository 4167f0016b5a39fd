#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "generators.hpp"
#include "iospec/codegen.hpp"
#include "iospec/dsl.hpp"

namespace iospec {
namespace {

using namespace term;

const std::string kPythonExample =
    "n = int(input())\n"
    "x = []\n"
    "while len(x) != n :\n"
    "  v = int(input())\n"
    "  x += [v]\n"
    "print(sum(x))";

// Seed 4 draws helper "loop" and the short naming scheme.
const std::string kHaskellExample =
    "main :: IO ()\n"
    "main = do\n"
    "  n <- readLn\n"
    "  let loop s l =\n"
    "        if l == n\n"
    "          then print s\n"
    "          else do\n"
    "            v <- readLn\n"
    "            loop (s + v) (l + 1)\n"
    "  loop 0 0";

std::string squash(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\n') out += c;
  }
  return out;
}

TEST(Lower, ExampleFoldStateHasSumAndLengthAccumulators) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::FoldState);
  ASSERT_EQ(p.state_vars.size(), 2u);
  EXPECT_EQ(p.state_vars[0].fold, ir::Op::Sum);
  EXPECT_EQ(p.state_vars[0].init, 0);
  EXPECT_EQ(p.state_vars[1].fold, ir::Op::Length);
  EXPECT_EQ(p.state_vars[1].init, 0);
  EXPECT_TRUE(ir_well_formed(p));
  for (const auto& v : p.vars) EXPECT_FALSE(v.is_list());
}

TEST(Lower, ExampleListAccumHasOneList) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::ListAccum);
  int lists = 0;
  for (const auto& v : p.vars) lists += v.is_list();
  EXPECT_EQ(lists, 1);
  EXPECT_TRUE(p.state_vars.empty());
  EXPECT_TRUE(ir_well_formed(p));
}

TEST(Lower, RawHistoryIsUnsupportedInFoldStyle) {
  Specification s = seq(read_input("x", ValueSet::ints()), write_output(OutputPattern::splice(all("x"))));
  try {
    lower_to_ir(s, ProgramStyle::FoldState);
    FAIL();
  } catch (const StyleUnsupported& e) {
    EXPECT_NE(std::string(e.what()).find("all(x)"), std::string::npos);
  }
  EXPECT_FALSE(supports_fold_style(s));
  EXPECT_NO_THROW(lower_to_ir(s, ProgramStyle::ListAccum));
}

TEST(Render, PythonExampleMatchesListing) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::ListAccum);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(render_program(p, Surface::Python, rng), kPythonExample);
  }
  Rng rng(1);
  EXPECT_EQ(python_program(example_specification(), rng), kPythonExample);
}

TEST(Render, HaskellFoldExampleMatchesListingShape) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::FoldState);
  Rng rng(4);
  const std::string text = render_program(p, Surface::Haskell, rng);
  EXPECT_EQ(text, kHaskellExample);
  // The published listing, modulo layout and spacing.
  EXPECT_NE(squash(text).find(squash("n <- readLn let loop s l = if l == n then print s else do v <- readLn "
                                     "loop (s+v) (l+1) loop 0 0")),
            std::string::npos)
      << text;
}

TEST(Render, HaskellShapeHoldsForEverySeed) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::FoldState);
  const std::regex helper_def(R"(let (loop|go|aux) [a-z']+ [a-z']+ =)");
  const std::regex helper_call(R"(\n  (loop|go|aux) 0 0$)");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const std::string text = render_program(p, Surface::Haskell, rng);
    EXPECT_TRUE(std::regex_search(text, helper_def)) << text;
    EXPECT_TRUE(std::regex_search(text, helper_call)) << text;
    EXPECT_NE(text.find("<- readLn"), std::string::npos);
    EXPECT_NE(text.find("then print "), std::string::npos);
    EXPECT_EQ(text.find("++"), std::string::npos);
  }
}

TEST(Render, NopPrograms) {
  Rng rng(3);
  ir::Program p = lower_to_ir(nop(), ProgramStyle::ListAccum);
  EXPECT_EQ(render_program(p, Surface::Python, rng), "pass");
  EXPECT_EQ(render_program(p, Surface::Haskell, rng), "main :: IO ()\nmain = return ()");
}

TEST(Render, OutputsAndOperators) {
  Specification s = parse_spec(
      "read a : ints\nread b : ints\n"
      "if (not (curr(a) < 0) && curr(b) /= -3) then { write [\"t\\{\\\"\\}x{curr(a) * (curr(b) - 1)}\"] } "
      "else { write [\"{all(b)}\"] }\n");
  Rng rng(0);
  const std::string py = render_program(lower_to_ir(s, ProgramStyle::ListAccum), Surface::Python, rng);
  EXPECT_EQ(py,
            "a = int(input())\n"
            "b = []\n"
            "v = int(input())\n"
            "b += [v]\n"
            "if not a < 0 and b[-1] != (-3) :\n"
            "  print(f\"t{{\\\"}}x{a * (b[-1] - 1)}\")\n"
            "else :\n"
            "  print(str(b).replace(' ', ''))");
  Rng rng4(4);
  const std::string hs = render_program(lower_to_ir(s, ProgramStyle::ListAccum), Surface::Haskell, rng4);
  EXPECT_EQ(hs,
            "main :: IO ()\n"
            "main = do\n"
            "  a <- readLn\n"
            "  v <- readLn\n"
            "  if not (a < 0) && last [v] /= (-3)\n"
            "    then putStrLn (concat [\"t{\\\"}x\", show (a * (last [v] - 1))])\n"
            "    else print [v]");
}

TEST(InterpretIr, ExampleOnBothStyles) {
  const std::vector<std::int64_t> feed{2, 1, 5};
  for (auto style : {ProgramStyle::FoldState, ProgramStyle::ListAccum}) {
    ir::Program p = lower_to_ir(example_specification(), style);
    EXPECT_EQ(display(interpret_ir(p, feed)), "?2 ?1 ?5 !6 stop") << to_string(style);
  }
}

TEST(InterpretIr, EmptyFeedExhaustsInputs) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::ListAccum);
  try {
    interpret_ir(p, {});
    FAIL();
  } catch (const InterpretError& e) {
    EXPECT_EQ(e.kind(), InterpretErrorKind::InputsExhausted);
  }
}

TEST(InterpretIr, UnusedAccumulatorOverflowIsNotAnError) {
  // prod(all(x)) only matters when the first value is 0.
  Specification s = parse_spec(
      "read x : ints\nloop { if (len(all(x)) == 4) then { exit } else { read x : ints } }\n"
      "if (sum(all(x)) == 0) then { write [\"{prod(all(x))}\"] } else { write [\"big\"] }\n");
  const std::vector<std::int64_t> feed{4000000000, 4000000000, 4000000000, 4000000000};
  EXPECT_EQ(display(interpret(s, feed)), display(interpret_ir(lower_to_ir(s, ProgramStyle::FoldState), feed)));
}

TEST(Holes, ReadsAndPrintsOnExample) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::FoldState);
  Rng rng(4);
  Rendering r = render_with_holes(p, {Surface::Haskell, HolePolicy::ReadsAndPrints}, rng);
  EXPECT_EQ(r.fills, (std::vector<std::string>{"readLn", "print", "readLn"}));
  EXPECT_NE(r.text.find("n <- ???"), std::string::npos);
  EXPECT_NE(r.text.find("then ??? s"), std::string::npos);
  EXPECT_EQ(restore_holes(r), kHaskellExample);
}

TEST(Holes, LoopBodyOnExample) {
  ir::Program p = lower_to_ir(example_specification(), ProgramStyle::FoldState);
  Rng rng(4);
  Rendering r = render_with_holes(p, {Surface::Haskell, HolePolicy::LoopBody}, rng);
  EXPECT_EQ(r.text, "main :: IO ()\nmain = do\n  n <- readLn\n  let loop s l =\n        ???\n  loop 0 0");
  ASSERT_EQ(r.fills.size(), 1u);
  EXPECT_EQ(restore_holes(r), kHaskellExample);
}

TEST(Holes, NothingToHole) {
  Rng rng(1);
  Specification loop_free = seq(read_input("a", ValueSet::ints()), write_output(OutputPattern::splice(curr("a"))));
  for (auto surface : {Surface::Haskell, Surface::Python}) {
    EXPECT_THROW(render_with_holes(lower_to_ir(loop_free, ProgramStyle::ListAccum), {surface, HolePolicy::LoopBody},
                                   rng),
                 NoHolableConstruct);
    EXPECT_THROW(
        render_with_holes(lower_to_ir(nop(), ProgramStyle::ListAccum), {surface, HolePolicy::ReadsAndPrints}, rng),
        NoHolableConstruct);
  }
}

TEST(DifferentPrograms, ExampleWithItself) {
  Rng rng(11);
  auto [a, b] = different_programs(example_specification(), example_specification(), rng);
  EXPECT_NE(a, b);
}

TEST(DifferentPrograms, DistinctSpecs) {
  Rng rng(12);
  Specification other = parse_spec("read n : nats\nwrite [\"{curr(n)}\"]\n");
  auto [a, b] = different_programs(example_specification(), other, rng);
  EXPECT_NE(a, b);
}

TEST(DifferentPrograms, NopHasNoCosmeticFreedom) {
  Rng rng(13);
  EXPECT_THROW(different_programs(nop(), nop(), rng), RetriesExhausted);
}

int count_statements(const ir::Block& b, bool reads_and_prints) {
  int n = 0;
  for (const auto& st : b) {
    if (std::holds_alternative<ir::ReadInto>(st.node) || std::holds_alternative<ir::Print>(st.node)) {
      n += reads_and_prints;
    } else if (const auto* f = std::get_if<ir::If>(&st.node)) {
      n += count_statements(f->then_body, reads_and_prints) + count_statements(f->else_body, reads_and_prints);
    } else if (const auto* l = std::get_if<ir::Loop>(&st.node)) {
      n += reads_and_prints ? count_statements(l->body, true) : 1;
    }
  }
  return n;
}

std::string strip_strings(const std::string& text) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (in_string && text[i] == '\\') {
      ++i;
      continue;
    }
    if (text[i] == '"') {
      in_string = !in_string;
      out += '"';
      continue;
    }
    if (!in_string) out += text[i];
  }
  return out;
}

// Haskell CPS drops statements after an exit, so count what was rendered.
int haskell_holable(const std::string& text, HolePolicy policy) {
  const std::string code = strip_strings(text);
  const std::regex pattern = policy == HolePolicy::ReadsAndPrints
                                 ? std::regex(R"(\b(readLn|print|putStrLn)\b)")
                                 : std::regex(R"(let (loop|go|aux)'*( [^=\n]*)? =( do)?\n)");
  return static_cast<int>(std::distance(std::sregex_iterator(code.begin(), code.end(), pattern), std::sregex_iterator()));
}

std::vector<ProgramStyle> supported_styles(const Specification& s) {
  std::vector<ProgramStyle> out{ProgramStyle::ListAccum};
  if (supports_fold_style(s)) out.push_back(ProgramStyle::FoldState);
  return out;
}

TEST(CodegenProperty, FidelityAndStyleEquivalence) {
  Rng rng(2024);
  int compared = 0, fold = 0;
  for (int i = 0; i < 600; ++i) {
    Specification s = testgen::well_formed_spec(rng);
    for (int k = 0; k < 3; ++k) {
      std::vector<std::int64_t> feed;
      try {
        feed = sample_inputs(s, rng);
      } catch (const SamplingFailed&) {
        break;
      }
      const Trace expected = interpret(s, feed);
      for (auto style : supported_styles(s)) {
        const ir::Program p = lower_to_ir(s, style);
        ASSERT_TRUE(ir_well_formed(p));
        Trace got;
        ASSERT_NO_THROW(got = interpret_ir(p, feed)) << print_spec(s) << to_string(style);
        ASSERT_EQ(display(got), display(expected)) << print_spec(s) << to_string(style);
        ASSERT_TRUE(accept(s, got));
        ++compared;
        fold += style == ProgramStyle::FoldState;
      }
    }
  }
  EXPECT_GT(compared, 800);
  EXPECT_GT(fold, 200);
}

TEST(CodegenProperty, ListStyleNeverFails) {
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    Specification s = testgen::well_formed_spec(rng);
    ASSERT_NO_THROW(lower_to_ir(s, ProgramStyle::ListAccum)) << print_spec(s);
  }
}

TEST(CodegenProperty, HolesRestoreToTheFullRendering) {
  Rng rng(31);
  int holed = 0;
  for (int i = 0; i < 400; ++i) {
    Specification s = testgen::well_formed_spec(rng);
    for (auto style : supported_styles(s)) {
      const ir::Program p = lower_to_ir(s, style);
      for (auto surface : {Surface::Haskell, Surface::Python}) {
        for (auto policy : {HolePolicy::ReadsAndPrints, HolePolicy::LoopBody}) {
          const std::uint64_t seed = rng.next_u64();
          Rng a(seed), b(seed);
          const std::string full = render_program(p, surface, a);
          const int expected = surface == Surface::Python
                                   ? count_statements(p.body, policy == HolePolicy::ReadsAndPrints)
                                   : haskell_holable(full, policy);
          Rendering r;
          try {
            r = render_with_holes(p, {surface, policy}, b);
          } catch (const NoHolableConstruct&) {
            ASSERT_EQ(expected, 0) << full;
            continue;
          }
          ++holed;
          ASSERT_EQ(restore_holes(r), full);
          if (surface == Surface::Python) ASSERT_EQ(static_cast<int>(r.fills.size()), expected) << full;
          if (policy == HolePolicy::ReadsAndPrints) {
            for (const auto& f : r.fills) {
              ASSERT_TRUE(f == "readLn" || f == "print" || f == "putStrLn" || f == "int(input())") << f;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(holed, 1000);
}

// Replaces every non-keyword identifier by its first-occurrence index.
std::string alpha_normalize(const std::string& original) {
  static const std::set<std::string> fixed = {"main", "IO",     "do",      "let",  "if",     "then",
                                              "else", "readLn", "print",   "putStrLn", "concat", "show",
                                              "sum",  "product", "length", "last", "not",    "return"};
  static const std::regex ident(R"([a-z][A-Za-z0-9_']*)");
  std::map<std::string, std::string> names;
  std::string out;
  const std::string text = strip_strings(original);
  auto begin = std::sregex_iterator(text.begin(), text.end(), ident);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const std::string word = it->str();
    const std::size_t at = static_cast<std::size_t>(it->position());
    if (at > 0 && (std::isalnum(static_cast<unsigned char>(text[at - 1])) || text[at - 1] == '\'')) continue;
    out.append(text, last, at - last);
    if (fixed.count(word)) {
      out += word;
    } else {
      auto [pos, fresh] = names.emplace(word, "#" + std::to_string(names.size()));
      out += pos->second;
    }
    last = at + word.size();
  }
  out.append(text, last, std::string::npos);
  return out;
}

TEST(CodegenProperty, RandomnessIsCosmeticOnly) {
  Rng rng(5150);
  for (int i = 0; i < 300; ++i) {
    Specification s = testgen::well_formed_spec(rng, 2);
    for (auto style : supported_styles(s)) {
      const ir::Program p = lower_to_ir(s, style);
      Rng first(0);
      const std::string reference = alpha_normalize(render_program(p, Surface::Haskell, first));
      for (std::uint64_t seed = 1; seed < 6; ++seed) {
        Rng other(seed);
        const std::string text = render_program(p, Surface::Haskell, other);
        ASSERT_EQ(alpha_normalize(text), reference) << text;
      }
      Rng a(1), b(2);
      ASSERT_EQ(render_program(p, Surface::Python, a), render_program(p, Surface::Python, b));
    }
  }
}

TEST(CodegenProperty, RenderingIsDeterministicPerSeed) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    Specification s = testgen::well_formed_spec(rng);
    const std::uint64_t seed = rng.next_u64();
    Rng a(seed), b(seed);
    ASSERT_EQ(haskell_program(s, a), haskell_program(s, b));
  }
}

}  // namespace
}  // namespace iospec
