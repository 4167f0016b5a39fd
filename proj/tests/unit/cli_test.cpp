#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "iospec/dsl.hpp"
#include "iospec/taskgen.hpp"

namespace iospec {
namespace {

namespace fs = std::filesystem;

const std::string kCli = IOSPEC_CLI_PATH;
const std::string kExample = IOSPEC_TEST_DATA_DIR "/golden/example.iospec";
const std::string kFixtures = IOSPEC_TEST_DATA_DIR "/fixtures/";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("iospec-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // args is spliced into a shell command line as is.
  CliRun cli(const std::string& args, const std::string& stdin_text = "") {
    const fs::path in = dir_ / "stdin", out = dir_ / "stdout", err = dir_ / "stderr";
    std::ofstream(in) << stdin_text;
    const std::string cmd = kCli + " " + args + " <" + in.string() + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

TEST_F(Cli, AcceptExitCodes) {
  EXPECT_EQ(cli(kExample + " --trace '?2 ?1 ?5 !6 stop'").code, 2);  // no subcommand
  EXPECT_EQ(cli("accept " + kExample + " --trace '?2 ?1 ?5 !6 stop'").code, 0);
  EXPECT_EQ(cli("accept " + kExample + " --trace '?0 !1 stop'").code, 1);
  EXPECT_EQ(cli("accept " + kExample + " --trace '?x stop'").code, 2);
  EXPECT_EQ(cli("accept " + (dir_ / "missing.iospec").string() + " --trace 'stop'").code, 3);

  std::ofstream(dir_ / "broken.iospec") << "read n : nats\nloop {\n  if (len(all(x) == curr(n)) then { exit }\n}\n";
  const CliRun broken = cli("accept " + (dir_ / "broken.iospec").string() + " --trace 'stop'");
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("broken.iospec:3:"), std::string::npos) << broken.err;
}

TEST_F(Cli, GenerationIsDeterministic) {
  const CliRun a = cli("gen spec --seed 7"), b = cli("gen spec --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NO_THROW(parse_spec(a.out));

  const CliRun t1 = cli("traces " + kExample + " -n 5 --seed 7"), t2 = cli("traces " + kExample + " -n 5 --seed 7");
  EXPECT_EQ(t1.code, 0);
  EXPECT_EQ(t1.out, t2.out);
  EXPECT_EQ(std::count(t1.out.begin(), t1.out.end(), '\n'), 5);

  const CliRun pair = cli("gen pair --seed 3");
  EXPECT_EQ(pair.code, 0);
  EXPECT_NE(pair.out.find("---\nwitness:"), std::string::npos);
}

TEST_F(Cli, Render) {
  const CliRun py = cli("render " + kExample + " --style list --lang python");
  EXPECT_EQ(py.code, 0);
  EXPECT_EQ(py.out, "n = int(input())\nx = []\nwhile len(x) != n :\n  v = int(input())\n  x += [v]\nprint(sum(x))\n");
  const CliRun holes = cli("render " + kExample + " --style fold --lang haskell --holes io --seed 4");
  EXPECT_EQ(holes.code, 0);
  EXPECT_NE(holes.out.find("n <- ???"), std::string::npos) << holes.out;

  std::ofstream(dir_ / "raw.iospec") << "read x : ints\nwrite [\"{all(x)}\"]\n";
  EXPECT_EQ(cli("render " + (dir_ / "raw.iospec").string() + " --style fold").code, 3);
  EXPECT_EQ(cli("render " + kExample + " --style sideways").code, 2);
}

TEST_F(Cli, TaskNewIsDeterministicAndCheckable) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(cli("task new trace1 --seed 7 -o " + a.string()).code, 0);
  ASSERT_EQ(cli("task new trace1 --seed 7 -o " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "question.txt"), slurp(b / "question.txt"));
  EXPECT_EQ(slurp(a / "requirement.json"), slurp(b / "requirement.json"));

  const Require r = require_from_json(slurp(a / "requirement.json"));
  const std::string right = display(std::get<req::ExactTrace>(r.descriptor).expected);
  EXPECT_EQ(cli("task check " + a.string() + " --answer '" + right + "'").code, 0);
  const CliRun wrong = cli("task check " + a.string() + " --answer 'stop'");
  EXPECT_EQ(wrong.code, 1);
  EXPECT_NE(wrong.err.find("*** Failed! stop /= "), std::string::npos);

  EXPECT_EQ(cli("task new nosuch --seed 1 -o " + (dir_ / "c").string()).code, 2);
}

TEST_F(Cli, TaskCheckShowsCounterexampleStyle) {
  fs::create_directories(dir_ / "int");
  std::ofstream(dir_ / "int" / "requirement.json") << R"({"type": "ExactInteger", "expected": 5})";
  const CliRun r = cli("task check " + (dir_ / "int").string() + " --answer 4");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("4 /= 5"), std::string::npos);
  EXPECT_EQ(cli("task check " + (dir_ / "int").string() + " --answer 5").code, 0);
  EXPECT_EQ(cli("task check " + (dir_ / "int").string() + " --answer five").code, 2);
}

TEST_F(Cli, TaskCheckWithProgramAnswers) {
  const fs::path p4 = dir_ / "p4";
  ASSERT_EQ(cli("task new prog4 --seed 2 -o " + p4.string()).code, 0);
  std::ofstream(dir_ / "fold.hs") << "let loop s l = if l == n then print s else readLn >>= \\v -> loop (s+v) (l+1)";
  std::ofstream(dir_ / "list.hs") << "aux (xs ++ [v])";
  EXPECT_EQ(cli("task check " + p4.string() + " --answer-file " + (dir_ / "fold.hs").string() + " -- " + kFixtures +
                "example.sh")
                .code,
            0);
  EXPECT_EQ(cli("task check " + p4.string() + " --answer-file " + (dir_ / "list.hs").string() + " -- " + kFixtures +
                "example.sh")
                .code,
            1);
  EXPECT_EQ(cli("task check " + p4.string() + " --answer-file " + (dir_ / "fold.hs").string() + " -- " + kFixtures +
                "example_count.sh")
                .code,
            1);
  EXPECT_EQ(cli("task check " + p4.string() + " --answer-file " + (dir_ / "fold.hs").string()).code, 2);
}

TEST_F(Cli, TestProgram) {
  const CliRun good = cli("test-program " + kExample + " -n 100 --seed 1 -- " + kFixtures + "example.sh");
  EXPECT_EQ(good.code, 0);
  EXPECT_EQ(good.out, "+++ OK, passed 100 tests.\n");
  const CliRun bad = cli("test-program " + kExample + " -n 100 --seed 1 -- " + kFixtures + "example_count.sh");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("inputs:"), std::string::npos);
  EXPECT_EQ(cli("test-program " + kExample + " -n 3").code, 2);
}

TEST_F(Cli, PracticeRoundTrip) {
  const TaskInstance inst = generate_task_instance(builtin_template("desc1"), 5);
  const bool same = std::get<req::ExactBool>(inst.requirement.descriptor).expected;
  const CliRun right = cli("practice desc1 --seed 5", same ? "yes\n" : "no\n");
  EXPECT_EQ(right.code, 0);
  EXPECT_EQ(right.out, inst.question + "\n+++ OK, passed.\n");
  const CliRun wrong = cli("practice desc1 --seed 5", same ? "no\n" : "yes\n");
  EXPECT_EQ(wrong.code, 1);
  EXPECT_NE(wrong.err.find(" /= "), std::string::npos);
}

}  // namespace
}  // namespace iospec
