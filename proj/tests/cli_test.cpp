#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "feedsum/ilp.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run run(const std::string& args) {
  std::string cmd = std::string(FEEDSUM_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string table1() { return std::string(FEEDSUM_TEST_DATA) + "/table1.jsonl"; }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("feedsum_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Stats) {
  auto r = run("stats --corpus " + table1());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("responses: 8"), std::string::npos);
  EXPECT_NE(r.out.find("concepts: 43"), std::string::npos);
}

TEST(Cli, SummarizeBaseline) {
  auto r = run("summarize --corpus " + table1() +
               " --lecture L01 --prompt interesting --method ilp-baseline --budget 10");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("7 words"), std::string::npos);
  EXPECT_NE(r.out.find("- I found the group activity most interesting"), std::string::npos);
}

TEST(Cli, SummarizeImpute) {
  auto r = run("summarize --corpus " + table1() +
               " --lecture L01 --prompt interesting --method ilp-impute --lambda 0.5");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("[ilp-impute]"), std::string::npos);
}

TEST(Cli, ImputeWritesMatrixAndTrace) {
  auto dir = scratch("impute");
  auto r = run("impute --corpus " + table1() + " --lambda 0.5 --matrix-out " +
               (dir / "b.txt").string() + " --trace-out " + (dir / "trace.csv").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(slurp(dir / "b.txt").rfind("43 8\n", 0), 0u);
  EXPECT_EQ(slurp(dir / "trace.csv").rfind("iteration,objective\n0,23\n", 0), 0u);
}

TEST(Cli, EvaluateWritesOutputs) {
  auto dir = scratch("evaluate");
  auto r = run("evaluate --corpus " + table1() + " --methods ilp-baseline,ilp-impute --out-dir " +
               dir.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("ilp-baseline"), std::string::npos);
  EXPECT_NE(r.out.find("documents scored: 1"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "summaries.txt"));
  EXPECT_EQ(slurp(dir / "associations.tsv").rfind("sentence\tbigram\tvalue\n", 0), 0u);
}

TEST(Cli, ConfigFileMirrorsFlags) {
  auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "[summarize]\ncorpus=" << table1()
        << "\nlecture=L01\nprompt=interesting\nmethod=ilp-baseline\nbudget=10\n";
  }
  auto r = run("--config " + (dir / "run.ini").string() + " summarize");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("7 words"), std::string::npos);
}

TEST(Cli, SolveMatchesLibrary) {
  auto dir = scratch("solve");
  feedsum::SelectionProblem p;
  p.matrix = Eigen::MatrixXd::Zero(3, 3);
  p.matrix << 1, 0, 0, 1, 1, 0, 0, 0, 1;
  p.weights = {3, 1, 2};
  p.lengths = {4, 2, 3};
  p.word_budget = 7;
  {
    std::ofstream out(dir / "p.json");
    out << feedsum::to_json(p).dump();
  }
  for (const char* solver : {"exact", "brute-force", "greedy"}) {
    auto r = run("solve --solver " + std::string(solver) + " --problem " +
                 (dir / "p.json").string());
    ASSERT_EQ(r.status, 0) << r.out;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["selected"], (std::vector<std::size_t>{0, 2})) << solver;
    EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), 6.0);
  }
}

TEST(Cli, ErrorsExitNonzeroWithDiagnostic) {
  auto missing = run("stats --corpus /nonexistent.jsonl");
  EXPECT_NE(missing.status, 0);
  EXPECT_NE(missing.out.find("feedsum: error:"), std::string::npos);

  auto bad_method = run("summarize --corpus " + table1() +
                        " --lecture L01 --prompt interesting --method mead");
  EXPECT_NE(bad_method.status, 0);
  EXPECT_NE(bad_method.out.find("unknown method"), std::string::npos);

  auto no_command = run("");
  EXPECT_NE(no_command.status, 0);

  auto no_refs = run("tune --corpus " + std::string(FEEDSUM_TEST_DATA) +
                     "/table1.jsonl --grid 1 --folds 3");
  EXPECT_NE(no_refs.status, 0);
}
