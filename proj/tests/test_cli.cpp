// Drives the installed-style binary through a shell.
#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "fixtures_text.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("sstar_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static const Scratch s;
  return s.dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Runs a shell script with $SSTAR bound to the binary and the given stdin.
Run sh(const std::string& script, const std::string& input = "") {
  const auto in = scratch() / "stdin", out = scratch() / "stdout", err = scratch() / "stderr";
  spit(in, input);
  std::string cmd = "SSTAR='" SSTAR_BIN "'; (" + script + ") <'" + in.string() + "' >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int raw = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST(Cli, ReduceFromStdinToStdout) {
  auto r = sh("$SSTAR reduce epmx-to-stars", text::kWorkedEpmx);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(trim(r.out), text::kWorkedSum);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, FilesAndCertificate) {
  const auto in = scratch() / "worked.json", out = scratch() / "sum.txt", cert = scratch() / "cert.json";
  spit(in, text::kWorkedEpmx);
  auto r = sh("$SSTAR reduce epmx-to-stars --in '" + in.string() + "' --out '" + out.string() +
              "' --certificate '" + cert.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(trim(slurp(out)), text::kWorkedSum);
  auto c = nlohmann::json::parse(slurp(cert));
  EXPECT_EQ(c["tail"], "*15");
}

TEST(Cli, SatPipelineEndsInLeftOrZero) {
  auto r = sh("$SSTAR reduce 3sat-to-epmx | $SSTAR reduce epmx-to-stars | $SSTAR solve stars",
              "p cnf 3 3\n1 2 3 0\n-1 -2 0\n-1 -3 0\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto o = trim(r.out);
  EXPECT_TRUE(o == "L" || o == "P") << o;
}

TEST(Cli, UnsatPipeline) {
  auto r = sh("$SSTAR reduce 3sat-to-epmx | $SSTAR solve epmx --first X", "p cnf 1 2\n1 0\n-1 0\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(trim(r.out), "Y");
}

TEST(Cli, Oracles) {
  auto r = sh("$SSTAR oracle sat", "p cnf 2 2\n1 2 0\n-1 0\n");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(trim(r.out), "SAT -1 2");
  r = sh("$SSTAR oracle restricted", "p cnf 2 1\n1 2 0\n");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(trim(r.out).rfind("violated:", 0), 0u) << r.out;
}

TEST(Cli, Bench) {
  auto r = sh("$SSTAR bench nimsum --size 1000");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["bench"], "nimsum");
}

TEST(Cli, ErrorsUseStatusCodes) {
  auto r = sh("$SSTAR solve stars", "{*2|");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error (parse-error): ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());

  r = sh("$SSTAR reduce 3sat-to-epmx", "p cnf 2 1\n1 2 0\n");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.err.rfind("error (precondition-violated): ", 0), 0u) << r.err;

  r = sh("$SSTAR --budget 3 solve stars", "{0,*3|*1,*2}+{*1,*4|0}+{0|*2,*5}+{*2|*1}");
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.err.rfind("error (budget-exceeded): ", 0), 0u) << r.err;

  r = sh("$SSTAR reduce 3sat-to-epmx --in /nonexistent/file");
  EXPECT_EQ(r.code, 7);

  r = sh("$SSTAR solve chess");
  EXPECT_EQ(r.code, 1);
  r = sh("$SSTAR");
  EXPECT_EQ(r.code, 1);
  r = sh("$SSTAR --help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reduce"), std::string::npos);
}
