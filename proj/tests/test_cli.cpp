#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(EQUIVAR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, NormComparesWithBurnsideQuotient) {
  EXPECT_EQ(run("norm --group dihedral:6 --from D2 --functor constZ --compare burnside-quotient").code, 0);
}

TEST(Cli, ReciprocityVerifies) {
  EXPECT_EQ(run("reciprocity --group dihedral:6 --sub D2 --verify").code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("marks --no-such-flag").code, 2);
  EXPECT_EQ(run("no-such-verb").code, 2);
  EXPECT_EQ(run("marks --group dihedral:7").code, 2);
}

TEST(Cli, BudgetExit) {
  EXPECT_EQ(run("witt --ring constZ --p 3 --levels 4").code, 3);
  EXPECT_EQ(run("marks --group cyclic:50 --max-group-order 20").code, 3);
}

TEST(Cli, JsonIsDeterministic) {
  for (std::string args : {"hr0 --ring constZ --m 5 --json", "marks --group symmetric:4 --json",
                           "witt --ring constZ --p 3 --levels 2 --ops R,F,V --coinvariants --json"}) {
    auto a = run(args);
    auto b = run(args + " --jobs 4");
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["schema"].get<std::string>().rfind("equivar.", 0), 0u) << args;
  }
}

TEST(Cli, RegressionSuite) {
  auto r = run("check paper-suite --json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "equivar.check/1");
}
