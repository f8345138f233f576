#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Result skt(const std::string& args) {
  const std::string cmd = std::string("\"") + SKT_BINARY + "\" " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("skt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, RootsG2Short2) {
  const Result r = skt("roots G 2 --norm short2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "6")) << r.out;
  EXPECT_TRUE(contains(r.out, "-3")) << r.out;
  EXPECT_FALSE(contains(r.out, "FAIL")) << r.out;
}

TEST_F(Cli, RootsInvalidType) {
  const Result r = skt("roots D 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "D requires rank >= 3")) << r.out;
  EXPECT_EQ(skt("roots A 2 --norm long").code, 2);
  EXPECT_EQ(skt("frobnicate").code, 2);
}

TEST_F(Cli, CheckKillingStructure) {
  write("k.json", R"({"factors": [{"family": "B", "rank": 3}]})");
  const Result r = skt("check " + path("k.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "pluriclosed true")) << r.out;
  EXPECT_TRUE(contains(r.out, "cyt true")) << r.out;
}

TEST_F(Cli, ClassifyThenCheck) {
  const Result c = skt("classify A 2 --x 2,2 --out " + path("a2.json"));
  ASSERT_EQ(c.code, 0) << c.out;
  for (const char* mode : {"closed", "brute"}) {
    const Result r = skt("check " + path("a2.json") + " --mode " + mode);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "pluriclosed true")) << r.out;
    EXPECT_TRUE(contains(r.out, "cyt false")) << r.out;
    EXPECT_TRUE(contains(r.out, "-1.16666")) << r.out;
  }
}

TEST_F(Cli, CheckFailingStructure) {
  write("bad.json", R"({"factors": [{"family": "A", "rank": 2, "x": [2, 2, 4]}]})");
  const Result r = skt("check " + path("bad.json"));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(contains(r.out, "pluriclosed false")) << r.out;
  EXPECT_TRUE(contains(r.out, "(1,0) (0,1) residual 1")) << r.out;
}

TEST_F(Cli, CheckInputErrors) {
  write("broken.json", "{");
  EXPECT_EQ(skt("check " + path("broken.json")).code, 2);
  EXPECT_EQ(skt("check " + path("missing.json")).code, 2);
  write("neg.json", R"({"factors": [{"family": "A", "rank": 2, "x": [1, 0, 1]}]})");
  EXPECT_EQ(skt("check " + path("neg.json")).code, 2);
}

TEST_F(Cli, FlowConverges) {
  const Result r = skt("flow A 2 --x0 2,2 --t-end 50 --out " + path("tr.csv"));
  EXPECT_EQ(r.code, 0) << r.out;
  std::ifstream in(path("tr.csv"));
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_TRUE(contains(text, "# termination=converged")) << text.substr(0, 400);
}

TEST_F(Cli, FlowInvariantLineJson) {
  const Result r = skt("flow G 2 --norm short2 --x0 1,2 --integrator rkf45 --format json --out " + path("tr.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(std::filesystem::exists(path("tr.json")));
}

TEST_F(Cli, FlowRejectsStartOutsideDomain) {
  const Result r = skt("flow B 2 --x0 0.5,0.5");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "(1,2)")) << r.out;
  EXPECT_EQ(skt("flow A 2 --x0 1,2,3").code, 2);
  EXPECT_EQ(skt("flow A 2 --x0 2,2 --integrator euler").code, 2);
}

TEST_F(Cli, VerifySingleCriterion) {
  const Result r = skt("verify --only 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "[PASS]")) << r.out;
}
