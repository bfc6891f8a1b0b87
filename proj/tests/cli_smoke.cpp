// Runs the built CLI end to end and checks outputs and exit codes.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

// Each test gets its own directory so ctest can run them in parallel.
fs::path scratch() {
  return fs::path(QPLACE_SCRATCH) /
         ::testing::UnitTest::GetInstance()->current_test_info()->name();
}

void write(const std::string& name, const std::string& text) {
  fs::create_directories(scratch());
  std::ofstream(scratch() / name) << text;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = std::string("\"") + QPLACE_CLI + "\" " + args + " > \"" +
                          out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out)};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    write("acetyl.env",
          "unit 1e-4\nM M 8\nC1 C1 8\nC2 C2 1\nC1 M 38\nC1 C2 89\nM C2 672\n");
    write("enc.circ", "qubits a b c\nRy90 1 a\nRz90 0 a\nZZ90 1 a b\nRz-90 0 a\n"
                      "Rz-90 0 b\nRy90 1 c\nZZ90 1 b c\nRz90 0 c\nRy90 1 b\n");
  }
  static std::string at(const std::string& name) { return (scratch() / name).string(); }
};

TEST_F(Cli, PlaceReportsOptimum) {
  const auto r = run("place --env " + at("acetyl.env") + " --circuit " + at("enc.circ"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("runtime_seconds: 0.0136"), std::string::npos);
  EXPECT_NE(r.out.find("subcircuits: 1"), std::string::npos);
}

TEST_F(Cli, OracleAgrees) {
  const auto r = run("oracle --env " + at("acetyl.env") + " --circuit " + at("enc.circ"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("136"), std::string::npos);
}

TEST_F(Cli, RouteSwapsEnds) {
  const auto r = run("route --env " + at("acetyl.env") + " --threshold 100 --perm M=C2,C2=M");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("layer 3:"), std::string::npos);
}

TEST_F(Cli, ChainGeneratorIsReproducible) {
  ASSERT_EQ(run("gen-chain --n 8 --seed 3 --out " + at("c1")).code, 0);
  ASSERT_EQ(run("gen-chain --n 8 --seed 3 --out " + at("c2")).code, 0);
  EXPECT_EQ(read(at("c1.circ")), read(at("c2.circ")));
  EXPECT_EQ(read(at("c1.meta")), read(at("c2.meta")));
  const auto r = run("place --env " + at("c1.env") + " --circuit " + at("c1.circ"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("subcircuits: 3"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  write("bad.env", "M M 8\n");
  EXPECT_EQ(run("place --env " + at("bad.env") + " --circuit " + at("enc.circ")).code, 2);
  EXPECT_EQ(run("place --env " + at("acetyl.env") + " --circuit " + at("enc.circ") +
                " --threshold 0")
                .code,
            3);
  ASSERT_EQ(run("gen-chain --n 16 --seed 1 --out " + at("c16")).code, 0);
  EXPECT_EQ(run("oracle --env " + at("c16.env") + " --circuit " + at("c16.circ")).code, 4);
  EXPECT_NE(run("place --env").code, 0);
}

} // namespace
