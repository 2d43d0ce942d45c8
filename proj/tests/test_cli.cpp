#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "support.hpp"

using namespace qcopula;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qcopula_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the binary with stderr captured to a file; returns the exit status.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + QCOPULA_CLI_PATH + " " + args + " 2> " + path("stderr.txt") + " > " + path("stdout.txt");
    const int status = std::system(cmd.c_str());
    err_ = read(path("stderr.txt"));
    out_ = read(path("stdout.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string err_;
  std::string out_;
};

}  // namespace

TEST_F(Cli, CopulaOfMaximallyMixed) {
  write("in.json", dump_json(density_to_json(DensityMatrix::maximally_mixed(2, 2))));
  ASSERT_EQ(run("copula " + path("in.json") + " --output " + path("out.json")), 0) << err_;
  const json doc = json::parse(read(path("out.json")));
  const DensityMatrix chi = density_from_json(doc.at("chi"));
  EXPECT_LT((chi.matrix() - identity(4) / 4.0).norm(), 1e-15);
  EXPECT_EQ(doc.at("report").at("input_digest").get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_TRUE(doc.at("report").contains("timing_ms"));
  EXPECT_TRUE(doc.at("report").at("result").at("converged").get<bool>());
  EXPECT_EQ(doc.at("report").at("config").at("tol").get<double>(), 1e-12);
}

TEST_F(Cli, TraceViolationNamesInvariant) {
  write("in.json", dump_json(json{{"dims", {2, 2}}, {"matrix", complex_matrix_to_json(0.9 * identity(4) / 4.0)}}));
  EXPECT_EQ(run("copula " + path("in.json")), 3);
  EXPECT_NE(err_.find("trace"), std::string::npos) << err_;
}

TEST_F(Cli, ValidationFailuresExitThree) {
  CMatrix h = identity(4) / 4.0;
  h(0, 1) = 0.2;
  write("herm.json", dump_json(json{{"dims", {2, 2}}, {"matrix", complex_matrix_to_json(h)}}));
  EXPECT_EQ(run("copula " + path("herm.json")), 3);
  EXPECT_NE(err_.find("Hermitian"), std::string::npos) << err_;
  write("dims.json", dump_json(json{{"dims", {2, 3}}, {"matrix", complex_matrix_to_json(identity(4) / 4.0)}}));
  EXPECT_EQ(run("copula " + path("dims.json")), 3);
  EXPECT_NE(err_.find("dims"), std::string::npos) << err_;
  write("garbage.json", "{not json");
  EXPECT_EQ(run("copula " + path("garbage.json")), 3);
  EXPECT_EQ(run("copula " + path("missing.json")), 3);
  write("bell.json", dump_json(density_to_json(testing_support::bell_state())));
  EXPECT_EQ(run("copula " + path("bell.json")), 3);
  EXPECT_EQ(run("copula " + path("bell.json") + " --regularize"), 0) << err_;
}

TEST_F(Cli, RandomStateVerdictsAgree) {
  write("in.json", dump_json(density_to_json(random_full_rank_state(2, 2, 17))));
  ASSERT_EQ(run("copula " + path("in.json")), 0) << err_;
  const json v = json::parse(out_).at("report").at("verdicts");
  EXPECT_EQ(v.at("input").at("tag"), v.at("copula").at("tag"));
}

TEST_F(Cli, NotConvergedExitsTwo) {
  write("in.json", dump_json(density_to_json(random_full_rank_state(2, 2, 3))));
  EXPECT_EQ(run("copula " + path("in.json") + " --max-iter 2"), 2);
}

TEST_F(Cli, ConfigPrecedence) {
  write("in.json", dump_json(density_to_json(random_full_rank_state(2, 2, 3))));
  write("cfg.json", R"({"tol": 1e-10, "max_iter": 2})");
  EXPECT_EQ(run("copula " + path("in.json") + " --config " + path("cfg.json")), 2);
  ASSERT_EQ(run("copula " + path("in.json") + " --config " + path("cfg.json") + " --max-iter 500"), 0) << err_;
  const json cfg = json::parse(out_).at("report").at("config");
  EXPECT_EQ(cfg.at("tol").get<double>(), 1e-10);
  EXPECT_EQ(cfg.at("max_iter").get<int>(), 500);
  write("bad.json", R"({"tolerance": 1e-10})");
  EXPECT_EQ(run("copula " + path("in.json") + " --config " + path("bad.json")), 3);
}

TEST_F(Cli, CopulaOutputIsDeterministic) {
  write("in.json", dump_json(density_to_json(random_full_rank_state(3, 2, 5))));
  ASSERT_EQ(run("copula --no-timing " + path("in.json") + " -o " + path("a.json")), 0);
  ASSERT_EQ(run("copula --no-timing " + path("in.json") + " -o " + path("b.json")), 0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
  EXPECT_FALSE(json::parse(read(path("a.json"))).at("report").contains("timing_ms"));
}

TEST_F(Cli, ExperimentLambda) {
  ASSERT_EQ(run("experiment lambda --seed 7 --count 50 --dims 2 3"), 0) << err_;
  const json doc = json::parse(out_);
  EXPECT_EQ(doc.at("passed").get<int>(), 50);
  EXPECT_LE(doc.at("max").at("lambda_gap").get<double>(), 1e-8);
}

TEST_F(Cli, ExperimentIsThreadCountIndependent) {
  ASSERT_EQ(run("experiment uniqueness --seed 3 --count 8 -o " + path("one.json"), "QCOPULA_THREADS=1"), 0);
  ASSERT_EQ(run("experiment uniqueness --seed 3 --count 8 -o " + path("four.json"), "QCOPULA_THREADS=4"), 0);
  EXPECT_EQ(read(path("one.json")), read(path("four.json")));
}

TEST_F(Cli, ExperimentErrors) {
  EXPECT_EQ(run("experiment nonsense"), 4);
  EXPECT_EQ(run("experiment lambda --count 0"), 5);
  EXPECT_EQ(run("experiment"), 5);
  EXPECT_EQ(run("frobnicate"), 5);
}

TEST_F(Cli, Classical) {
  write("ones.json", "[[1, 1], [1, 1]]");
  ASSERT_EQ(run("classical " + path("ones.json")), 0) << err_;
  const RMatrix s = real_matrix_from_json(json::parse(out_).at("scaled"), "scaled");
  EXPECT_LT((s - RMatrix::Constant(2, 2, 0.5)).norm(), 1e-15);

  write("m.json", R"({"matrix": [[1, 2], [3, 4]]})");
  ASSERT_EQ(run("classical " + path("m.json")), 0) << err_;
  EXPECT_LE(json::parse(out_).at("defect").get<double>(), 1e-12);

  write("zero.json", "[[1, 0], [3, 4]]");
  EXPECT_EQ(run("classical " + path("zero.json")), 3);
}

TEST_F(Cli, UnwritableOutputExitsSeven) {
  write("ones.json", "[[1, 1], [1, 1]]");
  EXPECT_EQ(run("classical " + path("ones.json") + " -o " + path("no/such/dir/out.json")), 7);
}
