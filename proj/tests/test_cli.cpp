#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "copface/copface.hpp"

using namespace copface;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("copface_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path file(const std::string& name) const { return dir_ / name; }

    CliRun run(const std::string& args, const std::string& env = "") const {
        const fs::path err = file("stderr.txt");
        const std::string cmd = env + " '" COPFACE_CLI_PATH "' " + args + " 2>'" + err.string() + "'";
        CliRun r;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return r;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
        const int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = slurp(err);
        return r;
    }

    std::string write_circulant(Index n) const {
        const fs::path p = file("c" + std::to_string(n) + ".txt");
        write_matrix_file(p.string(), build_circulant(n).first);
        return p.string();
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, HildebrandWritesMatrix) {
    const std::string out = file("a.txt").string();
    const CliRun r = run("hildebrand --n 5 --out " + out);
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), 2.0);
    const SymMatrix a = read_matrix_file(out);
    EXPECT_EQ(a.order(), 5);
    for (Index i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(a(i, i), 2.0);
}

TEST_F(Cli, HildebrandRejectsEvenOrder) {
    const CliRun r = run("hildebrand --n 6 --out " + file("a.txt").string());
    EXPECT_EQ(r.code, 2);
    const Json e = Json::parse(r.err);
    EXPECT_EQ(e["error"]["kind"], "precondition");
    EXPECT_FALSE(fs::exists(file("a.txt")));
}

TEST_F(Cli, ZerosOnCirculant) {
    const CliRun r = run("zeros " + write_circulant(5));
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["count"], 5);
    EXPECT_TRUE(j["complete"].get<bool>());
    EXPECT_EQ(j["zeros"][0]["support"], Json::array({1, 2, 3}));
}

TEST_F(Cli, GraphAndFacedim) {
    const std::string c = write_circulant(7);
    const CliRun g = run("graph " + c);
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(Json::parse(g.out)["edges"].size(), 0u);
    const CliRun f = run("facedim " + c);
    ASSERT_EQ(f.code, 0) << f.err;
    const Json j = Json::parse(f.out);
    EXPECT_EQ(j["dimension"], 7);
    EXPECT_TRUE(j["maximal"].get<bool>());
}

TEST_F(Cli, CertifyIdentity) {
    const fs::path p = file("id.txt");
    write_matrix_file(p.string(), SymMatrix::identity(3));
    const CliRun r = run("certify " + p.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_FALSE(j["extreme"].get<bool>());
    EXPECT_FALSE(j["exposed"].get<bool>());
}

TEST_F(Cli, CertifyCirculant) {
    const CliRun r = run("certify " + write_circulant(5));
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["extreme"].get<bool>());
    EXPECT_TRUE(j["exposed"].get<bool>());
    EXPECT_EQ(j["equality_nullity"], 1);
}

TEST_F(Cli, LiftWritesOrderEight) {
    const std::string out = file("b.txt").string();
    const CliRun r = run("lift " + write_circulant(7) + " --index-set 1,2,3 --out " + out);
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["J0"], Json::array({1, 2, 3}));
    EXPECT_TRUE(j["hypotheses"]["all"].get<bool>());
    EXPECT_EQ(read_matrix_file(out).order(), 8);
}

TEST_F(Cli, InvalidIndexSet) {
    const std::string c = write_circulant(5);
    for (const std::string set : {"0", "6", "a,b", ""}) {
        const CliRun r = run("lift " + c + " --index-set '" + set + "' --out " + file("b.txt").string());
        EXPECT_EQ(r.code, 2) << set << ": " << r.err;
        EXPECT_TRUE(Json::accept(r.err)) << r.err;
    }
}

TEST_F(Cli, MissingFileIsIoError) {
    const CliRun r = run("zeros " + file("missing.txt").string());
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(Json::parse(r.err)["error"]["kind"], "io");
}

TEST_F(Cli, MalformedMatrixIsPrecondition) {
    const fs::path p = file("bad.txt");
    std::ofstream(p) << "2\n1 2\n3 1\n";
    const CliRun r = run("zeros " + p.string());
    EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(Cli, ToleranceFromEnvironment) {
    const std::string c = write_circulant(5);
    EXPECT_EQ(run("zeros " + c, "COPFACE_TOL_ZERO=1e-10").code, 0);
    const CliRun bad = run("zeros " + c, "COPFACE_TOL_ZERO=-1");
    EXPECT_EQ(bad.code, 2) << bad.err;
    // The flag wins over the environment.
    EXPECT_EQ(run("--tol-zero 1e-10 zeros " + c, "COPFACE_TOL_ZERO=-1").code, 0);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("bounds").code, 2);
}

TEST_F(Cli, BoundsJson) {
    const CliRun r = run("bounds --n 8 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["upper_bound_constructed"], 11);
    EXPECT_EQ(j["prior_upper"], 16);
    EXPECT_TRUE(j["constructed_is_smaller"].get<bool>());
    EXPECT_EQ(run("bounds --n 13").code, 2);
}

TEST_F(Cli, BoundsTable) {
    const CliRun r = run("bounds --n 5 --to 11");
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    std::getline(lines, line);
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 7);
}
