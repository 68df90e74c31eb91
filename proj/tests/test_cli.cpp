#include "cusptype/io.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace cusptype;
using io::json;
using matlin::Mat;
using ring::Elem;
using ring::Kind;
using ring::Ring;
using ring::RingPtr;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "cusptype_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

RunResult run(const std::string& args) {
    const fs::path out = scratch("stdout.txt"), err = scratch("stderr.txt");
    const std::string cmd =
        std::string(CUSPTYPE_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int st = std::system(cmd.c_str());
    RunResult res;
    if (WIFEXITED(st)) res.code = WEXITSTATUS(st);
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

fs::path write_matrix(const std::string& name, const Mat& m) {
    fs::path p = scratch(name);
    std::ofstream(p) << io::mat_to_json(m).dump() << '\n';
    return p;
}

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }
RingPtr mixed_ring(int p, int rw) { return Ring::make({Kind::Mixed, p, 1, rw, {}}); }

Mat from_ints(const RingPtr& R, std::vector<long long> v) {
    const int n = 2;
    Mat m = Mat::zero(R, n, R->rw);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = Elem::from_int(R, v[static_cast<std::size_t>(i * n + j)], R->rw);
    return m;
}

const char* kAtlasHeader =
    "ring,n,r,l,lp,class_id,canonical_rep,charpoly,label,j,twist_c,verdict,regular,"
    "class_size";

} // namespace

TEST(Cli, HelpListsEverySubcommand) {
    RunResult r = run("--help");
    EXPECT_EQ(r.code, 0);
    for (const char* name :
         {"classify", "atlas", "stabilizer", "companion", "example4", "selftest"})
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST(Cli, UnknownSubcommandFails) {
    RunResult r = run("frobnicate");
    EXPECT_NE(r.code, 0);
}

TEST(Cli, ClassifyIrreducibleClassAsJson) {
    // companion matrix of x^2 + x + 1: irreducible residue charpoly
    fs::path in = write_matrix("irred.json", from_ints(equal_ring(2, 1, 2), {0, 1, 1, 1}));
    RunResult r = run("classify --file " + in.string() + " --r 4 --format json");
    ASSERT_EQ(r.code, 0) << r.err;
    json out = json::parse(r.out);
    EXPECT_EQ(out["ring"], "equal:p2:f1:r2");
    EXPECT_EQ(out["r"], 4);
    EXPECT_EQ(out["l"], 2);
    EXPECT_EQ(out["lp"], 2);
    EXPECT_EQ(out["label"], "IrredModP");
    EXPECT_EQ(out["has_twist"], true);
    EXPECT_EQ(out["twist_c"], 0);
    EXPECT_EQ(out["verdict"], "IsType");
    EXPECT_EQ(out["regular"], true);
    EXPECT_GT(out["class_size"].get<std::size_t>(), 0u);
}

TEST(Cli, ClassifySignalsAnUndecidedLevelInItsExitCode) {
    // nilpotent upper form at r = 2: the coset criterion cannot decide
    fs::path in = write_matrix("nilp.json", from_ints(equal_ring(2, 1, 1), {0, 1, 0, 0}));
    RunResult r = run("classify --file " + in.string() + " --r 2");
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_NE(r.out.find("verdict: IndeterminateSmallConductor"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("label: PiForm"), std::string::npos);
}

TEST(Cli, MalformedInputFailsWithAMessage) {
    fs::path in = scratch("broken.json");
    std::ofstream(in) << "{ this is not json";
    RunResult r = run("classify --file " + in.string() + " --r 2");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error:"), std::string::npos) << r.err;
}

TEST(Cli, AtlasWritesThePinnedHeaderAndIsJobCountInvariant) {
    fs::path a = scratch("atlas_serial.csv"), b = scratch("atlas_par.csv");
    RunResult r1 = run("atlas 2 2 4 --out " + a.string());
    ASSERT_EQ(r1.code, 0) << r1.err;
    EXPECT_NE(r1.err.find("classes: "), std::string::npos);
    RunResult r2 = run("atlas 2 2 4 --out " + b.string() + " --jobs 2");
    ASSERT_EQ(r2.code, 0) << r2.err;
    std::string csv = slurp(a);
    EXPECT_EQ(csv.rfind(kAtlasHeader, 0), 0u);
    EXPECT_EQ(csv, slurp(b));
}

TEST(Cli, AtlasRejectsANonPrimePowerFieldSize) {
    RunResult r = run("atlas 6 2 4 --out -");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("prime power"), std::string::npos) << r.err;
}

TEST(Cli, StabilizerRoutesAgree) {
    fs::path in = write_matrix("e01.json", from_ints(mixed_ring(2, 2), {0, 1, 0, 0}));
    RunResult r = run("stabilizer --file " + in.string() + " --r 2 --format json");
    ASSERT_EQ(r.code, 0) << r.err;
    json out = json::parse(r.out);
    EXPECT_EQ(out["brute_force_order"], 32);
    EXPECT_EQ(out["closed_form_order"], 32);
    EXPECT_EQ(out["agree"], true);
}

TEST(Cli, CompanionFormRoundTrip) {
    RingPtr R = mixed_ring(2, 2);
    fs::path in = write_matrix("cyclic.json", from_ints(R, {1, 1, 1, 0}));
    RunResult r = run("companion --file " + in.string());
    ASSERT_EQ(r.code, 0) << r.err;
    json out = json::parse(r.out);
    ASSERT_TRUE(out.contains("conjugator"));
    ASSERT_TRUE(out.contains("companion"));
    // charpoly x^2 - x - 1 = x^2 + 3x + 3 over Z/4
    EXPECT_EQ(out["companion"], io::mat_to_json(from_ints(R, {0, 1, 1, 1})));
}

TEST(Cli, WorkedExampleReplaysCleanly) {
    for (const char* args : {"example4 --q 2", "example4 --q 3", "example4 --q 2 --ring mixed"}) {
        RunResult r = run(args);
        EXPECT_EQ(r.code, 0) << args << "\n" << r.out << r.err;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << args;
        EXPECT_NE(r.out.find("PASS"), std::string::npos) << args;
    }
}
