#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apd/cli.hpp"
#include "apd/pattern_io.hpp"
#include "apd/presets.hpp"
#include "apd/proximal.hpp"
#include "apd/spectral.hpp"

using namespace apd;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("apd-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Runs the installed binary; stdout and stderr go to files in the scratch directory.
    int apd(const std::string& args) const {
        const std::string cmd = std::string(APD_CLI_PATH) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
    nlohmann::json json_file(const std::string& name) const { return nlohmann::json::parse(slurp(path(name))); }

    fs::path dir_;
};

// In-process entry point, for comparing against direct library calls.
int run_inline(std::vector<std::string> args, std::string& out) {
    std::vector<const char*> argv{"apd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    return code;
}

}  // namespace

TEST_F(Cli, GenerateThueMorseOnes) {
    ASSERT_EQ(apd("generate --preset thue_morse --iterations 10 --select 1 -o " + path("tm.json")), 0);
    const auto p = load_pattern(path("tm.json"));
    EXPECT_EQ(p.size(), std::size_t{1} << 19);
    const auto tm = thue_morse();
    const auto direct = realize(tm, substitute(tm, "0", 10), 0.0, std::set<Symbol>{'1'});
    ASSERT_EQ(p.size(), direct.size());
    for (std::size_t i = 0; i < p.size(); i += 997) EXPECT_EQ(p[i], direct[i]);
    const auto doc = json_file("tm.json");
    EXPECT_EQ(doc.at("tool"), "apd");
    EXPECT_EQ(doc.at("config").at("iterations"), 10);
    EXPECT_FALSE(doc.contains("timestamp"));
}

TEST_F(Cli, PeTestHalfIsTopological) {
    ASSERT_EQ(apd("generate --preset thue_morse --iterations 10 --select 1 -o " + path("tm.json")), 0);
    ASSERT_EQ(apd("pe-test -i " + path("tm.json") + " --k 0.5 --radii 2,8,32,128 --epsilon 0.05 -o " + path("pe.json")), 0);
    const auto r = json_file("pe.json").at("result");
    EXPECT_EQ(r.at("verdict"), "topological");
}

TEST_F(Cli, CoincidenceRankThueMorse) {
    ASSERT_EQ(apd("cr --preset thue_morse -o " + path("cr.json")), 0);
    const auto r = json_file("cr.json").at("result");
    EXPECT_EQ(r.at("cr_estimate"), 2);
    EXPECT_EQ(r.at("certified"), true);
    ASSERT_EQ(apd("cr --preset period_doubling"), 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(path("stdout"))).at("result").at("cr_estimate"), 1);
}

TEST_F(Cli, ErrorsExitOne) {
    EXPECT_EQ(apd("generate --preset penrose"), 1);
    EXPECT_NE(slurp(path("stderr")).find("unknown substitution preset"), std::string::npos);
    EXPECT_EQ(apd("analyze -i " + path("missing.json")), 1);
    EXPECT_EQ(apd("cr --preset fibonacci_sub"), 1);
    EXPECT_EQ(apd("pe-test -i " + path("missing.json") + " --k 0.5 --radii 2,8,32"), 1);
    EXPECT_EQ(apd("frobnicate"), 1);
}

TEST_F(Cli, InconclusiveExitsTwo) {
    ASSERT_EQ(apd("generate --preset lattice --spacing 1 --window 0,12 -o " + path("z.json")), 0);
    ASSERT_EQ(apd("proximal -i " + path("z.json") + " --against " + path("z.json") + " --start 6 --step 0 --steps 10"), 2);
    EXPECT_EQ(nlohmann::json::parse(slurp(path("stdout"))).at("result").at("verdict"), "inconclusive");
    EXPECT_EQ(apd("torus -i " + path("z.json") + " --basis 0.7071067811865476 --radii 1,2,3 --tol 0.001"), 2);
}

TEST_F(Cli, RepeatRunsAreByteIdentical) {
    ASSERT_EQ(apd("generate --preset fibonacci_cp --window 0,800 -o " + path("f.json")), 0);
    const std::string args = "diffract -i " + path("f.json") + " --kmin 0 --kmax 1.5 --kstep 0.001 --radii 4,16,64";
    ASSERT_EQ(apd(args), 0);
    const auto first = slurp(path("stdout"));
    ASSERT_EQ(apd(args), 0);
    EXPECT_EQ(slurp(path("stdout")), first);
    EXPECT_NE(first.find("\"entries\""), std::string::npos);
}

TEST_F(Cli, CsvAndTextCarryHeader) {
    ASSERT_EQ(apd("generate --preset thue_morse --iterations 3 --select 1 --format text -o " + path("tm.txt")), 0);
    const auto text = slurp(path("tm.txt"));
    EXPECT_NE(text.find("# generator="), std::string::npos);
    EXPECT_EQ(load_pattern(path("tm.txt")).size(), 32u);
    ASSERT_EQ(apd("pe-test -i " + path("tm.txt") + " --k 0.25 --radii 1,2,4 --format csv"), 0);
    const auto csv = slurp(path("stdout"));
    EXPECT_EQ(csv.rfind("# {", 0), 0u);
    EXPECT_NE(csv.find("radius,spread"), std::string::npos);
}

TEST_F(Cli, PlotWritesSvgNextToReport) {
    ASSERT_EQ(apd("generate --preset thue_morse --iterations 6 --select 1 -o " + path("tm.json")), 0);
    ASSERT_EQ(apd("pe-test -i " + path("tm.json") + " --k 0.25 --radii 2,4,8 --plot -o " + path("pe.json")), 0);
    EXPECT_NE(slurp(path("pe.json.svg")).find("<svg"), std::string::npos);
}

TEST(CliAdapter, MatchesLibraryCalls) {
    const auto dir = fs::temp_directory_path() / ("apd-adapter-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto tm = thue_morse();
    const auto p = realize(tm, substitute(tm, "0", 6), 0.0, std::set<Symbol>{'1'});
    const auto file = (dir / "tm.json").string();
    save_pattern(p, file, PatternFormat::json);

    std::string out;
    ASSERT_EQ(run_inline({"pe-test", "-i", file, "--k", "0.25", "--radii", "2,8,32"}, out), 0);
    const auto r = nlohmann::json::parse(out).at("result");
    const std::vector<double> radii{2, 8, 32};
    const auto v = topological_eigenvalue_test(p, {{0.25, 0}}, radii, 0.05);
    ASSERT_EQ(r.at("phase_spread_ladder").size(), v.ladder.size());
    for (std::size_t i = 0; i < v.ladder.size(); ++i) EXPECT_EQ(r.at("phase_spread_ladder")[i].at("spread").get<double>(), v.ladder[i].spread);

    ASSERT_EQ(run_inline({"cr", "--preset", "thue_morse", "--power-max", "5"}, out), 0);
    EXPECT_EQ(nlohmann::json::parse(out).at("result"), coincidence_to_json(coincidence_rank(tm, 5)));
    fs::remove_all(dir);
}

TEST(CliAdapter, HelpAndVersion) {
    std::string out;
    EXPECT_EQ(run_inline({"--version"}, out), 0);
    EXPECT_NE(out.find(cli::kToolVersion), std::string::npos);
    EXPECT_EQ(run_inline({"cr", "--help"}, out), 0);
    EXPECT_NE(out.find("--power-max"), std::string::npos);
}
