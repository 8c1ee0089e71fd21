#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string command = std::string(CTHETA_CLI) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return r;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ctheta-cli-" + std::to_string(::getpid()) + "-" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& contents) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

TEST_F(CliTest, ThetaExact) {
    const CliResult r = run("theta --group sym:4 --connection efp:1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("theta = 6 (exact)"), std::string::npos) << r.out;
    EXPECT_NE(run("theta --group sym:3 --connection efp:1").out.find("theta = 2 (exact)"), std::string::npos);
}

TEST_F(CliTest, ThetaFloat) {
    const CliResult r = run("theta --group cyclic:5 --connection 'elements:{1,4}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("theta ≈ 2.2360680"), std::string::npos) << r.out;
    EXPECT_NE(run("theta --group sym:4 --connection efp:1 --float").out.find("theta ≈ 6.0000000"), std::string::npos);
}

TEST_F(CliTest, ThetaWithImportedTable) {
    const std::string table = std::string(CTHETA_DATA_DIR) + "/gl2_3.json";
    const CliResult r = run("theta --group gl:3,2 --connection gl-rank:1 --chartable " + table);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("theta ≈ 6.0000000"), std::string::npos) << r.out;
    EXPECT_EQ(run("theta --group gl:3,2 --connection gl-rank:1 --chartable " + table + " --exact").code, 2);
    EXPECT_EQ(run("theta --group gl:3,2 --connection gl-rank:1").code, 2);
}

TEST_F(CliTest, Alpha) {
    const CliResult r = run("alpha --group cyclic:5 --connection 'elements:{1,4}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("alpha = 2"), std::string::npos) << r.out;
    const std::string g = file("c5.txt", "vertices 5 edges 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    EXPECT_NE(run("alpha --graph " + g).out.find("alpha = 2"), std::string::npos);
}

TEST_F(CliTest, BadInputExitsWithTwo) {
    EXPECT_EQ(run("theta --group sym:4 --connection efp:9").code, 2);
    EXPECT_EQ(run("theta --group sym:3 --connection 'elements:{1}'").code, 2);
    EXPECT_EQ(run("theta --group nonsense:3 --connection efp:1").code, 2);
    EXPECT_EQ(run("theta --no-such-flag").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("alpha --graph " + path("missing.txt")).code, 2);
    EXPECT_EQ(run("alpha --graph " + file("bad.txt", "vertices 2 edges 1\n0 7\n")).code, 2);
}

TEST_F(CliTest, EfpTable) {
    const std::string csv = path("efp.csv");
    const CliResult r = run("efp-table --nmax 4 --csv " + csv);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("✓"), std::string::npos);
    const std::string text = slurp(csv);
    EXPECT_EQ(text.rfind("n,k,theta,conjectured_max,checkmark,lp_rows,lp_cols,runtime_ms\n", 0), 0u);
    EXPECT_NE(text.find("\n4,1,6,6,1,"), std::string::npos) << text;
}

TEST_F(CliTest, ExportSdpa) {
    const std::string a = path("a.dat-s");
    const CliResult ra = run("export-sdpa --group cyclic:5 --connection 'elements:{1,4}' --formulation A --out " + a);
    EXPECT_EQ(ra.code, 0);
    EXPECT_NE(ra.out.find("block(s) of size 5, 6 constraints"), std::string::npos) << ra.out;
    EXPECT_EQ(slurp(a).rfind("* cayley-theta semidefinite program", 0), 0u);
    const std::string c = path("c.dat-s");
    const CliResult rc = run("export-sdpa --group sym:3 --connection efp:1 --formulation C --out " + c);
    EXPECT_EQ(rc.code, 0);
    EXPECT_NE(rc.out.find("of size 1 1 2"), std::string::npos) << rc.out;
    EXPECT_EQ(run("export-sdpa --group sym:4 --connection efp:1 --formulation C --out " + c).code, 2);
    EXPECT_EQ(run("export-sdpa --group sym:3 --connection efp:1 --formulation B --out " + c).code, 2);
}

TEST_F(CliTest, ChartableRoundTrip) {
    const std::string out = path("s4.json");
    EXPECT_EQ(run("chartable --group sym:4 --out " + out).code, 0);
    const CliResult v = run("chartable validate " + out + " --group sym:4");
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("valid: 5 irreps, exact"), std::string::npos) << v.out;
    std::string text = slurp(out);
    text.replace(text.find("\"-1\""), 4, "\"0\"");
    const std::string broken = file("broken.json", text);
    EXPECT_EQ(run("chartable validate " + broken + " --group sym:4").code, 2);
}

TEST_F(CliTest, Bochner) {
    const std::string pos = file("pos.txt", "class\n1 0 1\n");
    EXPECT_NE(run("bochner --group sym:3 --function " + pos).out.find("positive type: yes"), std::string::npos);
    const std::string neg = file("neg.txt", "class\n0 1 0\n");
    const CliResult r = run("bochner --group sym:3 --function " + neg);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("positive type: no"), std::string::npos) << r.out;
    const std::string element = file("el.txt", "element\n1 1/2 0 0 0 1/2\n");
    EXPECT_EQ(run("bochner --group sym:3 --function " + element).code, 0);
    EXPECT_EQ(run("bochner --group sym:4 --function " + file("el4.txt", "element\n1\n")).code, 2);
}

TEST_F(CliTest, Blowup) {
    const std::string g = file("c5.txt", "vertices 5 edges 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    const std::string d10 = file("d10.txt", "generators 5 2\n1 2 3 4 0\n0 4 3 2 1\n");
    const CliResult r = run("blowup --graph " + g + " --action " + d10 + " --alpha");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("group order 10"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("alpha(graph) = 2, alpha(Cay) = 4"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("holds"), std::string::npos);
    const std::string split = file("split.txt", "generators 5 1\n1 0 2 3 4\n");
    EXPECT_EQ(run("blowup --graph " + g + " --action " + split).code, 2);
}

TEST_F(CliTest, JsonReportIsDeterministic) {
    const std::string report = path("r.json");
    ASSERT_EQ(run("--json " + report + " theta --group sym:4 --connection efp:1").code, 0);
    auto ja = nlohmann::json::parse(slurp(report));
    ASSERT_EQ(run("--json " + report + " theta --group sym:4 --connection efp:1").code, 0);
    auto jb = nlohmann::json::parse(slurp(report));
    EXPECT_EQ(ja["schema"], 1);
    EXPECT_TRUE(ja.contains("runtime_ms"));
    ja.erase("runtime_ms");
    jb.erase("runtime_ms");
    EXPECT_EQ(ja, jb);
    EXPECT_EQ(ja["mode"], "exact");
    EXPECT_EQ(ja["results"]["theta"], "6");
}

TEST_F(CliTest, ExactOutputsParseBack) {
    const std::string report = path("r.json");
    ASSERT_EQ(run("--json " + report + " theta --group sym:5 --connection efp:3").code, 0);
    const auto j = nlohmann::json::parse(slurp(report));
    for (const auto& [label, value] : j["results"]["a"].items()) {
        const std::string text = value.get<std::string>();
        const auto slash = text.find('/');
        EXPECT_NO_THROW((void)std::stoll(text.substr(0, slash))) << label;
        if (slash != std::string::npos) {
            EXPECT_GT(std::stoll(text.substr(slash + 1)), 0);
        }
    }
}

}  // namespace
