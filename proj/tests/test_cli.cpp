#include "fgalab/suites.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace fgalab;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(FGA_LAB_BIN) + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    if (!p)
        throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string &name) { return std::string(SAMPLES_DIR) + "/" + name; }

} // namespace

TEST(Cli, ParityOfThetaTwoUnderMultiplicative) {
    auto r = run("verify --rs B3 --fgl multiplicative:a=1 --suite lemma45 --d 2");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0].at("computed").at("theta_div2"), false);
    EXPECT_EQ(j[0].at("computed").at("even"), false);
    EXPECT_EQ(j[0].at("status"), "pass");
}

TEST(Cli, TypeDTopInvariant) {
    auto r = run("verify --rs D4 --fgl additive --suite lemma45 --d n");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j[0].at("computed").at("theta_div2n"), true);
    EXPECT_EQ(j[0].at("computed").at("diag_even"), true);
}

TEST(Cli, ComputeTau) {
    auto r = run("compute tau --rs B3 --from multiplicative:a=1 --to additive --d 2");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("paper_bound"), 2);
    EXPECT_EQ(j.at("divides_bound"), true);
}

TEST(Cli, ComputeTheta) {
    auto r = run("compute theta --rs B3 --fgl additive --d 1");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("content"), 2);
    EXPECT_EQ(j.at("vars"), 3);
}

TEST(Cli, ComputeInverseIsXModTwo) {
    auto r = run("compute inverse --fgl lorentz:beta=2 --trunc 6");
    ASSERT_EQ(r.code, 0);
    auto s = series_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(mod2_reduce(s), TruncSeries<Integer>::variable(IntegerRing{}, 1, 6, 0));
}

TEST(Cli, ComputeNSeriesAndLattices) {
    auto r = run("compute nseries --fgl multiplicative:a=1 --m 2 --trunc 4");
    ASSERT_EQ(r.code, 0);
    auto s = series_from_json(nlohmann::json::parse(r.out));
    auto x = TruncSeries<Integer>::variable(IntegerRing{}, 1, 4, 0);
    EXPECT_EQ(s, x.scaled(Integer(2)) - x * x);
    auto inv = run("compute invariants --rs B3 --d 2");
    ASSERT_EQ(inv.code, 0);
    auto l = lattice_from_json(nlohmann::json::parse(inv.out));
    EXPECT_EQ(l.rank(), 1u);
    EXPECT_EQ(run("compute kernel --rs B3 --d 2").out, inv.out);
}

TEST(Cli, TableLaw) {
    auto r = run("compute nseries --fgl table:" + sample("table_x_plus_y_minus_2xy.json") + " --m 2 --trunc 4");
    ASSERT_EQ(r.code, 0);
    auto s = series_from_json(nlohmann::json::parse(r.out));
    auto x = TruncSeries<Integer>::variable(IntegerRing{}, 1, 4, 0);
    EXPECT_EQ(s, x.scaled(Integer(2)) - (x * x).scaled(Integer(2)));
}

TEST(Cli, Report) {
    auto r = run("report --rs B3 --fgl additive --degrees 2..5");
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("root_system,rank,degree,fgl,trunc,r_d,zeta_d,eta_d", 0), 0u);
    std::vector<std::string> etas;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        ASSERT_GE(f.size(), 8u);
        etas.push_back(f[7]);
    }
    EXPECT_EQ(etas, (std::vector<std::string>{"2", "2", "4", "64"}));
    auto d = run("report --rs D4 --fgl additive --degrees 2..5");
    EXPECT_NE(d.out.find("D4,4,4,additive,8,16,16,32,"), std::string::npos) << d.out;
}

TEST(Cli, EmptyReport) {
    auto r = run("report --rs B3 --degrees 3..2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("verify --rs A3 --suites lemma48").code, 2);
    EXPECT_EQ(run("verify --fgl multiplicative:b=1 --suites lemma48").code, 2);
    EXPECT_EQ(run("verify --fgl bogus --suites lemma48").code, 2);
    EXPECT_EQ(run("verify --suites lemma99").code, 2);
    EXPECT_EQ(run("verify --suites lemma48 --trunc 5").code, 2);
    EXPECT_EQ(run("verify --suites lemma48 --degrees 2..x").code, 2);
    EXPECT_EQ(run("verify").code, 2);
    EXPECT_EQ(run("compute frobnicate").code, 2);
    EXPECT_EQ(run("compute theta --rs B3 --d 4").code, 2);
    EXPECT_EQ(run("nonsense").code, 2);
    EXPECT_EQ(run("verify --suites lemma48 --config /nonexistent.json").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, LowTruncationNamesTheBound) {
    std::string cmd = std::string(FGA_LAB_BIN) + " verify --suites lemma48 --degrees 2..5 --trunc 5 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    char buf[512] = {};
    std::size_t n = fread(buf, 1, sizeof buf - 1, p);
    pclose(p);
    EXPECT_NE(std::string(buf, n).find("need at least 7"), std::string::npos);
    EXPECT_EQ(run("verify --suites lemma52 --degrees 2..3 --trunc 4 --allow-low-trunc").code, 0);
}

TEST(Cli, ConfigAndPrecedence) {
    auto r = run("verify --config " + sample("b3_quick.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.size(), 8u); // 2 suites x 2 laws x 2 degrees
    EXPECT_EQ(j[0].at("instance").at("trunc"), 6);
    auto o = run("verify --config " + sample("b3_quick.json") + " --trunc 7 --fgl additive");
    auto k = nlohmann::json::parse(o.out);
    EXPECT_EQ(k.size(), 4u);
    EXPECT_EQ(k[0].at("instance").at("trunc"), 7);
}

TEST(Cli, DeterministicAcrossJobs) {
    const std::string args = "verify --rs B3 --fgl additive --fgl lorentz:beta=1 --suites lemma51,theorem11,cor63 "
                             "--degrees 2..4 --trunc 6 --format csv";
    auto one = run(args + " --jobs 1");
    auto four = run(args + " --jobs 4");
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(one.code, four.code);
}

TEST(Cli, OutputFile) {
    auto path = std::filesystem::temp_directory_path() / "fga_lab_cli_test.csv";
    auto r = run("verify --suites axioms --fgl lorentz:beta=3 --format csv --out " + path.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "suite,type,rank,degree,fgl,trunc,status,failed_checks");
    std::filesystem::remove(path);
}

TEST(Suites, RunPoolKeepsOrder) {
    std::vector<std::function<int()>> tasks;
    for (int i = 0; i < 50; ++i)
        tasks.push_back([i] { return i * i; });
    auto out = run_pool(tasks, 4);
    for (int i = 0; i < 50; ++i)
        EXPECT_EQ(out[static_cast<std::size_t>(i)], i * i);
    std::vector<std::function<int()>> bad{[]() -> int { throw Error("boom"); }};
    EXPECT_THROW(run_pool(bad, 2), Error);
}

TEST(Suites, ParseSpecs) {
    EXPECT_EQ(parse_degrees("2..5"), (std::pair<int, int>{2, 5}));
    EXPECT_EQ(parse_degrees("n", 4), (std::pair<int, int>{4, 4}));
    EXPECT_THROW(parse_degrees("n"), UsageError);
    EXPECT_THROW(parse_degrees("-1"), UsageError);
    EXPECT_EQ(parse_fgl("elliptic:a1=1", 6).name(), "elliptic:a1=1,a2=0,a3=0,a4=0,a6=0");
    EXPECT_THROW(parse_fgl("lorentz:beta=1,beta=2", 6), UsageError);
    EXPECT_THROW(parse_fgl("multiplicative:a=x", 6), UsageError);
    EXPECT_THROW(parse_fgl("additive:a=1", 6), UsageError);
    EXPECT_THROW(parse_root_system("C3"), UsageError);
}
