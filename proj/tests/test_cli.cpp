#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ffext_cli.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ffext");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = ffext::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, DegreeExamples) {
    auto r = run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t,t+1,t^2+t"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "degree: 4\n"));
    EXPECT_TRUE(contains(r.out, "geometric: true"));
    r = run({"degree", "artin-schreier", "--q", "3", "--S", "1/t,2/t,1/t+t"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "degree: 9\n"));
    r = run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t^2"});
    EXPECT_TRUE(contains(r.out, "degree: 1\n"));
    r = run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t,t+1,t^2+t", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["degree"], "4");
    EXPECT_EQ(j["schema_version"], 1);
}

TEST(Cli, SymbolExamples) {
    auto r = run({"symbol", "kummer", "--q", "3", "--m", "2", "--a", "t+2", "--P", "t"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "Unit(1)"));
    EXPECT_TRUE(contains(r.out, "exp(2πi·1/2)"));
    r = run({"symbol", "hasse", "--q", "2", "--D", "1/(t+1)", "--P", "t"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 1), "1");
    r = run({"symbol", "hasse", "--q", "2", "--D", "t^2+t", "--P", "t+1"});
    EXPECT_EQ(r.out.substr(0, 1), "0");
    r = run({"symbol", "kummer", "--q", "3", "--m", "2", "--a", "t+2", "--P", "t^2+2*t+1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "t+1"));
}

TEST(Cli, DensityExamples) {
    auto r = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t^2", "--N-max", "5", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& row : j["rows"]) EXPECT_EQ(row["fraction"], 1.0);
    EXPECT_FALSE(j.contains("wall_clock_seconds"));
    r = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "2", "--N-max", "5"});
    EXPECT_EQ(r.code, 4);
    EXPECT_TRUE(contains(r.err, "(1)"));
    r = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "2", "--N-max", "3", "--force"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "heuristic"));
    r = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t", "--N-max", "6", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "N,pi,excluded"));
    const auto again = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t", "--N-max", "6", "--format", "csv"});
    EXPECT_EQ(r.out, again.out);
}

TEST(Cli, SmallCommands) {
    auto r = run({"pi", "--q", "2", "--N", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "6\n");
    r = run({"normalize", "--q", "2", "--D", "1/t^2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "normal form: 1/t\n"));
    EXPECT_TRUE(contains(r.out, "witness: 1/t\n"));
    r = run({"classify", "--q", "3", "--D", "1/t"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "Real"));
    EXPECT_TRUE(contains(r.out, "{t}"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t,(t"}).code, 2);
    EXPECT_EQ(run({"degree", "kummer", "--q", "5", "--m", "3", "--S", "t"}).code, 3);
    EXPECT_EQ(run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t,0"}).code, 3);
    EXPECT_EQ(run({"degree", "kummer", "--q", "6", "--m", "2", "--S", "t"}).code, 3);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t", "--N-max", "6", "--budget", "100"}).code, 5);
    const auto r = run({"degree", "kummer", "--q", "5", "--m", "2", "--S", "t+$"});
    EXPECT_TRUE(contains(r.err, "position"));
}

TEST(Cli, BudgetEnvironmentVariable) {
    ::setenv("FFEXT_BUDGET", "100", 1);
    const int code = run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t", "--N-max", "4"}).code;
    ::unsetenv("FFEXT_BUDGET");
    EXPECT_EQ(code, 5);
    EXPECT_EQ(run({"density", "kummer", "--q", "5", "--m", "2", "--S", "t", "--N-max", "4"}).code, 0);
}

TEST(Cli, OutFile) {
    const auto path = std::filesystem::temp_directory_path() / "ffext_cli_test_report.json";
    std::filesystem::remove(path);
    const auto r = run({"degree", "artin-schreier", "--q", "3", "--S", "1/t,2/t,1/t+t", "--format", "json", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["degree"], "9");
    std::filesystem::remove(path);
}
