#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "relroots/io.hpp"

namespace fs = std::filesystem;
using namespace relroots;

namespace
{

struct CliRun
{
    int exit_code;
    std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr is discarded.
CliRun run(const std::string& args)
{
    const std::string command = std::string(RELROOTS_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return {-1, ""};
    std::string out;
    std::array<char, 4096> buffer{};
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
        out.append(buffer.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::array<double, 3>> parse_csv(const std::string& csv)
{
    std::vector<std::array<double, 3>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
    {
        std::array<double, 3> row{};
        std::istringstream fields(line);
        std::string field;
        for (double& x : row)
        {
            std::getline(fields, field, ',');
            x = std::stod(field);
        }
        rows.push_back(row);
    }
    return rows;
}

class Cli : public ::testing::Test
{
  protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("relroots_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& content)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << content;
        return p.string();
    }

    fs::path dir_;
};

const char* const kK3 = R"({"n":3,"edges":[[0,1,1],[1,2,1],[0,2,1]]})";
const char* const kK4 = R"({"n":4,"edges":[[0,1,1],[0,2,1],[0,3,1],[1,2,1],[1,3,1],[2,3,1]]})";

} // namespace

TEST_F(Cli, RelOfTriangle)
{
    const CliRun r = run("rel " + file("k3.json", kK3));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "{\"var\":\"q\",\"coeffs\":[\"1/1\",\"0/1\",\"-3/1\",\"2/1\"]}\n");
    for (const char* method : {"brute", "dc"})
        EXPECT_EQ(run(std::string("--method ") + method + " rel " + file("k3.json", kK3)).out, r.out);
}

TEST_F(Cli, HVectorOfK4BothWays)
{
    const std::string k4 = file("k4.json", kK4);
    for (const std::string via : {"fvector", "chip"})
    {
        const CliRun r = run("hvector " + k4 + " --via " + via + " --sink 2");
        EXPECT_EQ(r.exit_code, 0);
        const json doc = json::parse(r.out);
        EXPECT_EQ(doc["h"], json::array({"1", "3", "6", "6"}));
        EXPECT_EQ(doc["laws_hold"], true);
    }
}

TEST_F(Cli, SchurCohnOfALinearPolynomial)
{
    const CliRun r = run("schur-cohn q-2");
    EXPECT_EQ(r.exit_code, 0);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["signs"], json::array({"-"}));
    EXPECT_EQ(doc["beta"], 1);
    EXPECT_EQ(json::parse(run("schur-cohn q-1/2").out)["beta"], 0);
}

TEST_F(Cli, FamilyThenRootsFindsARootOutsideTheDisk)
{
    const CliRun fam = run("family 2 2 6 1 --graph");
    ASSERT_EQ(fam.exit_code, 0);
    const std::string g = file("g2261.json", fam.out);
    const CliRun roots = run("roots " + g);
    ASSERT_EQ(roots.exit_code, 0);
    std::istringstream in(roots.out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "re,im,modulus");
    EXPECT_GT(std::stod(first.substr(first.rfind(',') + 1)), 1.0);

    // The polynomial route gives the same roots, including 1 three times; the two runs may
    // differ only in noise far below the working precision.
    const CliRun poly = run("family 2 2 6 1");
    const auto a = parse_csv(run("roots " + file("p.json", poly.out)).out);
    const auto b = parse_csv(roots.out);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_NEAR(a[i][j], b[i][j], 1e-15);
}

TEST_F(Cli, OutWritesAFile)
{
    const std::string target = (dir_ / "out.csv").string();
    const CliRun r = run("--out " + target + " table1 --max-n 3");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "");
    std::ifstream in(target);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), "n,re,im,modulus\n3,0.6965978094,0.7739344775,1.0412603341\n");
}

TEST_F(Cli, Certify)
{
    const CliRun r = run("certify 9 3");
    EXPECT_EQ(r.exit_code, 0);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["beta"], 1);
    EXPECT_EQ(doc["pass"], true);
}

TEST_F(Cli, InputErrorsExitWithOne)
{
    EXPECT_EQ(run("rel " + file("bad.json", "{not json")).exit_code, 1);
    EXPECT_EQ(run("rel " + file("loop.json", R"({"n":2,"edges":[[0,0,1]]})")).exit_code, 1);
    EXPECT_EQ(run("rel " + file("split.json", R"({"n":3,"edges":[[0,1,1]]})")).exit_code, 1);
    EXPECT_EQ(run("rel " + (dir_ / "missing.json").string()).exit_code, 1);
    EXPECT_EQ(run("no-such-command").exit_code, 1);
    EXPECT_EQ(run("table1 --max-n 40").exit_code, 1);
    EXPECT_EQ(run("schur-cohn --fn 4 --box 1,0,0,1").exit_code, 1);
}

TEST_F(Cli, GuardExitsWithTwo)
{
    const std::string k8 = graph_to_json(complete_graph(8)).dump();
    EXPECT_EQ(run("--method brute rel " + file("k8.json", k8)).exit_code, 2);
    EXPECT_EQ(run("--guard-m 5 hvector " + file("k4.json", kK4)).exit_code, 2);
}

TEST_F(Cli, IndeterminateExitsWithThree)
{
    const CliRun r = run("schur-cohn --fn 4 --box -0.95,-0.85,8,9");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_TRUE(json::parse(r.out)["beta"].is_null());
    EXPECT_EQ(run("schur-cohn q-1").exit_code, 3);
}
