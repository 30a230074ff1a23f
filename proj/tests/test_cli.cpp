#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "obstrukt/cli.hpp"
#include "obstrukt/obstrukt.hpp"

using namespace obstrukt;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "obstrukt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = std::filesystem::temp_directory_path() /
               ("obstrukt_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string gen(const std::string& name, std::vector<std::string> args)
    {
        args.insert(args.begin(), "gen");
        args.push_back("-o");
        args.push_back(path(name));
        EXPECT_EQ(run(args).code, 0);
        return path(name);
    }

    std::string write(const std::string& name, const std::string& text)
    {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    std::filesystem::path dir_;
};

} // namespace

TEST_F(Cli, VkVerdictsAndExitCodes)
{
    const auto skel = gen("skel.json", {"skeleton", "--n", "6", "--k", "2"});
    const auto r = run({"vk", "check", skel, "--dim", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.json().at("result").at("verdict"), "nonzero");

    const auto cbar = gen("cbar.json", {"Cbar"});
    const auto z = run({"vk", "check", cbar, "--coeff", "z2", "--seed", "3"});
    EXPECT_EQ(z.code, 0);
    EXPECT_EQ(z.json().at("result").at("verdict"), "zero");
    EXPECT_EQ(z.json().at("result").at("witness").at("verified"), true);
    EXPECT_EQ(z.json().at("seeds").at("base"), 3);

    EXPECT_EQ(run({"vk", "check", write("bad.json", "{\"simplices\": [[1,2]")}).code, 2);
    EXPECT_EQ(run({"vk", "check", path("missing.json")}).code, 2);
    EXPECT_EQ(run({"vk", "check", skel, "--dim", "1"}).code, 2);
    EXPECT_EQ(run({"vk", "check", skel, "--coeff", "r"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(Cli, ReportsAreByteIdentical)
{
    const auto k5 = gen("k5.json", {"complete", "--m", "5"});
    const auto a = run({"vk", "check", k5, "--seed", "7"});
    const auto b = run({"vk", "check", k5, "--seed", "7"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.json().contains("timings"));
    EXPECT_TRUE(run({"--timings", "vk", "check", k5}).json().contains("timings"));
    EXPECT_EQ(a.json().at("inputs").at(k5), digest(read_file(k5)));
}

TEST_F(Cli, SeedFromEnvironment)
{
    const auto k5 = gen("k5.json", {"complete", "--m", "5"});
    setenv("OBSTRUKT_SEED", "11", 1);
    const auto env = run({"vk", "check", k5});
    const auto flag = run({"vk", "check", k5, "--seed", "12"});
    unsetenv("OBSTRUKT_SEED");
    EXPECT_EQ(env.json().at("seeds").at("base"), 11);
    EXPECT_EQ(flag.json().at("seeds").at("base"), 12);
}

TEST_F(Cli, Kalpha)
{
    const auto r = run({"kalpha", "[x,y]"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json().at("result");
    EXPECT_EQ(j.at("vk").at("verdict"), "zero");
    EXPECT_EQ(j.at("certificate").at("level"), 3);
    const auto bad = run({"kalpha", "x"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("commutator"), std::string::npos);
    EXPECT_EQ(run({"kalpha", "[x,"}).code, 2);
}

TEST_F(Cli, MagnusClass)
{
    const auto r = run({"magnus", "class", "[[x,y],y]", "--max-degree", "4"});
    ASSERT_EQ(r.code, 0);
    const auto j = r.json().at("result");
    EXPECT_EQ(j.at("lcs").at("class"), "3");
    EXPECT_EQ(j.at("certificate").at("level"), 4);
    EXPECT_EQ(run({"magnus", "class", "[[x,y],y]", "--max-degree", "2"}).json().at("result").at("lcs").at("class"),
              ">= 3");
    EXPECT_EQ(run({"magnus", "class", "x", "--max-degree", "0"}).code, 2);
}

TEST_F(Cli, MasseyOnOneRelatorComplexes)
{
    const auto f = gen("or.json", {"one-relator", "--word", "[[x,y],y]"});
    const auto r = run({"massey", f, "--classes", "x,y,y", "--order", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto m = r.json().at("result").at("massey");
    EXPECT_EQ(m.at("status"), "defined");
    // (-1)^3 times the XYY coefficient 1
    EXPECT_EQ(m.at("value"), "-1");

    const auto t = gen("torus.json", {"one-relator", "--word", "[x,y]"});
    const auto u = run({"massey", t, "--classes", "x,y,y"}).json().at("result").at("massey");
    EXPECT_EQ(u.at("status"), "undefined-at-stage-(1,2)");
    const auto idx = run({"massey", t, "--classes", "0,1"});
    EXPECT_EQ(idx.code, 0);
    EXPECT_EQ(run({"massey", t, "--classes", "x,y", "--order", "3"}).code, 2);
    EXPECT_EQ(run({"massey", t, "--classes", "x,q"}).code, 2);
    EXPECT_EQ(run({"massey", t, "--classes", "0,5"}).code, 2);
    EXPECT_EQ(run({"massey", t, "--classes", "x,y", "--cycle", "nope"}).code, 2);
}

TEST_F(Cli, Links)
{
    Json e = embedding_to_json(random_embedding(Graph::complete(6), 5));
    const auto f = write("k6.json", e.dump());
    const auto om = run({"links", "omega", f});
    ASSERT_EQ(om.code, 0) << om.err;
    EXPECT_EQ(om.json().at("result").at("omega"), 1);
    EXPECT_EQ(om.json().at("result").at("pairs").size(), 10u);
    const auto lk = run({"links", "lk", f, "--cycle", "v1,v2,v3", "--cycle", "v4,v5,v6"});
    ASSERT_EQ(lk.code, 0) << lk.err;
    EXPECT_TRUE(lk.json().at("result").at("linking_number").is_number_integer());
    EXPECT_EQ(run({"links", "lk", f, "--cycle", "v1,v2,v3", "--cycle", "v3,v4,v5"}).code, 2);
    EXPECT_EQ(run({"links", "lk", f, "--cycle", "v1,v2,v9", "--cycle", "v4,v5,v6"}).code, 2);
    e["coords"]["v2"] = e["coords"]["v1"];
    EXPECT_EQ(run({"links", "omega", write("bad.json", e.dump())}).code, 2);
}

TEST_F(Cli, HomologyAndGen)
{
    const auto c = gen("c.json", {"C"});
    const auto r = run({"homology", c});
    ASSERT_EQ(r.code, 0);
    const auto h = r.json().at("result").at("homology");
    EXPECT_EQ(h.at(2).at("betti"), 19);
    EXPECT_EQ(h.at(1).at("betti"), 0);
    EXPECT_EQ(run({"gen", "nonsense"}).code, 2);
    EXPECT_EQ(run({"gen", "kalpha", "--word", "xX"}).code, 2);
    const auto ka = parse_complex(read_file(gen("ka.json", {"kalpha", "--word", "[x,y]"})));
    EXPECT_EQ(ka.loops.at("alpha").length(), 20u);
}

TEST_F(Cli, SuiteFiltersAndFaults)
{
    const auto r = run({"suite", "--only", "certificates,links"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto crit = r.json().at("result").at("criteria");
    ASSERT_EQ(crit.size(), 2u);
    EXPECT_EQ(crit.at(0).at("name"), "certificates");
    EXPECT_FALSE(crit.at(0).contains("seconds"));
    const auto bad = run({"suite", "--only", "infrastructure", "--inject-fault", "snf"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.json().at("result").at("passed"), false);
    EXPECT_EQ(run({"suite", "--only", "nope"}).code, 2);
    EXPECT_EQ(run({"suite", "--inject-fault", "disk"}).code, 2);
}

TEST_F(Cli, ProductDump)
{
    const auto k5 = gen("k5.json", {"complete", "--m", "5"});
    const auto r = run({"product", k5, "--boundaries"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json().at("result");
    // ordered pairs of disjoint vertices, vertex-edge pairs, edge pairs
    EXPECT_EQ(j.at("cell_counts"), Json::parse("[20, 60, 30]"));
    EXPECT_EQ(j.at("swap_orbits"), Json::parse("[10, 30, 15]"));
    EXPECT_EQ(j.at("boundaries").at(2).size(), 4u * 30);
    const auto c = run({"product", gen("s.json", {"skeleton", "--n", "6", "--k", "6"}), "--m", "3"});
    // three disjoint faces of the 6-simplex use at most 7 vertices: top degree 7 - 3
    EXPECT_EQ(c.json().at("result").at("cell_counts").size(), 5u);
}
