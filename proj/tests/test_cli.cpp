#include "subroot/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace subroot;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = testing::TempDir() + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

std::set<std::string> type_set(const json& arr, const char* key) {
  std::set<std::string> s;
  for (const auto& j : arr) s.insert(j.at(key).get<std::string>());
  return s;
}

}  // namespace

TEST(Cli, RootsWindowSortedByGrade) {
  CliResult r = run_cli({"roots", "A1^1", "--radius2", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines.front().at("t2").get<int>(), -4);
  for (std::size_t i = 1; i < lines.size(); ++i)
    EXPECT_LE(lines[i - 1].at("t2").get<int>(), lines[i].at("t2").get<int>());

  r = run_cli({"roots", "A1^1", "--radius2", "0"});
  EXPECT_EQ(parse_lines(r.out).size(), 2u);
}

TEST(Cli, GradientOfAmbientLabel) {
  CliResult r = run_cli({"gradient", "G2^1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("ambient"), "G2^1");
  EXPECT_EQ(j.at("type"), "G2");
  EXPECT_EQ(j.at("class"), "FULL");
  EXPECT_EQ(j.at("roots").size(), 12u);
}

TEST(Cli, GradientOfFileClassifiesSemiClosed) {
  CliResult inst = run_cli({"instantiate", "D4^2", "--kind", "PSI_I_D2", "--index", "1",
                            "--params", R"({"I":[1]})"});
  ASSERT_EQ(inst.code, 0) << inst.err;
  std::string path = write_file("psi_i.json", inst.out);

  CliResult r = run_cli({"gradient", "--file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("type"), "A1+B2");
  EXPECT_EQ(j.at("class"), "PROPER_SEMI_CLOSED");
}

TEST(Cli, MaximalDescriptorsForTwistedE6) {
  CliResult r = run_cli({"maximal", "E6^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json arr = json::parse(r.out);
  ASSERT_EQ(arr.size(), 6u);
  std::set<std::string> expect = {"A1^1+A5^2", "A2^1+A2^1", "E6^2",
                                  "F4^1",      "D5^2",      "C4^1"};
  EXPECT_EQ(type_set(arr, "type"), expect);
  for (const auto& f : arr) {
    EXPECT_EQ(f.at("ambient"), "E6^2");
    EXPECT_TRUE(f.contains("kind"));
    EXPECT_TRUE(f.contains("index"));
    EXPECT_TRUE(f.contains("params"));
  }
}

TEST(Cli, InstantiateRoundTripsThroughCodec) {
  CliResult r = run_cli({"instantiate", "A1^1", "--kind", "UNTWISTED_PRIME", "--params",
                         R"({"q":3,"p2":[2]})"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  SubrootSystem sub = subroot_system_from_json(j);
  EXPECT_EQ(to_json(sub).dump(2) + "\n", r.out);
  ASSERT_EQ(j.at("cosets").size(), 1u);
  EXPECT_EQ(j.at("cosets")[0].at("n2").get<int>(), 6);
  EXPECT_EQ(j.at("cosets")[0].at("p2").get<int>(), 2);
}

TEST(Cli, InstantiateUnknownKindListsAvailable) {
  CliResult r = run_cli({"instantiate", "G2^1", "--kind", "NOPE"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("available"), std::string::npos);
}

TEST(Cli, VerifyAcceptsPrimeInstance) {
  auto fams = enumerate_families(parse_affine_ambient("A1^1"));
  SubrootSystem sub = instantiate(fams.at(0), json{{"q", 3}});
  std::string path = write_file("prime3.json", to_json(sub).dump());

  CliResult r = run_cli({"verify", "--file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j.at("laws_pass").get<bool>());
  EXPECT_TRUE(j.at("maximal").get<bool>());
  EXPECT_TRUE(j.at("witness").is_null());
}

TEST(Cli, VerifyFlagsCompositeModulus) {
  std::string path = write_file(
      "composite.json", R"({"ambient":"A1^1","cosets":[{"root":[2,-2],"p2":0,"n2":8}]})");
  CliResult r = run_cli({"verify", "--file", path});
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_FALSE(j.at("maximal").get<bool>());
  EXPECT_FALSE(j.at("witness").is_null());
}

TEST(Cli, VerifyRadiiFlagOverridesDefaults) {
  auto fams = enumerate_families(parse_affine_ambient("A1^1"));
  SubrootSystem sub = instantiate(fams.at(0), json{{"q", 2}});
  std::string path = write_file("prime2.json", to_json(sub).dump());

  CliResult r = run_cli({"verify", "--file", path, "--radii", "12,24,12"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out).at("radii");
  EXPECT_EQ(j.at("inner_radius2").get<int>(), 12);
  EXPECT_EQ(j.at("work_radius2").get<int>(), 24);
  EXPECT_EQ(j.at("check_radius2").get<int>(), 12);
}

TEST(Cli, EnumerateStreamsChainNodes) {
  CliResult r = run_cli({"enumerate", "A1^1", "--depth", "1", "--prime-bound", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0].at("depth").get<int>(), 0);
  EXPECT_EQ(lines[0].at("kind"), "root");
  EXPECT_EQ(lines[0].at("parent_index").get<int>(), -1);
  EXPECT_EQ(lines[0].at("type"), "A1^1");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_EQ(lines[i].at("depth").get<int>(), 1);
    EXPECT_EQ(lines[i].at("parent_index").get<int>(), 0);
    EXPECT_EQ(lines[i].at("kind"), "UNTWISTED_PRIME");
    EXPECT_TRUE(lines[i].contains("params"));
  }
}

TEST(Cli, PiSystemOfFullTwistedRankOne) {
  std::string path = write_file("a22.json", to_json(full_model(parse_affine_ambient("A2^2"))).dump());
  CliResult r = run_cli({"pi-system", "--file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("ambient"), "A2^2");
  EXPECT_EQ(j.at("roots").size(), 2u);
}

TEST(Cli, PiSystemRejectsNonClosedInput) {
  std::string path = write_file("open.json",
                                R"({"ambient":"A2^1","cosets":[)"
                                R"({"root":[2,-2,0],"p2":0,"n2":0},)"
                                R"({"root":[2,0,-2],"p2":2,"n2":0}]})");
  CliResult r = run_cli({"pi-system", "--file", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("pi-system"), std::string::npos);
}

TEST(Cli, TablesFiniteGoldenRows) {
  CliResult r = run_cli({"tables", "finite"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.size(), 31u);
  EXPECT_EQ(j.at("A1"), json::array());
  EXPECT_EQ(j.at("G2"), json({"A1+A1", "A2"}));
  EXPECT_EQ(j.at("E8"), json({"A1+E7", "A2+E6", "A4+A4", "A8", "D8"}));
}

TEST(Cli, TablesUntwistedAndTwistedRows) {
  CliResult r = run_cli({"tables", "untwisted"});
  ASSERT_EQ(r.code, 0) << r.err;
  json u = json::parse(r.out);
  EXPECT_EQ(u.size(), 21u);
  EXPECT_EQ(u.at("G2^1"), json({"A1^1+A1^1", "A2^1", "G2^1"}));
  EXPECT_EQ(u.at("F4^1"), json({"A1^1+C3^1", "A2^1+A2^1", "B4^1", "F4^1"}));

  r = run_cli({"tables", "twisted"});
  ASSERT_EQ(r.code, 0) << r.err;
  json t = json::parse(r.out);
  EXPECT_EQ(t.size(), 11u);
  EXPECT_EQ(t.at("D4^3"), json({"A1^1+A1^1", "A2^1", "D4^3", "G2^1"}));
  EXPECT_EQ(t.at("E6^2"),
            json({"A1^1+A5^2", "A2^1+A2^1", "C4^1", "D5^2", "E6^2", "F4^1"}));
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  std::string cfg = write_file("defaults.cfg", "# defaults\nradius2 = 2\ndepth=0\n");
  CliResult r = run_cli({"--config", cfg, "roots", "A1^1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_lines(r.out).size(), 6u);

  r = run_cli({"--config", cfg, "enumerate", "A1^1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_lines(r.out).size(), 1u);

  r = run_cli({"--config", cfg, "roots", "A1^1", "--radius2", "0"});
  EXPECT_EQ(parse_lines(r.out).size(), 2u);
}

TEST(Cli, ConfigRejectsUnknownKey) {
  std::string cfg = write_file("bad.cfg", "bogus=1\n");
  CliResult r = run_cli({"--config", cfg, "roots", "A1^1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
}

TEST(Cli, ThreadCountEnvMustBePositive) {
  ::setenv("SUBROOTS_THREADS", "0", 1);
  CliResult r = run_cli({"roots", "A1^1"});
  ::unsetenv("SUBROOTS_THREADS");
  EXPECT_EQ(r.code, 2);

  ::setenv("SUBROOTS_THREADS", "2", 1);
  r = run_cli({"roots", "A1^1", "--radius2", "0"});
  ::unsetenv("SUBROOTS_THREADS");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, UsageErrorPaths) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"roots", "Z9^1"}).code, 2);
  EXPECT_EQ(run_cli({"roots", "A1"}).code, 2);
  EXPECT_EQ(run_cli({"tables", "bogus"}).code, 2);
  EXPECT_EQ(run_cli({"gradient"}).code, 2);
  EXPECT_EQ(run_cli({"instantiate", "A1^1", "--kind", "UNTWISTED_PRIME", "--params", "{oops"}).code, 2);
  EXPECT_EQ(run_cli({"enumerate", "A1^1", "--prime-bound", "1"}).code, 2);

  std::string path = write_file("ok.json",
                                R"({"ambient":"A1^1","cosets":[{"root":[2,-2],"p2":0,"n2":4}]})");
  EXPECT_EQ(run_cli({"verify", "--file", path, "--radii", "12,4,8"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--file", path, "--radii", "4,8"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--file", testing::TempDir() + "missing.json"}).code, 2);

  CliResult help = run_cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("tables"), std::string::npos);
}
