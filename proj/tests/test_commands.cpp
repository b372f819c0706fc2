#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rimcert/commands.hpp"

using rimcert::Outcome;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + RIMCERT_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Commands, Alexander) {
  EXPECT_EQ(pretty(rimcert::cmd_alexander("torus:2,3").polynomial), "t - 1 + t^-1");
  EXPECT_EQ(pretty(rimcert::cmd_alexander("unknot").polynomial), "1");
  const auto r = rimcert::cmd_alexander("sum(torus:2,3,torus:2,3)");
  EXPECT_EQ(pretty(r.polynomial), "t^2 - 2t + 3 - 2t^-1 + t^-2");
  EXPECT_EQ(r.span, 4);
  EXPECT_THROW(rimcert::cmd_alexander("torus:2"), rimcert::ParseError);
}

TEST(Commands, Pi1) {
  const auto five = rimcert::cmd_pi1(5, 1, rimcert::kDefaultMaxCosets);
  EXPECT_EQ(five.summary, "Pass(Z/5)");
  EXPECT_EQ(five.exit_code(), 0);
  EXPECT_EQ(rimcert::cmd_pi1(9, 1, rimcert::kDefaultMaxCosets).summary, "Pass(Z/9)");
  const auto four = rimcert::cmd_pi1(4, 1, rimcert::kDefaultMaxCosets);
  EXPECT_EQ(four.summary, "NonAbelian(Q8)");
  EXPECT_EQ(four.outcome, Outcome::Fail);
  EXPECT_EQ(four.certificate["nonabelian_witness"]["images"]["a"], "i");
  EXPECT_EQ(four.certificate["nonabelian_witness"]["images"]["b"], "j");
  EXPECT_THROW(rimcert::cmd_pi1(3, 1, rimcert::kDefaultMaxCosets), rimcert::InvalidConfig);
  EXPECT_THROW(rimcert::cmd_pi1(6, 3, rimcert::kDefaultMaxCosets), rimcert::InvalidConfig);
}

TEST(Commands, Pi1TinyLimitIsInconclusive) {
  const auto r = rimcert::cmd_pi1(7, 1, 3);
  EXPECT_EQ(r.outcome, Outcome::Inconclusive);
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Commands, SwFamily) {
  const auto r = rimcert::cmd_sw_family(nullptr, 2, rimcert::torus_family(5));
  EXPECT_EQ(r.summary, "Pass(counts 5,9,13,17,21)");
  EXPECT_EQ(r.certificate["verdict"], "pass");

  const auto unknots = rimcert::cmd_sw_family(nullptr, 2, {rimcert::Knot::unknot(), rimcert::Knot::unknot()});
  EXPECT_EQ(unknots.outcome, Outcome::Fail);

  const auto five = rimcert::cmd_sw_family(nullptr, 5, rimcert::torus_family(3));
  EXPECT_EQ(five.outcome, Outcome::Pass);

  const auto verbose = rimcert::cmd_sw_family(nullptr, 2, rimcert::torus_family(3), {true, true});
  EXPECT_EQ(verbose.outcome, Outcome::Pass);
  EXPECT_EQ(verbose.certificate["double_cover_cross_check"], true);

  const auto custom = rimcert::cmd_sw_family(nlohmann::json::parse(R"([{"class":[1],"coeff":1},{"class":[-1],"coeff":1}])"),
                                             2, rimcert::torus_family(2));
  EXPECT_EQ(custom.outcome, Outcome::Pass);
  EXPECT_THROW(rimcert::cmd_sw_family(nullptr, 1, rimcert::torus_family(2)), rimcert::PreconditionViolation);
  EXPECT_THROW(rimcert::cmd_sw_family(nlohmann::json::array(), 2, rimcert::torus_family(2)),
               rimcert::PreconditionViolation);
}

TEST(Commands, Genus) {
  EXPECT_EQ(rimcert::cmd_genus(5), 6);
  EXPECT_EQ(rimcert::cmd_genus(1), 0);
  EXPECT_EQ(rimcert::cmd_genus(6), 10);
  EXPECT_THROW(rimcert::cmd_genus(0), rimcert::PreconditionViolation);
}

TEST(Commands, X9) {
  const auto r = rimcert::cmd_x9(rimcert::X9Params{});
  EXPECT_EQ(r.summary, "Pass(2 nested ovals)");
  rimcert::X9Params coarse;
  coarse.resolution = 16;
  EXPECT_THROW(rimcert::cmd_x9(coarse), rimcert::ResolutionTooCoarse);
  rimcert::X9Params far;
  far.window = {0.5, 0.6, 0.5, 0.6};
  const auto f = rimcert::cmd_x9(far);
  EXPECT_EQ(f.summary, "Fail(0 components)");
  EXPECT_EQ(f.exit_code(), 1);
}

TEST(Commands, X9WritesSvg) {
  const auto path = std::filesystem::temp_directory_path() / "rimcert_test_x9.svg";
  std::filesystem::remove(path);
  rimcert::cmd_x9(rimcert::X9Params{}, path.string());
  std::ifstream in(path);
  std::string head;
  std::getline(in, head);
  EXPECT_NE(head.find("<svg"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Commands, ReportsAreDeterministic) {
  const auto a = rimcert::cmd_pi1(6, 1, rimcert::kDefaultMaxCosets).to_json(false).dump();
  const auto b = rimcert::cmd_pi1(6, 1, rimcert::kDefaultMaxCosets).to_json(false).dump();
  EXPECT_EQ(a, b);
  const auto c = rimcert::cmd_sw_family(nullptr, 3, rimcert::torus_family(3)).to_json(false).dump();
  const auto d = rimcert::cmd_sw_family(nullptr, 3, rimcert::torus_family(3)).to_json(false).dump();
  EXPECT_EQ(c, d);
  const auto e = rimcert::cmd_x9(rimcert::X9Params{}).to_json(false).dump();
  const auto f = rimcert::cmd_x9(rimcert::X9Params{}).to_json(false).dump();
  EXPECT_EQ(e, f);
}

TEST(Commands, Selftest) {
  for (const auto& c : rimcert::cmd_selftest(7)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("pi1 -d 5").code, 0);
  EXPECT_EQ(run_cli("pi1 -d 4").code, 1);
  EXPECT_EQ(run_cli("pi1 -d 7 --max-cosets 3").code, 2);
  EXPECT_EQ(run_cli("pi1 -d 3").code, 3);
  EXPECT_EQ(run_cli("alexander torus:2,4").code, 3);
  EXPECT_EQ(run_cli("bogus").code, 3);
  EXPECT_EQ(run_cli("x9 -r 16").code, 3);
  EXPECT_EQ(run_cli("x9 --window 0.5,0.6,0.5,0.6").code, 1);
  EXPECT_EQ(run_cli("sw-family -k unknot -k unknot").code, 1);
  EXPECT_EQ(run_cli("sw-family --family 4").code, 0);
  EXPECT_EQ(run_cli("--help").code, 0);
}

TEST(Cli, EnvironmentCosetLimit) {
  EXPECT_EQ(run_cli("pi1 -d 7", "RIMCERT_MAX_COSETS=3").code, 2);
  EXPECT_EQ(run_cli("pi1 -d 7 --max-cosets 100000", "RIMCERT_MAX_COSETS=3").code, 0);
}

TEST(Cli, TextAndJsonOutput) {
  EXPECT_EQ(run_cli("alexander 'sum(torus:2,3,torus:2,3)'").out.find("t^2 - 2t + 3 - 2t^-1 + t^-2") == std::string::npos,
            false);
  EXPECT_EQ(run_cli("genus 6").out, "10\n");
  const auto r = run_cli("--json pi1 -d 5");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["summary"], "Pass(Z/5)");
  // verdict in JSON agrees with the exit code
  const auto four = run_cli("pi1 -d 4 --json");
  EXPECT_EQ(nlohmann::json::parse(four.out)["verdict"], "fail");
  EXPECT_EQ(four.code, 1);
}

TEST(Cli, JsonIsByteIdenticalApartFromTiming) {
  auto strip = [](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("wall_time_ms");
    return j.dump();
  };
  EXPECT_EQ(strip(run_cli("--json sw-family -c 3 --family 3").out), strip(run_cli("--json sw-family -c 3 --family 3").out));
}

TEST(Cli, BaseSwFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "rimcert_test_base.json";
  std::ofstream(path) << R"([{"class":[2],"coeff":1},{"class":[-2],"coeff":1}])";
  EXPECT_EQ(run_cli("sw-family --family 3 --base-sw @" + path.string()).code, 0);
  EXPECT_EQ(run_cli("sw-family --family 3 --base-sw '[{\"class\":[0]}]'").code, 3);
  EXPECT_EQ(run_cli("sw-family --family 3 --base-sw @/nonexistent/file.json").code, 3);
  std::filesystem::remove(path);
}
