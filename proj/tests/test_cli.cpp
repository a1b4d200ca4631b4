#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "commands.hpp"
#include "test_support.hpp"

using nlohmann::json;
using toric::cli::run_cli;

namespace {

toric::cli::CommandOutput cli(std::vector<std::string> args) {
  args.insert(args.begin(), "toric_cli");
  return run_cli(args);
}

}  // namespace

TEST_CASE("derive prints the coefficients") {
  const auto out = cli({"derive", "--n", "2", "--a", "0.5", "--b", "1"});
  REQUIRE(out.exit_code == 0);
  const auto doc = json::parse(out.out);
  const auto oracle = toric::test::cp2_oracle(0.5);
  CHECK(doc["A"].get<double>() == doctest::Approx(oracle.A).epsilon(1e-12));
  CHECK(doc["B"].get<double>() == doctest::Approx(oracle.B).epsilon(1e-12));
  CHECK(doc["C"].get<double>() == doctest::Approx(oracle.C).epsilon(1e-12));
  CHECK(doc["D"].get<double>() == doctest::Approx(oracle.D).epsilon(1e-12));
  CHECK(doc["p"].get<double>() == 24.0);

  const auto csv = cli({"derive", "--format", "csv"});
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("n,a,b,p,A,B,C,D\n", 0) == 0);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(cli({"derive", "--a", "1", "--b", "0.5"}).exit_code == 2);
  CHECK(cli({"derive", "--n", "0"}).exit_code == 2);
  CHECK(cli({"derive", "--format", "xml"}).exit_code == 2);
  CHECK(cli({"frobnicate"}).exit_code == 2);
  CHECK(cli({"bridge-check", "--preset", "extremal"}).exit_code == 2);
  CHECK(cli({"derive", "--help"}).exit_code == 0);
}

TEST_CASE("output is deterministic") {
  for (const char* cmd : {"derive", "verify", "profile"}) {
    const auto first = cli({cmd, "--n", "3", "--a", "0.25", "--b", "2", "--points", "20"});
    const auto second = cli({cmd, "--n", "3", "--a", "0.25", "--b", "2", "--points", "20"});
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("profile rows") {
  const auto out = cli({"profile", "--samples", "5"});
  REQUIRE(out.exit_code == 0);
  const auto rows = json::parse(out.out)["rows"];
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i]["t"].get<double>() > rows[i - 1]["t"].get<double>());
  }
  const auto oracle = toric::test::cp2_oracle(0.5);
  for (const auto& row : rows) {
    const double t = row["t"].get<double>();
    CHECK(row["S"].get<double>() == doctest::Approx(oracle.A * t + oracle.B).epsilon(1e-6));
    CHECK(row["h_second"].get<double>() ==
          doctest::Approx(toric::test::cp2_h_second_oracle(0.5, t)).epsilon(1e-9));
  }

  const auto csv = cli({"profile", "--samples", "3", "--format", "csv"});
  std::istringstream lines(csv.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 4);
}

TEST_CASE("verify, bridge-check and example pass on defaults") {
  const auto verify = cli({"verify", "--points", "30"});
  CHECK(verify.exit_code == 0);
  CHECK(json::parse(verify.out)["pass"].get<bool>());

  const auto bridge = cli({"bridge-check", "--preset", "flat"});
  CHECK(bridge.exit_code == 0);
  CHECK(json::parse(bridge.out)["max_discrepancy"].get<double>() <= 1e-8);

  const auto example = cli({"example", "--a", "0.5"});
  CHECK(example.exit_code == 0);
  const auto doc = json::parse(example.out);
  CHECK(doc["h_second"]["from_coefficients"].get<double>() ==
        doctest::Approx(toric::test::cp2_h_second_oracle(0.5, 0.75)).epsilon(1e-12));
}

TEST_CASE("a failing tolerance exits with 1") {
  const auto out = cli({"verify", "--points", "20", "--tolerance-soft", "1e-15"});
  CHECK(out.exit_code == 1);
  CHECK_FALSE(json::parse(out.out)["pass"].get<bool>());
}

TEST_CASE("CLI reference runs") {
  CHECK(cli({"derive", "--n", "2", "--a", "1", "--b", "0.5"}).exit_code == 2);
  CHECK(json::parse(cli({"derive"}).out)["schema"].get<int>() == 1);

  const auto verify = cli({"verify", "--n", "3", "--a", "0.25", "--b", "2", "--points", "100", "--seed", "7"});
  CHECK(verify.exit_code == 0);
  CHECK(verify.err.find("closed-form discrepancy") != std::string::npos);
  const auto doc = json::parse(verify.out);
  CHECK(doc["curvature"]["radial_vs_general"].get<double>() <= 1e-5);

  const auto bridge = cli({"bridge-check", "--preset", "fubini-study", "--n", "2"});
  CHECK(bridge.exit_code == 0);
  for (const auto& sample : json::parse(bridge.out)["samples"]) {
    CHECK(sample["calabi"].get<double>() == doctest::Approx(6.0).epsilon(1e-5));
    CHECK(sample["radial"].get<double>() == doctest::Approx(6.0).epsilon(1e-5));
  }

  const auto csv = cli({"profile", "--n", "2", "--a", "0.5", "--b", "1", "--samples", "5", "--format", "csv"});
  REQUIRE(csv.exit_code == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,F_second,h_second,S");
  double previous = 0.5;
  int rows = 0;
  while (std::getline(lines, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    CHECK(t > previous);
    CHECK(t < 1.0);
    previous = t;
    ++rows;
  }
  CHECK(rows == 5);
}
