#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eeio/cli.hpp"
#include "eeio/table_io.hpp"

namespace fs = std::filesystem;
using eeio::cli::run_command;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eeio_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("worked.csv", "MCHF,s1,s2,D\ns1,100,50,50\ns2,30,20,50\n");
    write("worked_e.csv", "sector,kt CO2\ns2,10\ns1,20\n");
    write("corrupt.csv", "MCHF,s1,s2,D,T\ns1,100,50,50,999\ns2,30,20,50,100\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  int run(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    return run_command(args, out_, err_);
  }

  nlohmann::json out_json() const { return nlohmann::json::parse(out_.str()); }
  nlohmann::json err_json() const { return nlohmann::json::parse(err_.str()); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, ValidateBalancedTable) {
  EXPECT_EQ(run({"validate", path("worked.csv")}), 0);
  const auto doc = out_json();
  EXPECT_TRUE(doc["balance"]["ok"].get<bool>());
  EXPECT_EQ(doc["balance"]["max_residual"].get<double>(), 0.0);
}

TEST_F(CliTest, ValidateCorruptedTotalsExitsOne) {
  EXPECT_EQ(run({"validate", path("corrupt.csv")}), 1);
  EXPECT_FALSE(out_json()["balance"]["ok"].get<bool>());
  EXPECT_EQ(err_json()["error"]["code"], "ImbalancedTable");
}

TEST_F(CliTest, AttributeWorkedEconomy) {
  EXPECT_EQ(run({"attribute", path("worked.csv"), path("worked_e.csv")}), 0);
  const auto doc = out_json();
  EXPECT_NEAR(doc["attribution"]["total_attributed"].get<double>(), 30.0, 1e-10);
  EXPECT_LE(doc["attribution"]["conservation_residual"].get<double>(), 1e-10);
  EXPECT_NEAR(doc["direct_footprint"].get<double>(), 10.0, 1e-12);
  EXPECT_EQ(doc["emission_unit"], "kt CO2");
}

TEST_F(CliTest, AttributeValueAddedBasis) {
  EXPECT_EQ(run({"attribute", path("worked.csv"), path("worked_e.csv"), "--basis", "value-added"}), 0);
  const auto doc = out_json();
  EXPECT_NEAR(doc["attribution"]["per_sector"][0].get<double>(), 22.6154, 1e-4);
  EXPECT_NEAR(doc["attribution"]["total_attributed"].get<double>(), 30.0, 1e-10);
}

TEST_F(CliTest, IntensityBothMethodsAgree) {
  EXPECT_EQ(run({"intensity", path("worked.csv"), path("worked_e.csv")}), 0);
  const auto solve = out_json();
  EXPECT_EQ(run({"intensity", path("worked.csv"), path("worked_e.csv"), "--method", "neumann", "--tol", "1e-12"}), 0);
  const auto series = out_json();
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(solve["total"]["values"][i].get<double>(), series["total"]["values"][i].get<double>(), 1e-11);
    EXPECT_DOUBLE_EQ(solve["direct"]["values"][i].get<double>(), 0.1);
  }
  EXPECT_NEAR(solve["total"]["values"][0].get<double>(), 0.292308, 1e-6);
  EXPECT_GT(series["terms_used"].get<int>(), 1);
}

TEST_F(CliTest, PerturbReportsSeed) {
  EXPECT_EQ(run({"perturb", path("worked.csv"), "--epsilon", "0.001", "--samples", "10", "--seed", "42"}), 0);
  const auto doc = out_json();
  EXPECT_EQ(doc["perturbation"]["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(doc["perturbation"]["samples"].get<int>(), 10);
  EXPECT_NEAR(doc["spectral"]["rho"].get<double>(), 0.662250, 1e-6);
}

TEST_F(CliTest, GenerateThenAttribute) {
  EXPECT_EQ(run({"generate", "--n", "5", "--seed", "7", "--out", path("gen")}), 0);
  EXPECT_EQ(run({"attribute", path("gen/table.csv"), path("gen/emissions.csv")}), 0);
  EXPECT_EQ(run({"attribute", path("gen/table.csv"), path("gen/emissions.csv"), "--basis", "value-added"}), 0);
  EXPECT_EQ(run({"validate", path("gen/table.csv")}), 0);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"validate", path("worked.csv"), "--bogus"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"attribute", path("worked.csv")}), 2);
  EXPECT_EQ(run({"attribute", path("worked.csv"), path("worked_e.csv"), "--basis", "profit"}), 2);
  EXPECT_EQ(run({"perturb", path("worked.csv"), "--epsilon", "0.1"}), 2);
}

TEST_F(CliTest, DataErrorsExitOneWithStructuredMessage) {
  write("bad.csv", "u,s1,s2,D\ns1,100,x,50\ns2,30,20,50\n");
  EXPECT_EQ(run({"validate", path("bad.csv")}), 1);
  const auto err = err_json();
  EXPECT_EQ(err["error"]["code"], "ParseError");
  EXPECT_EQ(err["error"]["line"].get<int>(), 2);
  EXPECT_EQ(err["error"]["column"].get<int>(), 3);

  EXPECT_EQ(run({"validate", path("missing.csv")}), 1);
  EXPECT_EQ(err_json()["error"]["code"], "IoError");

  write("missing_e.csv", "sector,kt\ns1,20\n");
  EXPECT_EQ(run({"attribute", path("worked.csv"), path("missing_e.csv")}), 1);
  EXPECT_EQ(err_json()["error"]["code"], "MissingSector");
}

TEST_F(CliTest, PolicyFlags) {
  write("neg_v.csv", "u,a,b,D\na,10,60,30\nb,20,30,30\n");
  EXPECT_EQ(run({"validate", path("neg_v.csv")}), 1);
  EXPECT_EQ(run({"validate", path("neg_v.csv"), "--allow-negative-v"}), 0);
  write("idle.csv", "u,a,idle,D\na,5,0,5\nidle,0,0,0\n");
  EXPECT_EQ(run({"validate", path("idle.csv")}), 1);
  EXPECT_EQ(run({"validate", path("idle.csv"), "--drop-zero-sectors"}), 0);
  EXPECT_EQ(out_json()["dropped_sectors"][0], "idle");
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}), 0); }
