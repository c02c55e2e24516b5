#include <gtest/gtest.h>

#include "support.hpp"

namespace ts = testing_support;
using nlohmann::json;

namespace {

const std::string kCli = EXERGY_CLI_PATH;

class Cli : public ::testing::Test {
 protected:
  ts::TempDir dir;
  std::string reference_file(exergy::ReferenceForm form = exergy::ReferenceForm::combined) {
    return dir.write(form == exergy::ReferenceForm::combined ? "reference.json" : "reference_h0s0.json",
                     ts::reference_json(form).dump(2));
  }
  std::string write(const std::string& name, const json& doc) { return dir.write(name, doc.dump(2)); }
  ts::CommandResult run(const std::string& args) { return ts::run_cli(kCli, args, dir); }
};

}  // namespace

TEST_F(Cli, AnalyzeTable) {
  const auto r = run("analyze " + reference_file());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("Exergy destruction"), std::string::npos);
  EXPECT_NE(r.out.find("6270.70"), std::string::npos);
  EXPECT_NE(r.out.find("64.12"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(Cli, AnalyzeJsonMatchesLibrary) {
  const auto file = reference_file();
  const auto r = run("analyze " + file + " --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(exergy::report_from_json(json::parse(r.out)), exergy::analyze_plant(exergy::load_plant(file)));
}

TEST_F(Cli, AnalyzeCsv) {
  const auto r = run("analyze " + reference_file() + " --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 14 + 3);
  EXPECT_EQ(r.out.rfind(std::string(exergy::kCsvHeader), 0), 0u);
}

TEST_F(Cli, OutputIsByteDeterministic) {
  const auto file = reference_file(exergy::ReferenceForm::enthalpy_entropy);
  for (const std::string& args : {"analyze " + file, "analyze " + file + " --format csv",
                                 "analyze " + file + " --format json",
                                 "sweep " + file + " --t0-from-c 5 --t0-to-c 45 --t0-step-c 5 --format csv"}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.exit_code, 0) << args << "\n" << a.err;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty());
  }
}

TEST_F(Cli, DeadStateOverride) {
  const auto file = reference_file(exergy::ReferenceForm::enthalpy_entropy);
  const auto same = run("analyze " + file + " --t0-c 15 --format json");
  const auto plain = run("analyze " + file + " --format json");
  ASSERT_EQ(same.exit_code, 0) << same.err;
  EXPECT_EQ(same.out, plain.out);
  const auto moved = run("analyze " + file + " --t0-c 20 --format json");
  ASSERT_EQ(moved.exit_code, 0) << moved.err;
  EXPECT_DOUBLE_EQ(json::parse(moved.out)["dead_state"]["temperature_k"].get<double>(), 293.15);
  // a k0 reference is tied to the file's dead state
  EXPECT_EQ(run("analyze " + reference_file() + " --t0-c 20").exit_code, 1);
}

TEST_F(Cli, Sweep) {
  const auto r = run("sweep " + reference_file(exergy::ReferenceForm::enthalpy_entropy) +
                     " --t0-from-c 5 --t0-to-c 45 --t0-step-c 5 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["mode"], "fixed-reference");
  ASSERT_EQ(j["points"].size(), 9u);
  EXPECT_NEAR(j["points"][8]["t0_k"].get<double>(), 318.15, 1e-9);
  const auto table = run("sweep " + reference_file(exergy::ReferenceForm::enthalpy_entropy) +
                         " --t0-from-c 5 --t0-to-c 45 --t0-step-c 5");
  EXPECT_EQ(table.exit_code, 0);
  EXPECT_NE(table.out.find("278.15"), std::string::npos);
}

TEST_F(Cli, SweepOfCombinedReferenceFails) {
  const auto r = run("sweep " + reference_file() + " --t0-from-c 5 --t0-to-c 45 --t0-step-c 5");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("k0"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, ValidateReference) {
  const auto r = run("validate " + reference_file());
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("24 states, 14 components, 0 violations"), std::string::npos);
}

TEST_F(Cli, ValidateListsEveryProblem) {
  auto doc = ts::reference_json();
  ts::state_entry(doc, "6")["mdot_kg_s"] = 50.0;
  ts::state_entry(doc, "4")["eps_kj_kg"] = 300.0;
  const auto r = run("validate " + write("bad.json", doc));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("mass-balance [Split5]"), std::string::npos);
  EXPECT_NE(r.out.find("exergy-inconsistency [4]"), std::string::npos);
  EXPECT_NE(r.out.find("port-mismatch [LTR]"), std::string::npos);
  EXPECT_NE(r.out.find("3 violations"), std::string::npos);
}

TEST_F(Cli, CorruptedFilesExitWithDataError) {
  auto dangling = ts::reference_json();
  for (auto& c : dangling["components"])
    if (c["id"] == "T1") c["outlet"] = "99";
  auto duplicate = ts::reference_json();
  duplicate["states"].push_back(ts::state_entry(duplicate, "4"));
  auto imbalance = ts::reference_json();
  ts::state_entry(imbalance, "6")["mdot_kg_s"] = 50.0;
  auto mismatch = ts::reference_json();
  ts::state_entry(mismatch, "4")["eps_kj_kg"] = 300.0;

  const std::pair<const char*, json> cases[] = {
      {"dangling.json", dangling}, {"duplicate.json", duplicate}, {"imbalance.json", imbalance},
      {"mismatch.json", mismatch}};
  for (const auto& [name, doc] : cases) {
    const auto file = write(name, doc);
    const auto r = run("analyze " + file);
    EXPECT_EQ(r.exit_code, 1) << name;
    EXPECT_TRUE(r.out.empty()) << name;
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << name;
    EXPECT_EQ(run("validate " + file).exit_code, 1) << name;
  }
  EXPECT_NE(run("analyze " + write("d.json", dangling)).err.find("'99'"), std::string::npos);
  EXPECT_NE(run("analyze " + write("u.json", duplicate)).err.find("duplicate state id '4'"), std::string::npos);
}

TEST_F(Cli, UsageAndParseErrorsExitTwo) {
  const auto file = reference_file();
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("analyze").exit_code, 2);
  EXPECT_EQ(run("analyze " + file + " --format xml").exit_code, 2);
  EXPECT_EQ(run("analyze " + file + " --t0-c warm").exit_code, 2);
  EXPECT_EQ(run("sweep " + file + " --t0-from-c 5 --t0-to-c 45").exit_code, 2);
  EXPECT_EQ(run("sweep " + file + " --t0-from-c 5 --t0-to-c 45 --t0-step-c 0").exit_code, 2);
  EXPECT_EQ(run("analyze " + dir.path("missing.json")).exit_code, 2);
  EXPECT_EQ(run("analyze " + dir.write("broken.json", "{\"states\": [")).exit_code, 2);
  EXPECT_EQ(run("validate " + dir.write("schema.json", "{\"dead_state\": 3}")).exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(Cli, ReferenceSubcommandRoundTrips) {
  const auto r = run("reference --form h0s0");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out), ts::reference_json(exergy::ReferenceForm::enthalpy_entropy));
  EXPECT_EQ(run("reference --form other").exit_code, 2);
}
