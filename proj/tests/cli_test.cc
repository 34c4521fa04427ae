#include "symctl/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace symctl::cli {
namespace {

using testing::data_path;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& spec) {
  RunConfig cfg;
  cfg.command = command;
  cfg.input = data_path(spec);
  return cfg;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

GTEST_TEST(Analyze, RingReport) {
  auto cfg = config("analyze", "d4_ring.json");
  cfg.format = Format::kJson;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_gamma"], 2);
  EXPECT_EQ(j["group_order"], 8);
  const std::vector<int> m = {2, 2, 4, 0, 0};
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(j["irreps"][i]["m_i"], m[i]);
  EXPECT_LT(j["residuals"]["off_block"].get<double>(), 1e-9);
  // T round-trips through the report.
  const Matrix t = matrix_from_json(j["T"], "T");
  EXPECT_LT(max_abs(t - load_matrix(data_path("d4_golden_T.json"), "T")), 1e-12);
}

GTEST_TEST(Analyze, PetersenSpectrum) {
  auto cfg = config("analyze", "petersen.json");
  const auto text = run_cfg(cfg);
  ASSERT_EQ(text.code, kOk) << text.err;
  EXPECT_NE(text.out.find("N_Gamma = 5"), std::string::npos);
  EXPECT_NE(text.out.find("  3: 1/1"), std::string::npos);
  EXPECT_NE(text.out.find("  1: 5/5"), std::string::npos);
  EXPECT_NE(text.out.find("  -2: 4/4"), std::string::npos);
}

GTEST_TEST(Analyze, TrivialGroup) {
  auto cfg = config("analyze", "trivial5.json");
  cfg.format = Format::kJson;
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["irreps"].size(), 1u);
  EXPECT_EQ(j["irreps"][0]["m_i"], 5);
}

GTEST_TEST(Design, RingAndPetersen) {
  auto cfg = config("design", "d4_ring.json");
  cfg.format = Format::kJson;
  auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["selected_state_indices"], nlohmann::json({3, 1}));
  EXPECT_EQ(j["trace"][0]["column"], 5);
  EXPECT_EQ(j["trace"][1]["column"], 7);

  cfg = config("design", "petersen.json");
  cfg.format = Format::kJson;
  r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["selected_state_indices"], nlohmann::json({1, 2, 3, 6, 9}));
  EXPECT_EQ(j["controllable"], true);
  EXPECT_EQ(j["n_gamma"], 5);

  cfg.observe = true;
  r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "output");
  EXPECT_EQ(j["selected_state_indices"], nlohmann::json({1, 2, 3, 6, 9}));
}

GTEST_TEST(Design, ReportRoundTripsThroughCheck) {
  for (bool observe : {false, true}) {
    auto cfg = config("design", "d4_ring.json");
    cfg.format = Format::kJson;
    cfg.observe = observe;
    const auto r = run_cfg(cfg);
    ASSERT_EQ(r.code, kOk);
    const auto path = temp_file("symctl_design.json", r.out);
    auto check = config("check", "d4_ring.json");
    check.design = path;
    check.format = Format::kJson;
    const auto c = run_cfg(check);
    EXPECT_EQ(c.code, kOk) << c.err;
    const auto j = nlohmann::json::parse(c.out);
    EXPECT_EQ(j["controllable"], true);
    EXPECT_EQ(j["kind"], observe ? "output" : "input");
    EXPECT_EQ(j["selected_state_indices"], nlohmann::json::parse(r.out)["selected_state_indices"]);
  }
}

GTEST_TEST(Check, AllMethodsAndVerdicts) {
  auto cfg = config("check", "petersen.json");
  cfg.inputs = {1, 2, 3, 6, 9};
  cfg.format = Format::kJson;
  auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  for (const char* m : {"kalman", "subspace", "pbh"}) {
    EXPECT_EQ(j["methods"][m]["controllable"], true) << m;
  }
  EXPECT_EQ(j["methods_agree"], true);

  cfg.inputs = {1, 2, 3, 4};
  r = run_cfg(cfg);
  EXPECT_EQ(r.code, kNotControllable);

  cfg.inputs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(run_cfg(cfg).code, kOk);

  cfg.inputs = {11};
  EXPECT_EQ(run_cfg(cfg).code, kUsage);
  cfg.inputs = {1, 1};
  EXPECT_EQ(run_cfg(cfg).code, kUsage);
  cfg.inputs = {};
  EXPECT_EQ(run_cfg(cfg).code, kUsage);
}

GTEST_TEST(Check, FiveInputVerdictMatchesEnumeration) {
  auto cfg = config("enumerate", "petersen.json");
  cfg.k = 5;
  const auto e = run_cfg(cfg);
  ASSERT_EQ(e.code, kOk);
  EXPECT_NE(e.out.find("\n1 2 3 4 5,"), std::string::npos);
  const bool flagged = e.out.find("\n1 2 3 4 5,1\n") != std::string::npos;
  auto check = config("check", "petersen.json");
  check.inputs = {1, 2, 3, 4, 5};
  EXPECT_EQ(run_cfg(check).code == kOk, flagged);
}

GTEST_TEST(Enumerate, CsvCountsAndCap) {
  auto cfg = config("enumerate", "petersen.json");
  cfg.k = 4;
  auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 211);
  EXPECT_EQ(r.out.find(",1\n"), std::string::npos);
  EXPECT_NE(r.err.find("0 of 210"), std::string::npos);

  cfg.k = 10;
  r = run_cfg(cfg);
  EXPECT_NE(r.err.find("1 of 1"), std::string::npos);

  cfg.k = 5;
  cfg.cap = 100;
  EXPECT_EQ(run_cfg(cfg).code, kCapExceeded);

  cfg.k = 11;
  cfg.cap = 1000;
  EXPECT_EQ(run_cfg(cfg).code, kUsage);
}

GTEST_TEST(Errors, ParseDiagnostics) {
  auto cfg = config("analyze", "d4_ring.json");
  cfg.input = temp_file("symctl_bad1.json", "{\n  \"node_count\": 2,\n  oops\n}");
  auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  cfg.input = temp_file("symctl_bad2.json",
                        R"({"node_count": 2, "internal_block": [[1]],
                            "coupling_labels": {"c": [[1]]},
                            "edges": [[1, 3, "c"]]})");
  r = run_cfg(cfg);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("edge 1"), std::string::npos) << r.err;

  cfg.input = temp_file("symctl_bad3.json",
                        R"({"node_count": 2, "internal_block": [["x"]]})");
  r = run_cfg(cfg);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("internal_block[0][0]"), std::string::npos) << r.err;

  cfg.input = temp_file("symctl_bad4.json",
                        R"j({"node_count": 3, "internal_block": [[1]],
                            "coupling_labels": {"c": [[1]], "d": [[2]]},
                            "edges": [[1, 2, "c"], [2, 3, "c"], [3, 1, "d"]],
                            "group": {"generators": ["(1 2 3)"],
                                      "irreps": {"family": "cyclic", "order": 3}}})j");
  r = run_cfg(cfg);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("not equivariant"), std::string::npos) << r.err;

  cfg.input = temp_file("symctl_bad5.json",
                        R"j({"node_count": 3, "internal_block": [[1]],
                            "group": {"generators": ["(1 2 3)"]}})j");
  r = run_cfg(cfg);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("group.irreps"), std::string::npos) << r.err;

  cfg = config("analyze", "d4_ring.json");
  cfg.format = Format::kCsv;
  EXPECT_EQ(run_cfg(cfg).code, kUsage);
}

GTEST_TEST(Load, ImageArrayGeneratorsAndVertexAction) {
  // The ring again, with generators as image arrays.
  const auto base = nlohmann::json::parse(std::ifstream(data_path("d4_ring.json")));
  auto spec = base;
  spec["group"]["generators"] = {{4, 1, 2, 3}, {3, 2, 1, 4}};
  const auto net = parse_network(spec.dump(), data_path(""));
  EXPECT_EQ(net.system->group().order(), 8u);
  EXPECT_EQ(net.system->a(), testing::d4_matrix());

  // Z4 acting on abstract points {1..4} with an explicit vertex action.
  auto z4 = nlohmann::json::parse(std::ifstream(data_path("z4_ring.json")));
  z4["group"]["vertex_action"] = {"(1 2 3 4)"};
  z4["group"]["generators"] = {"(1 3 2 4)"};
  const auto net2 = parse_network(z4.dump(), data_path(""));
  EXPECT_EQ(net2.system->group().order(), 4u);
}

GTEST_TEST(Load, IrrepsOverride) {
  LoadOptions opts;
  opts.irreps_path = data_path("petersen_irreps.json");
  const auto net = load_network(data_path("petersen_young.json"), opts);
  EXPECT_EQ(net.irreps.size(), 3u);
  EXPECT_EQ(net.irreps[1].label(), "theta2");
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SYMCTL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

GTEST_TEST(Binary, ExitCodes) {
  const std::string d4 = data_path("d4_ring.json");
  const std::string pet = data_path("petersen.json");
  EXPECT_EQ(run_binary("analyze " + d4), 0);
  EXPECT_EQ(run_binary("design " + pet + " --method pbh --format json"), 0);
  EXPECT_EQ(run_binary("design --rank-greedy " + pet), 0);
  EXPECT_EQ(run_binary("check " + pet + " --inputs 1,2,3,6,9"), 0);
  EXPECT_EQ(run_binary("check " + pet + " --inputs 1,2 --observe"), 4);
  EXPECT_EQ(run_binary("enumerate " + pet + " -k 5 --cap 10"), 3);
  EXPECT_EQ(run_binary("enumerate " + pet + " -k 4 --format json"), 0);
  EXPECT_EQ(run_binary("analyze " + d4 + " --irreps " + data_path("petersen_irreps.json")), 1);
  EXPECT_EQ(run_binary("frobnicate " + d4), 1);
  EXPECT_EQ(run_binary("analyze " + d4 + " --method nope"), 1);
  EXPECT_EQ(run_binary("analyze /nonexistent.json"), 1);
  EXPECT_EQ(run_binary("--help"), 0);
}

}  // namespace
}  // namespace symctl::cli
