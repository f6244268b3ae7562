#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csv_output.hpp"
#include "run_config.hpp"

using namespace emcel::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "emcel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("emcel_cli_test_" + name);
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  std::size_t rows = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

TEST(ParseHList, PowerRangeListAndSingle) {
  const auto r = parse_h_list("2^-6..2^-10");
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.front(), 1.0 / 64);
  EXPECT_DOUBLE_EQ(r.back(), 1.0 / 1024);
  EXPECT_EQ(parse_h_list("0.1, 0.01,0.001").size(), 3u);
  EXPECT_DOUBLE_EQ(parse_h_list("1e-4").front(), 1e-4);
  EXPECT_THROW(parse_h_list("0.1,-1"), ConfigError);
  EXPECT_THROW(parse_h_list("1..2"), ConfigError);
}

TEST(ParseGrid, BoundsAndCount) {
  const Grid g = parse_grid("-0.2:1.2:2000");
  EXPECT_DOUBLE_EQ(g.lo, -0.2);
  EXPECT_EQ(g.count, 2000u);
  const auto p = g.points();
  EXPECT_DOUBLE_EQ(p.front(), -0.2);
  EXPECT_DOUBLE_EQ(p.back(), 1.2);
  EXPECT_THROW(parse_grid("0:1"), ConfigError);
  EXPECT_THROW(parse_grid("1:0:5"), ConfigError);
}

TEST(RunConfig, ErrorsNameTheField) {
  auto message = [](const nlohmann::json& doc) {
    try {
      parse_run_config(doc);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message({{"experiment", "rate"}, {"model", "sticky"}, {"h", "0.1,0.01"}, {"payoff", "indicator"}})
                .rfind("payoff", 0),
            0u);
  EXPECT_EQ(message({{"experiment", "paths"}, {"model", {{"name", "sticky"}, {"theta", -1}}}, {"h", 0.1}})
                .rfind("model.theta", 0),
            0u);
  EXPECT_EQ(message({{"experiment", "paths"}, {"model", "bm"}, {"h", 0.1}, {"bogus", 1}}).rfind("bogus", 0), 0u);
  EXPECT_EQ(message({{"experiment", "conda"}, {"model", "gbm"}, {"h", 0.1}}).rfind("K", 0), 0u);
  EXPECT_EQ(message({{"experiment", "paths"}, {"model", "bm"}}).rfind("h", 0), 0u);
}

TEST(RunConfig, CustomMeasure) {
  const nlohmann::json measure = {
      {"space", {{"left", 0}, {"right", 1}, {"left_behavior", "absorbing"}, {"right_behavior", "reflecting"}}},
      {"density", {{"kind", "piecewise-constant"}, {"base", 2}, {"segments", {{0.2, 0.4, 1.0}}}}},
      {"atoms", {{0.5, 0.25}}},
      {"singular", "cantor_level_3"}};
  const auto m = parse_measure(measure);
  EXPECT_DOUBLE_EQ(m.point_mass(0.5), 0.25);
  // base 2, segment 1 and the level-3 Cantor density (3/2)^3, since 0.3 lies in [8/27, 1/3]
  EXPECT_DOUBLE_EQ(m.density(0.3), 6.375);
  EXPECT_THROW(parse_measure({{"density", {{"kind", "constant"}, {"value", 1}}}, {"singular", "cantor_level_x"}}),
               ConfigError);
}

TEST(Cli, ReflectingBoundaryAtInfinityIsRejected) {
  const auto path = temp_file("bad_measure.json");
  std::ofstream(path) << R"({"space":{"left":0,"right":"inf","left_behavior":"reflecting",)"
                      << R"("right_behavior":"reflecting"},"density":{"kind":"constant","value":2}})";
  const Result r = run_cli({"paths", "--measure", path.string(), "--h", "0.01"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("measure.space.right_behavior"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, ScaleFactorTableForCantorModel) {
  const Result r = run_cli({"scalefactor", "--model", "cantor", "--n", "4", "--h", "1e-4", "--grid", "-0.2:1.2:2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out), 2000u);
  EXPECT_NE(r.out.find("h,y,a_h,a_h_over_sqrt_h,boundary_short"), std::string::npos);
}

TEST(Cli, RateStudyHasFiveRowsAndSlope) {
  const Result r = run_cli({"rate", "--model", "reflected-sticky", "--theta", "0.5", "--h", "2^-6..2^-10", "--z", "0.1",
                            "--paths", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out), 5u);
  EXPECT_NE(r.out.find("# slope: "), std::string::npos);
}

TEST(Cli, OutputIsByteIdenticalAndChecks) {
  const auto config = temp_file("config.json");
  std::ofstream(config) << R"({"model":{"name":"sticky","theta":0.5},"h":0.01,"t":1,"n_paths":500,"seed":9,)"
                        << R"("grid":"-0.5:0.5:21"})";
  const auto out1 = temp_file("a.csv");
  const auto out2 = temp_file("b.csv");
  ASSERT_EQ(run_cli({"cdf", "--config", config.string(), "--out", out1.string()}).code, 0);
  ASSERT_EQ(run_cli({"cdf", "--config", config.string(), "--out", out2.string()}).code, 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(slurp(out1), slurp(out2));
  const Result check = run_cli({"check", out1.string()});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_EQ(check.out, "ok: 21 rows\n");

  // flags override the config file
  const Result overridden = run_cli({"cdf", "--config", config.string(), "--seed", "10"});
  ASSERT_EQ(overridden.code, 0);
  EXPECT_NE(overridden.out.find("# seed: 10"), std::string::npos);

  // tampering with the echoed config breaks the hash
  std::string text = slurp(out1);
  text.replace(text.find("\"seed\":9"), 8, "\"seed\":8");
  std::ofstream(out2, std::ios::binary) << text;
  EXPECT_EQ(run_cli({"check", out2.string()}).code, 1);
  for (const auto& p : {config, out1, out2}) std::filesystem::remove(p);
}

TEST(Cli, PathsFoldedAndRawVariants) {
  const Result folded = run_cli({"paths", "--model", "reflected-sticky", "--h", "0.01", "--t", "0.5", "--paths", "3"});
  ASSERT_EQ(folded.code, 0);
  EXPECT_NE(folded.out.find("# variant: folded"), std::string::npos);
  EXPECT_EQ(data_rows(folded.out), 3u * 51u);
  const Result raw =
      run_cli({"paths", "--model", "reflected-sticky", "--h", "0.01", "--t", "0.5", "--paths", "3", "--raw"});
  EXPECT_NE(raw.out.find("# variant: raw"), std::string::npos);
  EXPECT_NE(raw.out.find(",-"), std::string::npos);
}

TEST(Cli, ConditionADiagnostic) {
  const Result r = run_cli({"conda", "--model", "gbm", "--strategy", "weak-euler", "--h", "0.1,0.01,0.001", "--K", "0.5:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out), 3u);
}

TEST(Cli, ValidationErrorsExitWithOne) {
  EXPECT_EQ(run_cli({"paths", "--model", "sticky"}).code, 1);
  EXPECT_EQ(run_cli({"paths", "--model", "nonsense", "--h", "0.1"}).code, 1);
  EXPECT_EQ(run_cli({"paths", "--model", "bm", "--strategy", "gbm", "--h", "0.1"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"check", "/nonexistent/file.csv"}).code, 1);
}

TEST(CsvOutput, HashAndNumberFormat) {
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}
