#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace boltzgap::cli;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("boltzgap_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "boltzgap");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST(Cli, ParsesEpsRangesAndLists) {
  const auto r = parse_eps_list("2^-3..2^-5");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], 0.125);
  EXPECT_EQ(r[2], 0.03125);
  const auto l = parse_eps_list("0.1, 2^-4,1e-2");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1], 0.0625);
  EXPECT_EQ(l[2], 0.01);
  EXPECT_THROW(parse_eps_list("abc"), ConfigError);
  EXPECT_THROW(parse_eps_list(""), ConfigError);
}

TEST(Cli, FormatsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.0}) EXPECT_EQ(std::stod(format_number(x)), x);
  EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Cli, ValidatesRanges) {
  RunConfig c;
  c.experiment = "symbol";
  EXPECT_NO_THROW(validate(c));
  c.experiment = "nope";
  EXPECT_THROW(validate(c), ConfigError);
  c.experiment = "ode";
  c.eps = 2.0;
  EXPECT_THROW(validate(c), ConfigError);
  c.eps = 0.9;
  EXPECT_NO_THROW(validate(c));
  c.experiment = "commutator";
  EXPECT_THROW(validate(c), ConfigError);  // beyond the kernel's eps range
  c.eps = 0.1;
  c.eps_list = "2^-3..2^-4";
  EXPECT_THROW(validate(c), ConfigError);
  c.eps_list.clear();
  c.gamma = 2.5;
  EXPECT_THROW(validate(c), ConfigError);
  c.gamma = -1.0;
  c.experiment = "symbol";
  EXPECT_THROW(validate(c), ConfigError);
  c.experiment = "sanity";
  c.gamma.reset();
  c.grid_n = {6};
  EXPECT_THROW(validate(c), ConfigError);
  c.grid_n = {16};
  c.mode = "sideways";
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Cli, HashIgnoresSpellingOfDefaults) {
  RunConfig a, b;
  a.experiment = b.experiment = "symbol";
  b.eps_list = "2^-3..2^-7";
  b.s = 0.5;
  b.gamma = 0.0;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.s = 0.25;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_NE(canonical_text(a).find("experiment=symbol\n"), std::string::npos);
}

TEST(Cli, RunWritesDeterministicOutputs) {
  const fs::path d1 = fresh_dir("fgap1"), d2 = fresh_dir("fgap2");
  ASSERT_EQ(run_args({"fgap", "--out", d1.string()}), 0);
  ASSERT_EQ(run_args({"fgap", "--out", d2.string()}), 0);
  EXPECT_EQ(slurp(d1 / "fgap.csv"), slurp(d2 / "fgap.csv"));
  EXPECT_EQ(slurp(d1 / "summary.json"), slurp(d2 / "summary.json"));
  const auto j = nlohmann::json::parse(slurp(d1 / "summary.json"));
  for (const char* key : {"experiment", "config_hash", "fitted_constants", "pass_flags", "code_version", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  const std::string csv = slurp(d1 / "fgap.csv");
  EXPECT_EQ(csv.rfind("# config_hash=" + j["config_hash"].get<std::string>(), 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const fs::path d = fresh_dir("codes");
  EXPECT_EQ(run_args({"ode", "--eps", "2", "--out", d.string()}), 2);
  EXPECT_EQ(run_args({"unknown"}), 2);
  EXPECT_EQ(run_args({"fgap", "--seed", "1", "--out", d.string()}), 0);
  // Same directory, different configuration.
  EXPECT_EQ(run_args({"fgap", "--seed", "2", "--out", d.string()}), 2);
  EXPECT_EQ(run_args({"fgap", "--seed", "2", "--force", "--out", d.string()}), 0);
}

TEST(Cli, ConfigFile) {
  const fs::path d = fresh_dir("config");
  {
    std::ofstream ini(d / "run.ini");
    ini << "experiment = ode\neps = 0.1\nstride = 1000\nout = " << d.string() << "\n";
  }
  ASSERT_EQ(run_args({"--config", (d / "run.ini").string()}), 0);
  EXPECT_TRUE(fs::exists(d / "ode_series.csv"));
  const auto j = nlohmann::json::parse(slurp(d / "summary.json"));
  EXPECT_EQ(j["experiment"], "ode");
}
