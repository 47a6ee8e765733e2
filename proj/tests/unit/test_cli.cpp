#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include <gtest/gtest.h>

#include "fdp/fixture.hpp"
#include "fdp/report.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;
using testing_util::slurp;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome fdp_cli(const fs::path& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(FDP_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(out);
  o.err = slurp(err);
  return o;
}

// Small but complete fixture: two repetitions, a short BP schedule.
fs::path fast_fixture(const std::string& name) {
  const auto dir = testing_util::scratch(name);
  fdp::fixture::FixtureOptions opt;
  opt.repetitions = 2;
  opt.bp_epochs = 100;
  fdp::fixture::write_fixture(dir, opt);
  return dir;
}

std::string conf(const fs::path& dir) { return "-c " + (dir / "fixture.conf").string(); }

}  // namespace

TEST(Cli, ValidateFixture) {
  const auto dir = fast_fixture("cli_validate");
  const auto o = fdp_cli(dir, conf(dir) + " validate");
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("config ok"), std::string::npos);
}

TEST(Cli, MissingLexiconIsNamed) {
  const auto dir = fast_fixture("cli_lexicon");
  fs::remove(dir / "lexicon.txt");
  const auto o = fdp_cli(dir, conf(dir) + " validate");
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("lexicon"), std::string::npos) << o.err;
}

TEST(Cli, BetaOutOfRangeStopsBeforeWork) {
  const auto dir = fast_fixture("cli_beta");
  testing_util::spit(dir / "fixture.conf", slurp(dir / "fixture.conf") + "betas = 0, 0.5, 1.2\n");
  const auto o = fdp_cli(dir, conf(dir) + " indicators");
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("outside [0, 1]"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, UnknownConfigKeyIsInvalid) {
  const auto dir = fast_fixture("cli_key");
  testing_util::spit(dir / "fixture.conf", slurp(dir / "fixture.conf") + "colour = blue\n");
  EXPECT_EQ(fdp_cli(dir, conf(dir) + " validate").code, 1);
  EXPECT_EQ(fdp_cli(dir, conf(dir) + " run").code, 1);
}

TEST(Cli, UsageErrorsExitOne) {
  const auto dir = testing_util::scratch("cli_usage");
  EXPECT_EQ(fdp_cli(dir, "validate").code, 1);
  EXPECT_EQ(fdp_cli(dir, "-c x.conf frobnicate").code, 1);
}

TEST(Cli, JoinFailureIsRuntimeError) {
  const auto dir = fast_fixture("cli_join");
  // Drop the first company's accounting row.
  std::string acc = slurp(dir / "accounting_T1.csv");
  const auto first = acc.find('\n') + 1;
  acc.erase(first, acc.find('\n', first) + 1 - first);
  testing_util::spit(dir / "accounting_T1.csv", acc);
  const auto o = fdp_cli(dir, conf(dir) + " indicators");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("C001"), std::string::npos) << o.err;
}

TEST(Cli, IndicatorsThenRun) {
  const auto dir = fast_fixture("cli_run");
  auto o = fdp_cli(dir, conf(dir) + " indicators");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("75 companies, DAP missing 1, audit missing 0, without posts 1"),
            std::string::npos)
      << o.out;

  const auto aug = fdp::load_dataset((dir / "out" / "augmented_T1.csv").string(), [] {
    fdp::Schema s;
    s.missing_tokens = {"NA"};
    return s;
  }());
  EXPECT_EQ(aug.cols(), 43u);
  const auto dap = *aug.feature_index("DAP");
  const auto emo = *aug.feature_index("emotion");
  EXPECT_FALSE(aug.value(74, dap).has_value());
  EXPECT_EQ(*aug.value(73, emo), 0.0);
  EXPECT_NE(*aug.value(0, emo), 0.0);

  o = fdp_cli(dir, conf(dir) + " run");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("dropped F6 F8"), std::string::npos) << o.out;
  const auto cfg = fdp::load_config((dir / "fixture.conf").string());
  for (const auto& f : fdp::report::report_files(cfg)) {
    EXPECT_TRUE(fs::is_regular_file(dir / "out" / f)) << f;
  }

  // Rerunning the identical config reproduces every report byte for byte.
  std::map<std::string, std::string> first;
  for (const auto& f : fdp::report::report_files(cfg)) first[f] = slurp(dir / "out" / f);
  o = fdp_cli(dir, conf(dir) + " run");
  ASSERT_EQ(o.code, 0) << o.err;
  for (const auto& f : fdp::report::report_files(cfg)) {
    EXPECT_EQ(first[f], slurp(dir / "out" / f)) << f;
  }

  // A different base seed changes the per-run records.
  fs::create_directories(dir / "seeded");
  fs::copy_file(dir / "out" / "augmented_T1.csv", dir / "seeded" / "augmented_T1.csv");
  o = fdp_cli(dir, conf(dir) + " -o " + (dir / "seeded").string() + " -s 5 run");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(slurp(dir / "out" / "runs_long.csv"), slurp(dir / "seeded" / "runs_long.csv"));
}
