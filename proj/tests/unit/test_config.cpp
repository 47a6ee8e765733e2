#include <sstream>

#include <gtest/gtest.h>

#include "fdp/config.hpp"
#include "fdp/fixture.hpp"
#include "helpers.hpp"

namespace {

fdp::RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return fdp::parse_config(in, "test.conf", "/base");
}

bool has_finding(const fdp::ConfigReport& r, const std::string& needle, fdp::Finding::Severity s) {
  for (const auto& f : r.findings) {
    if (f.severity == s && f.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Config, Defaults) {
  const auto c = parse("");
  EXPECT_EQ(c.betas, (std::vector<double>{0, 0.2, 0.4, 0.5, 0.6, 0.8, 1}));
  EXPECT_EQ(c.top_k, 20u);
  EXPECT_EQ(c.repetitions, 10u);
  EXPECT_EQ(c.train_fraction, 0.7);
  EXPECT_EQ(c.missing_threshold, 0.3);
  ASSERT_EQ(c.models.size(), 4u);
}

TEST(Config, ParsesKeysAndResolvesPaths) {
  const auto c = parse(
      "# comment\n"
      "horizons = T-1, T-2\n"
      "data.T-2 = d2.csv   # trailing\n"
      "betas = 0.2,0.8\n"
      "models = LR,BP\n"
      "model.BP.hidden = 4\n"
      "comparison.model = LR\n");
  EXPECT_EQ(c.horizons.size(), 2u);
  EXPECT_EQ(c.data_path(fdp::Horizon::kT2), "/base/d2.csv");
  EXPECT_EQ(c.betas, (std::vector<double>{0.2, 0.8}));
  EXPECT_EQ(c.find_model(fdp::models::ClassifierKind::kBP)->get("hidden"), 4.0);
  EXPECT_EQ(c.comparison_model, fdp::models::ClassifierKind::kLR);
}

TEST(Config, Errors) {
  EXPECT_FDP_ERROR(parse("top_k = 5\ntop_k = 6\n"), fdp::ErrorKind::kConfig);
  EXPECT_FDP_ERROR(parse("colour = blue\n"), fdp::ErrorKind::kConfig);
  EXPECT_FDP_ERROR(parse("just words\n"), fdp::ErrorKind::kConfig);
  EXPECT_FDP_ERROR(parse("models = LR\nmodel.BP.hidden = 4\n"), fdp::ErrorKind::kConfig);
  EXPECT_FDP_ERROR(parse("model.BP.hidden = 0\n"), fdp::ErrorKind::kConfig);
  try {
    parse("\nbins = many\n");
    FAIL();
  } catch (const fdp::Error& e) {
    EXPECT_NE(std::string(e.what()).find("test.conf:2"), std::string::npos) << e.what();
  }
}

TEST(Config, BetaOutsideUnitIntervalIsInvalid) {
  auto c = parse("betas = 0, 1.5\n");
  const auto r = fdp::validate_config(c, fdp::Stage::kRun);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_finding(r, "1.5 outside [0, 1]", fdp::Finding::Severity::kError));
}

TEST(Config, FixtureIsCleanAndMissingLexiconNamed) {
  const auto dir = testing_util::scratch("config_fixture");
  const auto path = fdp::fixture::write_fixture(dir);
  auto c = fdp::load_config(path);
  auto r = fdp::validate_config(c, fdp::Stage::kIndicators);
  EXPECT_TRUE(r.ok());
  c.lexicon = (dir / "nope.txt").string();
  r = fdp::validate_config(c, fdp::Stage::kIndicators);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_finding(r, "lexicon: file not found", fdp::Finding::Severity::kError));
}

TEST(Config, TopKAboveSurvivorsWarns) {
  const auto dir = testing_util::scratch("config_topk");
  auto c = fdp::load_config(fdp::fixture::write_fixture(dir));
  c.top_k = 60;
  const auto r = fdp::validate_config(c, fdp::Stage::kIndicators);
  EXPECT_TRUE(r.ok());
  // 40 raw columns, F6 and F8 screened out, plus three derived.
  EXPECT_TRUE(has_finding(r, "exceeds the 41 features", fdp::Finding::Severity::kWarning));
}

TEST(Config, EffectiveEntriesExpandDefaults) {
  const auto e = fdp::effective_entries(parse(""));
  bool saw_bp_epochs = false;
  for (const auto& [k, v] : e) saw_bp_epochs = saw_bp_epochs || (k == "model.BP.epochs" && v == "2000");
  EXPECT_TRUE(saw_bp_epochs);
}
