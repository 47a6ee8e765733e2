#include <cmath>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "fdp/indicators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace ind = fdp::indicators;

TEST(AuditOpinion, Encoding) {
  EXPECT_EQ(ind::encode_audit_opinion(ind::AuditOpinion::kStandardUnqualified), 0);
  EXPECT_EQ(ind::encode_audit_opinion(ind::AuditOpinion::kOther), 1);
}

TEST(AuditOpinion, ParsesSourceStrings) {
  EXPECT_EQ(ind::parse_audit_opinion("qualified with emphasis"), ind::AuditOpinion::kOther);
  EXPECT_EQ(ind::parse_audit_opinion(" Standard_Unqualified "),
            ind::AuditOpinion::kStandardUnqualified);
  EXPECT_EQ(ind::parse_audit_opinion("disclaimer of opinion"), ind::AuditOpinion::kOther);
  EXPECT_FDP_ERROR(ind::parse_audit_opinion("unqualfied"), fdp::ErrorKind::kIndicator);
}

TEST(Jones, TotalAccruals) {
  ind::JonesInputRow r;
  r.total_assets_prev = 1;
  r.operating_profit = 100;
  r.operating_cash_flow = 100;
  EXPECT_EQ(ind::total_accruals(r), 0.0);
  r.operating_profit = 150;
  EXPECT_EQ(ind::total_accruals(r), 50.0);
  r.operating_profit = -20;
  r.operating_cash_flow = 30;
  EXPECT_EQ(ind::total_accruals(r), -50.0);
}

TEST(Jones, ExactFitRecoversCoefficients) {
  const auto rows = build::jones_rows(12, 2.0, 0.3, 0.1, 42);
  const auto c = ind::fit_jones(rows);
  EXPECT_NEAR(c.a1, 2.0, 1e-9);
  EXPECT_NEAR(c.a2, 0.3, 1e-9);
  EXPECT_NEAR(c.a3, 0.1, 1e-9);
  for (const auto& r : rows) EXPECT_NEAR(ind::accrual_earnings_management(r, c), 0.0, 1e-9);
}

TEST(Jones, MatchesNormalEquations) {
  const auto rows = build::jones_rows(40, 1.5, 0.2, 0.05, 9, 0.02, true);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (const auto& r : rows) {
    const double a = r.total_assets_prev;
    x.push_back({1.0 / a, r.delta_revenue / a, r.fixed_assets_closing / a});
    y.push_back((r.operating_profit - r.operating_cash_flow) / a);
  }
  const auto want = oracle::normal_equations(x, y);
  const auto c = ind::fit_jones(rows);
  EXPECT_NEAR(c.a1, want[0], 1e-7 * std::max(1.0, std::abs(want[0])));
  EXPECT_NEAR(c.a2, want[1], 1e-9);
  EXPECT_NEAR(c.a3, want[2], 1e-9);
}

TEST(Jones, CollinearAndTooFew) {
  std::vector<ind::JonesInputRow> same(12, build::jones_rows(1, 1, 1, 1, 3)[0]);
  EXPECT_FDP_ERROR(ind::fit_jones(same), fdp::ErrorKind::kCollinearity);
  EXPECT_FDP_ERROR(ind::fit_jones(build::jones_rows(5, 1, 1, 1, 3), 10), fdp::ErrorKind::kSampleSize);
}

TEST(Jones, NonManipulableAccruals) {
  ind::JonesInputRow r;
  r.total_assets_prev = 100;
  r.delta_revenue = 50;
  r.delta_receivables = 10;
  r.fixed_assets_closing = 60;
  EXPECT_EQ(ind::non_manipulable_accruals({0, 0, 0}, r), 0.0);
  EXPECT_NEAR(ind::non_manipulable_accruals({1, 1, 1}, r), 1.01, 1e-15);
  ind::JonesInputRow s;
  s.total_assets_prev = 200;
  s.delta_revenue = 20;
  s.fixed_assets_closing = 100;
  EXPECT_NEAR(ind::non_manipulable_accruals({2, 0.3, 0.1}, s), 0.09, 1e-15);
}

TEST(Jones, DapIsTaOverAMinusNda) {
  ind::JonesInputRow r;
  r.total_assets_prev = 100;
  r.operating_profit = 15;
  r.operating_cash_flow = 0;
  r.fixed_assets_closing = 10;
  // NDA = 0.1 * 10 / 100 = 0.01 with a1 = a2 = 0; TA/A = 0.15.
  EXPECT_NEAR(ind::accrual_earnings_management(r, {0, 0, 1.0}), 0.05, 1e-15);
}

TEST(Jones, ReceivablesShiftDap) {
  const auto c = ind::fit_jones(build::jones_rows(12, 2.0, 0.3, 0.1, 5));
  ind::JonesInputRow r;
  r.total_assets_prev = 100;
  r.delta_revenue = 20;
  r.fixed_assets_closing = 50;
  r.operating_cash_flow = 0;
  r.operating_profit = 2.0 + 0.3 * 20 + 0.1 * 50;
  r.delta_receivables = 10;
  EXPECT_NEAR(ind::accrual_earnings_management(r, c), 0.03, 1e-9);
}

TEST(Jones, ResidualsOrthogonalToRegressors) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rows = build::jones_rows(30, 1.0, 0.25, 0.08, seed, 0.05, true);
    const auto c = ind::fit_jones(rows);
    double dot[3] = {0, 0, 0};
    double norm[3] = {0, 0, 0};
    for (const auto& r : rows) {
      const double a = r.total_assets_prev;
      const double e = ind::accrual_earnings_management(r, c) -
                       c.a2 * r.delta_receivables / a;  // residual of the fitted regression
      const double x[3] = {1.0 / a, r.delta_revenue / a, r.fixed_assets_closing / a};
      for (int j = 0; j < 3; ++j) {
        dot[j] += e * x[j];
        norm[j] += x[j] * x[j];
      }
    }
    for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(dot[j]) / std::sqrt(norm[j]), 1e-10) << seed;
  }
}

TEST(Opinion, Influence) {
  EXPECT_EQ(ind::post_influence(16, 4), 4.0);
  EXPECT_EQ(ind::post_influence(0, 0), 0.0);
  EXPECT_EQ(ind::post_influence(81, 9), 6.0);
  EXPECT_FDP_ERROR(ind::post_influence(-1, 0), fdp::ErrorKind::kDomain);
}

TEST(Opinion, LexiconSentiment) {
  const ind::Lexicon lex = {{"good", 1}, {"bad", -1}};
  EXPECT_DOUBLE_EQ(ind::lexicon_sentiment({"good", "good", "bad"}, lex), 1.0 / 3.0);
  EXPECT_EQ(ind::lexicon_sentiment({"meh"}, lex), 0.0);
  EXPECT_EQ(ind::lexicon_sentiment({"bad"}, lex), -1.0);
}

TEST(Opinion, CompanyScore) {
  EXPECT_EQ(ind::company_opinion_score({{0.5, 16, 4}}), 2.0);
  EXPECT_EQ(ind::company_opinion_score({}), 0.0);
  EXPECT_EQ(ind::company_opinion_score({{1.0, 16, 4}, {-1.0, 81, 9}}), -2.0);
  EXPECT_DOUBLE_EQ(ind::company_opinion_score({{1.0, 16, 4}, {-1.0, 81, 9}}, true), -0.2);
}

TEST(Opinion, ScorePostNeedsLexiconForText) {
  ind::RawPost p;
  p.company = "C1";
  p.text = "good news";
  EXPECT_FDP_ERROR(ind::score_post(p, nullptr), fdp::ErrorKind::kIndicator);
  p.text = "1.5";
  EXPECT_FDP_ERROR(ind::score_post(p, nullptr), fdp::ErrorKind::kDomain);
}
