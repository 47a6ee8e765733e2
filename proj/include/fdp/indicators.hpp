#ifndef FDP_INDICATORS_HPP_
#define FDP_INDICATORS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "fdp/error.hpp"
#include "fdp/text.hpp"

namespace fdp::indicators {

// ---------------------------------------------------------------------------
// Audit opinion
// ---------------------------------------------------------------------------

enum class AuditOpinion { kStandardUnqualified, kOther };

/// Maps an audit report string onto the two-valued opinion. Accepts
/// "standard unqualified" (any case, '_' or '-' as separators) for the clean
/// opinion and any recognisable modified opinion for the other; anything else
/// is rejected so that typos do not silently become "other".
inline AuditOpinion parse_audit_opinion(const std::string& source) {
  std::string s = text::to_lower(text::trim(source));
  for (char& ch : s) {
    if (ch == '_' || ch == '-') ch = ' ';
  }
  if (s == "standard unqualified" || s == "standard unqualified opinion" || s == "standard" ||
      s == "0") {
    return AuditOpinion::kStandardUnqualified;
  }
  static const char* const kModified[] = {"qualified", "adverse", "disclaimer", "emphasis",
                                          "unable",    "other",   "modified"};
  for (const char* word : kModified) {
    if (s.find(word) != std::string::npos) return AuditOpinion::kOther;
  }
  if (s == "1") return AuditOpinion::kOther;
  fail(ErrorKind::kIndicator, "unrecognized audit opinion '" + source + "'");
}

inline int encode_audit_opinion(AuditOpinion opinion) {
  return opinion == AuditOpinion::kStandardUnqualified ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Modified Jones model
// ---------------------------------------------------------------------------

struct JonesInputRow {
  double total_assets_prev = 0.0;     // A_{t-1}
  double operating_profit = 0.0;      // NI_t
  double operating_cash_flow = 0.0;   // OCF_t
  double delta_revenue = 0.0;         // dREV_t
  double delta_receivables = 0.0;     // dAR_t
  double fixed_assets_closing = 0.0;  // PPE_t
};

struct JonesCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

inline void check_row(const JonesInputRow& row) {
  if (!(row.total_assets_prev > 0.0) || !std::isfinite(row.total_assets_prev)) {
    fail(ErrorKind::kDomain, "total assets of the prior period must be positive");
  }
}

inline double total_accruals(const JonesInputRow& row) {
  return row.operating_profit - row.operating_cash_flow;
}

/// Regressors [1/A, dREV/A, PPE/A] of the accrual regression.
inline std::array<double, 3> jones_regressors(const JonesInputRow& row) {
  const double a = row.total_assets_prev;
  return {1.0 / a, row.delta_revenue / a, row.fixed_assets_closing / a};
}

/// Regression target TA/A.
inline double jones_target(const JonesInputRow& row) {
  return total_accruals(row) / row.total_assets_prev;
}

inline constexpr std::size_t kJonesDefaultMinRows = 10;
inline constexpr double kJonesConditionLimit = 1e10;

/// No-intercept OLS of TA/A on the three scaled regressors, solved with a
/// column-pivoted Householder QR. Columns are equilibrated to unit norm before
/// the rank check so that the 1/A column's tiny magnitude is not mistaken for
/// collinearity.
inline JonesCoefficients fit_jones(const std::vector<JonesInputRow>& rows,
                                   std::size_t min_rows = kJonesDefaultMinRows) {
  if (rows.size() < min_rows) {
    fail(ErrorKind::kSampleSize, "accrual regression needs at least " + std::to_string(min_rows) +
                                     " rows, got " + std::to_string(rows.size()));
  }
  if (rows.size() < 3) fail(ErrorKind::kSampleSize, "accrual regression needs at least 3 rows");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), 3);
  Eigen::VectorXd t(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    check_row(rows[k]);
    const auto reg = jones_regressors(rows[k]);
    const auto i = static_cast<Eigen::Index>(k);
    x(i, 0) = reg[0];
    x(i, 1) = reg[1];
    x(i, 2) = reg[2];
    t(i) = jones_target(rows[k]);
  }
  if (!x.allFinite() || !t.allFinite()) fail(ErrorKind::kDomain, "non-finite accounting input");

  Eigen::Vector3d scale;
  for (Eigen::Index c = 0; c < 3; ++c) {
    scale(c) = x.col(c).norm();
    if (scale(c) == 0.0) fail(ErrorKind::kCollinearity, "regressor column is identically zero");
    x.col(c) /= scale(c);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(3, 3).template triangularView<Eigen::Upper>();
  const double largest = std::abs(r(0, 0));
  const double smallest = std::abs(r(2, 2));
  if (smallest == 0.0 || largest / smallest > kJonesConditionLimit) {
    fail(ErrorKind::kCollinearity, "accrual regression design matrix is rank deficient");
  }
  const Eigen::Vector3d beta = qr.solve(t).cwiseQuotient(scale);
  if (!beta.allFinite()) fail(ErrorKind::kCollinearity, "non-finite regression coefficients");
  return {beta(0), beta(1), beta(2)};
}

/// NDA_t, the accrual level explained by the firm's operating conditions.
inline double non_manipulable_accruals(const JonesCoefficients& c, const JonesInputRow& row) {
  check_row(row);
  const double a = row.total_assets_prev;
  return c.a1 / a + c.a2 * (row.delta_revenue - row.delta_receivables) / a +
         c.a3 * row.fixed_assets_closing / a;
}

/// DAP_t = TA_t / A_{t-1} - NDA_t.
inline double accrual_earnings_management(const JonesInputRow& row, const JonesCoefficients& c) {
  check_row(row);
  return total_accruals(row) / row.total_assets_prev - non_manipulable_accruals(c, row);
}

// ---------------------------------------------------------------------------
// Shareholder opinion
// ---------------------------------------------------------------------------

struct OpinionPost {
  double sentiment = 0.0;
  double looks = 0.0;
  double comments = 0.0;
};

inline double post_influence(double looks, double comments) {
  if (!(looks >= 0.0) || !(comments >= 0.0)) {
    fail(ErrorKind::kDomain, "read and comment counts must be nonnegative");
  }
  return std::pow(looks, 0.25) + std::sqrt(comments);
}

using Lexicon = std::unordered_map<std::string, int>;

/// Mean polarity of the tokens found in the lexicon; 0 when none match.
inline double lexicon_sentiment(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  long sum = 0;
  long matched = 0;
  for (const auto& tok : tokens) {
    auto it = lexicon.find(tok);
    if (it == lexicon.end()) continue;
    sum += it->second;
    ++matched;
  }
  return matched == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(matched);
}

/// Influence-weighted sum of post sentiment. With `normalize`, divides by the
/// total influence (0 when that total is 0).
inline double company_opinion_score(const std::vector<OpinionPost>& posts, bool normalize = false) {
  double score = 0.0;
  double total_influence = 0.0;
  for (const auto& p : posts) {
    const double w = post_influence(p.looks, p.comments);
    score += p.sentiment * w;
    total_influence += w;
  }
  if (normalize) return total_influence > 0.0 ? score / total_influence : 0.0;
  return score;
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// One "token polarity" pair per line (whitespace or the delimiter between
/// them); '#' starts a comment. Polarity must be +1 or -1.
inline Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open lexicon '" + path + "'");
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == '\t') ch = ' ';
    }
    auto parts = text::split_whitespace(line);
    if (parts.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    if (parts.size() != 2) fail(ErrorKind::kParse, where + ": expected 'token polarity'");
    auto pol = text::parse_int(parts[1]);
    if (!pol || (*pol != 1 && *pol != -1)) {
      fail(ErrorKind::kParse, where + ": polarity must be +1 or -1");
    }
    lex[parts[0]] = static_cast<int>(*pol);
  }
  if (lex.empty()) fail(ErrorKind::kParse, "lexicon '" + path + "' is empty");
  return lex;
}

struct RawPost {
  std::string company;
  std::string text;  // numeric sentiment score or whitespace-separated tokens
  double looks = 0.0;
  double comments = 0.0;
};

/// Posts file: header row, then (company id, sentiment-or-tokens, looks,
/// comments) per line.
inline std::vector<RawPost> load_posts(const std::string& path, char delim = ',') {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open posts file '" + path + "'");
  std::vector<RawPost> posts;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto f = text::split_fields(line, delim);
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != 4) fail(ErrorKind::kParse, where + ": expected 4 fields");
    auto looks = text::parse_double(f[2]);
    auto comments = text::parse_double(f[3]);
    if (!looks || !comments || *looks < 0 || *comments < 0 || std::floor(*looks) != *looks ||
        std::floor(*comments) != *comments) {
      fail(ErrorKind::kParse, where + ": looks and comments must be nonnegative integers");
    }
    posts.push_back({f[0], f[1], *looks, *comments});
  }
  return posts;
}

/// Numeric text is taken as a pre-computed score; otherwise the text is
/// tokenised on whitespace and scored with the lexicon, which is then required.
inline OpinionPost score_post(const RawPost& raw, const Lexicon* lexicon) {
  OpinionPost post{0.0, raw.looks, raw.comments};
  if (auto v = text::parse_double(raw.text)) {
    if (*v < -1.0 || *v > 1.0) {
      fail(ErrorKind::kDomain, "sentiment score " + raw.text + " outside [-1, 1]");
    }
    post.sentiment = *v;
  } else {
    if (lexicon == nullptr) {
      fail(ErrorKind::kIndicator,
           "post for '" + raw.company + "' carries text but no lexicon was configured");
    }
    post.sentiment = lexicon_sentiment(text::split_whitespace(raw.text), *lexicon);
  }
  return post;
}

inline std::map<std::string, std::vector<OpinionPost>> group_posts(const std::vector<RawPost>& raw,
                                                                   const Lexicon* lexicon) {
  std::map<std::string, std::vector<OpinionPost>> out;
  for (const auto& r : raw) out[r.company].push_back(score_post(r, lexicon));
  return out;
}

/// Per-company accounting inputs. A row whose accounting fields are
/// incomplete has `jones == std::nullopt`.
struct AccountingRecord {
  std::string company;
  std::optional<JonesInputRow> jones;
  std::optional<std::string> audit_opinion;
};

/// Accounting file columns (header names, any order): id,
/// total_assets_prev, operating_profit, operating_cash_flow, delta_revenue,
/// delta_receivables, fixed_assets_closing, and optionally audit_opinion.
inline std::vector<AccountingRecord> load_accounting(const std::string& path, char delim,
                                                     const std::string& id_column,
                                                     const std::vector<std::string>& missing) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open accounting file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::vector<AccountingRecord> out;
  static const char* const kFields[] = {"total_assets_prev", "operating_profit",
                                        "operating_cash_flow", "delta_revenue",
                                        "delta_receivables", "fixed_assets_closing"};
  std::array<std::size_t, 6> cols{};
  std::optional<std::size_t> id_col;
  std::optional<std::size_t> audit_col;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto f = text::split_fields(line, delim);
    if (header.empty()) {
      header = f;
      for (std::size_t i = 0; i < 6; ++i) {
        auto it = std::find(header.begin(), header.end(), kFields[i]);
        if (it == header.end()) {
          fail(ErrorKind::kParse, path + ": missing column '" + kFields[i] + "'");
        }
        cols[i] = static_cast<std::size_t>(it - header.begin());
      }
      auto it = std::find(header.begin(), header.end(), id_column);
      if (it == header.end()) fail(ErrorKind::kParse, path + ": missing id column '" + id_column + "'");
      id_col = static_cast<std::size_t>(it - header.begin());
      it = std::find(header.begin(), header.end(), "audit_opinion");
      if (it != header.end()) audit_col = static_cast<std::size_t>(it - header.begin());
      continue;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != header.size()) fail(ErrorKind::kParse, where + ": wrong field count");
    AccountingRecord rec;
    rec.company = f[*id_col];
    std::array<std::optional<double>, 6> v;
    bool complete = true;
    for (std::size_t i = 0; i < 6; ++i) {
      const std::string& field = f[cols[i]];
      const bool is_missing =
          field.empty() || std::find(missing.begin(), missing.end(), field) != missing.end();
      if (is_missing) {
        complete = false;
        continue;
      }
      v[i] = text::parse_double(field);
      if (!v[i]) fail(ErrorKind::kParse, where + ": non-numeric '" + field + "'");
    }
    if (complete) {
      rec.jones = JonesInputRow{*v[0], *v[1], *v[2], *v[3], *v[4], *v[5]};
    }
    if (audit_col) {
      const std::string& a = f[*audit_col];
      if (!a.empty() && std::find(missing.begin(), missing.end(), a) == missing.end()) {
        rec.audit_opinion = a;
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace fdp::indicators

#endif  // FDP_INDICATORS_HPP_
