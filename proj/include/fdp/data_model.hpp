#ifndef FDP_DATA_MODEL_HPP_
#define FDP_DATA_MODEL_HPP_

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fdp/error.hpp"
#include "fdp/matrix.hpp"
#include "fdp/text.hpp"

namespace fdp {

// ---------------------------------------------------------------------------
// Indicator catalog
// ---------------------------------------------------------------------------

enum class Category {
  kSolvency,
  kDevelopment,
  kStructuralRatio,
  kProfitability,
  kOperating,
  kExpansion,
  kGovernance,
  kAudit,
  kEarningsMgmt,
  kMacroeconomic,
  kPublicMarket,
  kOpinion,
};

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::kSolvency: return "solvency";
    case Category::kDevelopment: return "development";
    case Category::kStructuralRatio: return "structural_ratio";
    case Category::kProfitability: return "profitability";
    case Category::kOperating: return "operating";
    case Category::kExpansion: return "expansion";
    case Category::kGovernance: return "governance";
    case Category::kAudit: return "audit";
    case Category::kEarningsMgmt: return "earnings_mgmt";
    case Category::kMacroeconomic: return "macroeconomic";
    case Category::kPublicMarket: return "public_market";
    case Category::kOpinion: return "opinion";
  }
  return "unknown";
}

/// Traditional financial-statement ratios (F1-F28).
inline bool is_financial(Category c) {
  switch (c) {
    case Category::kSolvency:
    case Category::kDevelopment:
    case Category::kStructuralRatio:
    case Category::kProfitability:
    case Category::kOperating:
    case Category::kExpansion:
      return true;
    default:
      return false;
  }
}

struct CatalogEntry {
  std::string code;
  Category category;
  std::string description;
};

class FeatureCatalog {
 public:
  FeatureCatalog() = default;

  explicit FeatureCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!index_.emplace(entries_[i].code, i).second) {
        fail(ErrorKind::kUniqueness, "duplicate catalog code '" + entries_[i].code + "'");
      }
    }
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

  bool contains(std::string_view code) const {
    return index_.find(std::string(code)) != index_.end();
  }

  const CatalogEntry* find(std::string_view code) const {
    auto it = index_.find(std::string(code));
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  std::vector<std::string> codes() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.code);
    return out;
  }

 private:
  std::vector<CatalogEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// The 43-indicator multi-source system: 28 financial ratios, governance,
/// audit opinion, accrual earnings management, 9 macro series, 2 market
/// series and the shareholder-opinion score.
inline const FeatureCatalog& default_catalog() {
  static const FeatureCatalog catalog([] {
    using C = Category;
    return std::vector<CatalogEntry>{
        {"F1", C::kSolvency, "Current ratio"},
        {"F2", C::kSolvency, "Quick ratio"},
        {"F3", C::kSolvency, "Cash ratio"},
        {"F4", C::kSolvency, "Operating cash flow / current liabilities"},
        {"F5", C::kSolvency, "Gearing ratio"},
        {"F6", C::kSolvency, "Interest coverage multiple"},
        {"F7", C::kDevelopment, "Total assets growth rate"},
        {"F8", C::kDevelopment, "Net profit growth rate"},
        {"F9", C::kDevelopment, "Operating income growth rate"},
        {"F10", C::kStructuralRatio, "Current asset ratio"},
        {"F11", C::kStructuralRatio, "Fixed asset ratio"},
        {"F12", C::kStructuralRatio, "Shareholders' equity / fixed assets"},
        {"F13", C::kStructuralRatio, "Current liability ratio"},
        {"F14", C::kProfitability, "Net profit margin of total assets"},
        {"F15", C::kProfitability, "Net profit margin of current assets"},
        {"F16", C::kProfitability, "Net profit rate of fixed assets"},
        {"F17", C::kProfitability, "Operating cost ratio"},
        {"F18", C::kProfitability, "Operating profit margin"},
        {"F19", C::kProfitability, "Return on net assets"},
        {"F20", C::kOperating, "Turnover ratio of accounts payable"},
        {"F21", C::kOperating, "Turnover ratio of receivables"},
        {"F22", C::kOperating, "Turnover ratio of inventories"},
        {"F23", C::kOperating, "Turnover ratio of fixed assets"},
        {"F24", C::kOperating, "Turnover ratio of total assets"},
        {"F25", C::kExpansion, "Earnings per share"},
        {"F26", C::kExpansion, "Net assets per share"},
        {"F27", C::kExpansion, "Capital surplus per share"},
        {"F28", C::kExpansion, "Net cash flow per share"},
        {"GVN", C::kGovernance, "Independent directors / board size"},
        {"Audittyp", C::kAudit, "Audit opinion (0 standard unqualified, 1 other)"},
        {"DAP", C::kEarningsMgmt, "Accrual earnings management"},
        {"E1", C::kMacroeconomic, "Growth rate of total retail sales of consumer goods"},
        {"E2", C::kMacroeconomic, "GDP growth rate"},
        {"E3", C::kMacroeconomic, "M1 growth rate"},
        {"E4", C::kMacroeconomic, "M2 growth rate"},
        {"E5", C::kMacroeconomic, "CPI growth rate"},
        {"E6", C::kMacroeconomic, "RPI growth rate"},
        {"E7", C::kMacroeconomic, "Unemployment rate"},
        {"E8", C::kMacroeconomic, "Growth rate of total import and export"},
        {"E9", C::kMacroeconomic, "Exchange rate"},
        {"M1", C::kPublicMarket, "Total market capitalization"},
        {"M2", C::kPublicMarket, "A-shares / total share capital"},
        {"emotion", C::kOpinion, "Influence-weighted shareholder opinion score"},
    };
  }());
  return catalog;
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

enum class Horizon { kT1, kT2, kT3 };

inline std::string_view to_string(Horizon h) {
  switch (h) {
    case Horizon::kT1: return "T-1";
    case Horizon::kT2: return "T-2";
    case Horizon::kT3: return "T-3";
  }
  return "T-?";
}

inline Horizon parse_horizon(std::string_view s) {
  const std::string t = text::trim(s);
  if (t == "T-1") return Horizon::kT1;
  if (t == "T-2") return Horizon::kT2;
  if (t == "T-3") return Horizon::kT3;
  fail(ErrorKind::kConfig, "unknown horizon '" + t + "' (expected T-1, T-2 or T-3)");
}

using Cell = std::optional<double>;

/// K samples by n features, optional cells, labels in {+1, -1}. Immutable
/// after construction; every transformation returns a new Dataset.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::vector<std::string> feature_names, std::vector<Cell> values, Labels labels,
          std::vector<std::string> sample_ids, Horizon horizon = Horizon::kT1)
      : names_(std::move(feature_names)),
        values_(std::move(values)),
        labels_(std::move(labels)),
        ids_(std::move(sample_ids)),
        horizon_(horizon) {
    if (values_.size() != labels_.size() * names_.size()) {
      fail(ErrorKind::kShape, "value count " + std::to_string(values_.size()) +
                                  " does not match " + std::to_string(labels_.size()) + " x " +
                                  std::to_string(names_.size()));
    }
    if (ids_.size() != labels_.size()) {
      fail(ErrorKind::kShape, "sample id count does not match label count");
    }
    for (int y : labels_) {
      if (y != 1 && y != -1) fail(ErrorKind::kLabel, "label must be +1 or -1");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_) {
      if (!seen.insert(id).second) fail(ErrorKind::kUniqueness, "duplicate sample id '" + id + "'");
    }
    std::unordered_set<std::string> seen_names;
    for (const auto& n : names_) {
      if (!seen_names.insert(n).second) fail(ErrorKind::kUniqueness, "duplicate feature '" + n + "'");
    }
  }

  /// Fully observed dataset from a dense matrix.
  static Dataset from_matrix(std::vector<std::string> feature_names, const Matrix& x, Labels labels,
                             std::vector<std::string> sample_ids = {},
                             Horizon horizon = Horizon::kT1) {
    if (x.cols() != feature_names.size()) fail(ErrorKind::kShape, "column/name count mismatch");
    if (sample_ids.empty()) {
      for (std::size_t k = 0; k < x.rows(); ++k) sample_ids.push_back("S" + std::to_string(k + 1));
    }
    std::vector<Cell> cells(x.data().begin(), x.data().end());
    return Dataset(std::move(feature_names), std::move(cells), std::move(labels),
                   std::move(sample_ids), horizon);
  }

  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t cols() const noexcept { return names_.size(); }

  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const Labels& labels() const noexcept { return labels_; }
  const std::vector<std::string>& sample_ids() const noexcept { return ids_; }
  const std::vector<Cell>& cells() const noexcept { return values_; }
  Horizon horizon() const noexcept { return horizon_; }

  const Cell& value(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  std::optional<std::size_t> feature_index(std::string_view name) const {
    for (std::size_t j = 0; j < names_.size(); ++j) {
      if (names_[j] == name) return j;
    }
    return std::nullopt;
  }

  bool has_missing() const {
    return std::any_of(values_.begin(), values_.end(), [](const Cell& c) { return !c.has_value(); });
  }

  std::size_t missing_count(std::size_t c) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows(); ++r) n += value(r, c).has_value() ? 0 : 1;
    return n;
  }

  std::size_t positives() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
  }
  std::size_t negatives() const { return rows() - positives(); }

  /// Dense view; the dataset must be fully observed.
  Matrix dense() const {
    Matrix m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols(); ++c) {
        const Cell& v = value(r, c);
        if (!v) {
          fail(ErrorKind::kArgument, "missing value at sample '" + ids_[r] + "', feature '" +
                                         names_[c] + "'; run screen_missing first");
        }
        m(r, c) = *v;
      }
    }
    return m;
  }

  Dataset select_features(std::span<const std::size_t> cols) const {
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (std::size_t c : cols) names.push_back(names_.at(c));
    std::vector<Cell> vals;
    vals.reserve(rows() * cols.size());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c : cols) vals.push_back(value(r, c));
    }
    return Dataset(std::move(names), std::move(vals), labels_, ids_, horizon_);
  }

  Dataset select_features(const std::vector<std::string>& names) const {
    std::vector<std::size_t> cols;
    cols.reserve(names.size());
    for (const auto& n : names) {
      auto idx = feature_index(n);
      if (!idx) fail(ErrorKind::kArgument, "feature '" + n + "' not in dataset");
      cols.push_back(*idx);
    }
    return select_features(std::span<const std::size_t>(cols));
  }

  Dataset select_rows(std::span<const std::size_t> rows) const {
    std::vector<Cell> vals;
    vals.reserve(rows.size() * cols());
    Labels labels;
    std::vector<std::string> ids;
    for (std::size_t r : rows) {
      for (std::size_t c = 0; c < cols(); ++c) vals.push_back(value(r, c));
      labels.push_back(labels_.at(r));
      ids.push_back(ids_.at(r));
    }
    return Dataset(names_, std::move(vals), std::move(labels), std::move(ids), horizon_);
  }

  Dataset with_cells(std::vector<Cell> cells) const {
    return Dataset(names_, std::move(cells), labels_, ids_, horizon_);
  }

  Dataset with_horizon(Horizon h) const {
    return Dataset(names_, values_, labels_, ids_, h);
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Cell> values_;
  Labels labels_;
  std::vector<std::string> ids_;
  Horizon horizon_ = Horizon::kT1;
};

// ---------------------------------------------------------------------------
// Delimited-text ingestion
// ---------------------------------------------------------------------------

struct Schema {
  std::string id_column = "id";
  std::string label_column = "label";
  Horizon horizon = Horizon::kT1;
  char delimiter = ',';
  /// Cell values read as missing. The empty string is always missing.
  std::vector<std::string> missing_tokens = {""};
  std::vector<std::string> positive_labels = {"ST", "+1", "1"};
  std::vector<std::string> negative_labels = {"non-ST", "-1", "0"};
};

inline bool is_missing_token(const Schema& schema, const std::string& field) {
  if (field.empty()) return true;
  return std::find(schema.missing_tokens.begin(), schema.missing_tokens.end(), field) !=
         schema.missing_tokens.end();
}

inline Dataset parse_dataset(std::istream& in, const Schema& schema,
                             const std::string& source = "<input>") {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    header = text::split_fields(line, schema.delimiter);
    break;
  }
  if (header.empty()) fail(ErrorKind::kParse, source + ": missing header row");

  std::optional<std::size_t> id_col;
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == schema.id_column) {
      id_col = j;
    } else if (header[j] == schema.label_column) {
      label_col = j;
    } else {
      feature_cols.push_back(j);
      names.push_back(header[j]);
    }
  }
  if (!id_col) fail(ErrorKind::kParse, source + ": id column '" + schema.id_column + "' not found");
  if (!label_col) {
    fail(ErrorKind::kParse, source + ": label column '" + schema.label_column + "' not found");
  }

  std::vector<Cell> cells;
  Labels labels;
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto fields = text::split_fields(line, schema.delimiter);
    const std::string where = source + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) {
      fail(ErrorKind::kParse, where + ": expected " + std::to_string(header.size()) +
                                  " fields, found " + std::to_string(fields.size()));
    }
    const std::string& id = fields[*id_col];
    if (!seen.insert(id).second) {
      fail(ErrorKind::kUniqueness, where + ": duplicate sample id '" + id + "'");
    }
    const std::string& tok = fields[*label_col];
    auto in_vocab = [&tok](const std::vector<std::string>& v) {
      return std::find(v.begin(), v.end(), tok) != v.end();
    };
    if (in_vocab(schema.positive_labels)) {
      labels.push_back(1);
    } else if (in_vocab(schema.negative_labels)) {
      labels.push_back(-1);
    } else {
      fail(ErrorKind::kLabel, where + ": unknown label token '" + tok + "'");
    }
    ids.push_back(id);
    for (std::size_t j : feature_cols) {
      if (is_missing_token(schema, fields[j])) {
        cells.emplace_back(std::nullopt);
        continue;
      }
      auto v = text::parse_double(fields[j]);
      if (!v) {
        fail(ErrorKind::kParse, where + ": non-numeric value '" + fields[j] + "' in column '" +
                                    header[j] + "'");
      }
      cells.emplace_back(*v);
    }
  }
  return Dataset(std::move(names), std::move(cells), std::move(labels), std::move(ids),
                 schema.horizon);
}

inline Dataset load_dataset(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path + "'");
  return parse_dataset(in, schema, path);
}

/// Inverse of parse_dataset: present values are written in shortest
/// round-trip form, missing cells with the first missing token.
inline void write_dataset(std::ostream& out, const Dataset& d, const Schema& schema) {
  const std::string missing = schema.missing_tokens.empty() ? "" : schema.missing_tokens.front();
  const std::string pos = schema.positive_labels.empty() ? "1" : schema.positive_labels.front();
  const std::string neg = schema.negative_labels.empty() ? "-1" : schema.negative_labels.front();
  const char delim = schema.delimiter;
  out << text::quote_if_needed(schema.id_column, delim) << delim
      << text::quote_if_needed(schema.label_column, delim);
  for (const auto& n : d.feature_names()) out << delim << text::quote_if_needed(n, delim);
  out << '\n';
  for (std::size_t r = 0; r < d.rows(); ++r) {
    out << text::quote_if_needed(d.sample_ids()[r], delim) << delim
        << (d.labels()[r] == 1 ? pos : neg);
    for (std::size_t c = 0; c < d.cols(); ++c) {
      out << delim;
      const Cell& v = d.value(r, c);
      out << (v ? text::format_double(*v) : missing);
    }
    out << '\n';
  }
}

inline void save_dataset(const std::string& path, const Dataset& d, const Schema& schema) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  write_dataset(out, d, schema);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
  std::vector<std::string> uncataloged;
  std::vector<std::pair<std::string, double>> missing_fraction;
  std::size_t positives = 0;
  std::size_t negatives = 0;

  bool clean() const { return uncataloged.empty(); }
};

inline ValidationReport validate_dataset(const Dataset& d, const FeatureCatalog& catalog) {
  ValidationReport report;
  for (std::size_t c = 0; c < d.cols(); ++c) {
    const auto& name = d.feature_names()[c];
    if (!catalog.contains(name)) report.uncataloged.push_back(name);
    const double frac =
        d.rows() == 0 ? 0.0 : static_cast<double>(d.missing_count(c)) / static_cast<double>(d.rows());
    report.missing_fraction.emplace_back(name, frac);
  }
  report.positives = d.positives();
  report.negatives = d.negatives();
  return report;
}

}  // namespace fdp

#endif  // FDP_DATA_MODEL_HPP_
