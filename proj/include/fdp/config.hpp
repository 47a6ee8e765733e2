#ifndef FDP_CONFIG_HPP_
#define FDP_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/models/spec.hpp"
#include "fdp/preprocess.hpp"
#include "fdp/selection/mrmr.hpp"
#include "fdp/selection/mutual_information.hpp"
#include "fdp/selection/sweep.hpp"
#include "fdp/text.hpp"

namespace fdp {

enum class SentimentScoring { kPrescored, kLexicon };
enum class DapMode { kSigned, kAbsolute };

struct HorizonInputs {
  std::string table;       // raw indicator table
  std::string accounting;  // Jones inputs and audit opinions
  std::string posts;       // opinion posts
  std::string data;        // augmented table read by `run`; defaults to the indicators output
};

/// Everything a run depends on. Paths are stored resolved against the
/// directory of the config file.
struct RunConfig {
  std::string source;
  std::string output_dir = "out";
  std::vector<Horizon> horizons = {Horizon::kT1};
  std::map<Horizon, HorizonInputs> inputs;
  Schema schema;

  std::string lexicon;
  SentimentScoring sentiment = SentimentScoring::kPrescored;
  bool opinion_normalize = false;
  DapMode dap_mode = DapMode::kSigned;
  std::size_t jones_min_rows = 10;

  double missing_threshold = preprocess::kDefaultMissingThreshold;
  preprocess::Imputation imputation = preprocess::Imputation::kMean;
  double train_fraction = preprocess::kDefaultTrainFraction;

  std::size_t bins = selection::kDefaultBins;
  double svm_c = 1.0;
  std::vector<double> betas = selection::default_betas();
  std::size_t top_k = selection::kDefaultTopK;
  double epsilon = selection::kRedundancyFloor;
  std::string tie_break = "catalog";

  std::vector<models::ClassifierSpec> models = {
      models::ClassifierSpec(models::ClassifierKind::kLR),
      models::ClassifierSpec(models::ClassifierKind::kSVM),
      models::ClassifierSpec(models::ClassifierKind::kBP),
      models::ClassifierSpec(models::ClassifierKind::kDT)};
  std::size_t repetitions = 10;
  std::uint64_t base_seed = 0;

  models::ClassifierKind comparison_model = models::ClassifierKind::kBP;
  std::optional<double> comparison_beta;  // nullopt: the best beta of the sweep

  std::string data_path(Horizon h) const {
    auto it = inputs.find(h);
    if (it != inputs.end() && !it->second.data.empty()) return it->second.data;
    return augmented_path(h);
  }

  std::string augmented_path(Horizon h) const {
    return (std::filesystem::path(output_dir) / ("augmented_" + horizon_slug(h) + ".csv")).string();
  }

  static std::string horizon_slug(Horizon h) {
    std::string s(to_string(h));
    std::erase(s, '-');
    return s;
  }

  const models::ClassifierSpec* find_model(models::ClassifierKind k) const {
    for (const auto& m : models) {
      if (m.kind() == k) return &m;
    }
    return nullptr;
  }
};

namespace detail {

inline bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = text::to_lower(v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(ErrorKind::kConfig, key + ": expected true or false, got '" + v + "'");
}

inline double parse_real(const std::string& key, const std::string& v) {
  auto d = text::parse_double(v);
  if (!d) fail(ErrorKind::kConfig, key + ": expected a number, got '" + v + "'");
  return *d;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  auto n = text::parse_int(v);
  if (!n || *n < 0) fail(ErrorKind::kConfig, key + ": expected a nonnegative integer, got '" + v + "'");
  return static_cast<std::size_t>(*n);
}

inline std::string resolve_path(const std::filesystem::path& base, const std::string& v) {
  if (v.empty()) return v;
  std::filesystem::path p(v);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal().string();
}

inline std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace detail

/// key = value lines; '#' starts a comment. Unknown keys and malformed
/// values are config errors; range checks are left to validate_config.
inline RunConfig parse_config(std::istream& in, const std::string& source,
                              const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.source = source;
  std::map<std::string, std::map<std::string, double>> model_overrides;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = text::trim(line);
    if (t.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(ErrorKind::kConfig, where + ": expected 'key = value'");
    const std::string key = text::trim(t.substr(0, eq));
    const std::string value = detail::strip_quotes(text::trim(t.substr(eq + 1)));
    if (!seen.insert(key).second) fail(ErrorKind::kConfig, where + ": duplicate key '" + key + "'");
    try {
      auto dot = key.find('.');
      const std::string head = key.substr(0, dot);
      const std::string tail = dot == std::string::npos ? "" : key.substr(dot + 1);
      if (key == "output_dir") {
        cfg.output_dir = detail::resolve_path(base_dir, value);
      } else if (key == "horizons") {
        cfg.horizons.clear();
        for (const auto& h : text::split_list(value)) cfg.horizons.push_back(parse_horizon(h));
        if (cfg.horizons.empty()) fail(ErrorKind::kConfig, "horizons is empty");
      } else if (key == "delimiter") {
        if (value == "tab" || value == "\\t") {
          cfg.schema.delimiter = '\t';
        } else if (value.size() == 1) {
          cfg.schema.delimiter = value[0];
        } else {
          fail(ErrorKind::kConfig, "delimiter must be a single character or 'tab'");
        }
      } else if (key == "missing_tokens") {
        cfg.schema.missing_tokens = {""};
        for (const auto& tok : text::split_list(value)) {
          if (!tok.empty()) cfg.schema.missing_tokens.push_back(tok);
        }
      } else if (key == "id_column") {
        cfg.schema.id_column = value;
      } else if (key == "label_column") {
        cfg.schema.label_column = value;
      } else if (key == "positive_labels") {
        cfg.schema.positive_labels = text::split_list(value);
      } else if (key == "negative_labels") {
        cfg.schema.negative_labels = text::split_list(value);
      } else if (tail.size() > 0 &&
                 (head == "table" || head == "accounting" || head == "posts" || head == "data")) {
        auto& in_h = cfg.inputs[parse_horizon(tail)];
        const std::string p = detail::resolve_path(base_dir, value);
        if (head == "table") in_h.table = p;
        else if (head == "accounting") in_h.accounting = p;
        else if (head == "posts") in_h.posts = p;
        else in_h.data = p;
      } else if (key == "lexicon") {
        cfg.lexicon = detail::resolve_path(base_dir, value);
      } else if (key == "sentiment_scoring") {
        if (value == "prescored") cfg.sentiment = SentimentScoring::kPrescored;
        else if (value == "lexicon") cfg.sentiment = SentimentScoring::kLexicon;
        else fail(ErrorKind::kConfig, "sentiment_scoring must be prescored or lexicon");
      } else if (key == "opinion_normalize") {
        cfg.opinion_normalize = detail::parse_bool(key, value);
      } else if (key == "dap_mode") {
        if (value == "signed") cfg.dap_mode = DapMode::kSigned;
        else if (value == "absolute") cfg.dap_mode = DapMode::kAbsolute;
        else fail(ErrorKind::kConfig, "dap_mode must be signed or absolute");
      } else if (key == "jones_min_rows") {
        cfg.jones_min_rows = detail::parse_count(key, value);
      } else if (key == "missing_threshold") {
        cfg.missing_threshold = detail::parse_real(key, value);
      } else if (key == "imputation") {
        if (value == "mean") cfg.imputation = preprocess::Imputation::kMean;
        else if (value == "median") cfg.imputation = preprocess::Imputation::kMedian;
        else fail(ErrorKind::kConfig, "imputation must be mean or median");
      } else if (key == "train_fraction") {
        cfg.train_fraction = detail::parse_real(key, value);
      } else if (key == "bins") {
        cfg.bins = detail::parse_count(key, value);
      } else if (key == "svm_c") {
        cfg.svm_c = detail::parse_real(key, value);
      } else if (key == "betas") {
        cfg.betas.clear();
        for (const auto& b : text::split_list(value)) cfg.betas.push_back(detail::parse_real(key, b));
      } else if (key == "top_k") {
        cfg.top_k = detail::parse_count(key, value);
      } else if (key == "epsilon") {
        cfg.epsilon = detail::parse_real(key, value);
      } else if (key == "tie_break") {
        cfg.tie_break = value;
      } else if (key == "models") {
        cfg.models.clear();
        for (const auto& m : text::split_list(value)) {
          cfg.models.emplace_back(models::parse_kind(m));
        }
      } else if (head == "model" && !tail.empty()) {
        const auto dot2 = tail.find('.');
        if (dot2 == std::string::npos) fail(ErrorKind::kConfig, "expected model.<KIND>.<key>");
        model_overrides[tail.substr(0, dot2)][tail.substr(dot2 + 1)] = detail::parse_real(key, value);
      } else if (key == "repetitions") {
        cfg.repetitions = detail::parse_count(key, value);
      } else if (key == "base_seed") {
        cfg.base_seed = detail::parse_count(key, value);
      } else if (key == "comparison.model") {
        cfg.comparison_model = models::parse_kind(value);
      } else if (key == "comparison.beta") {
        if (value == "best") cfg.comparison_beta.reset();
        else cfg.comparison_beta = detail::parse_real(key, value);
      } else {
        fail(ErrorKind::kConfig, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      fail(ErrorKind::kConfig, where + ": " + e.what());
    }
  }
  for (const auto& [kind_name, values] : model_overrides) {
    const auto kind = models::parse_kind(kind_name);
    models::ClassifierSpec* spec = nullptr;
    for (auto& m : cfg.models) {
      if (m.kind() == kind) spec = &m;
    }
    if (spec == nullptr) {
      fail(ErrorKind::kConfig, source + ": model." + kind_name + " set but " + kind_name +
                                   " is not listed in models");
    }
    for (const auto& [k, v] : values) {
      try {
        spec->set(k, v);
      } catch (const Error& e) {
        fail(ErrorKind::kConfig, source + ": " + e.what());
      }
    }
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot open config '" + path + "'");
  const auto base = std::filesystem::absolute(path).parent_path();
  return parse_config(in, path, base);
}

struct Finding {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string message;
};

struct ConfigReport {
  std::vector<Finding> findings;

  bool ok() const {
    for (const auto& f : findings) {
      if (f.severity == Finding::Severity::kError) return false;
    }
    return true;
  }
};

enum class Stage { kIndicators, kRun };

/// Range and file checks; never touches the pipeline. `stage` decides which
/// inputs must exist: the raw sources for `indicators`, the augmented tables
/// for `run`.
inline ConfigReport validate_config(const RunConfig& cfg, Stage stage) {
  ConfigReport report;
  auto error = [&report](std::string m) {
    report.findings.push_back({Finding::Severity::kError, std::move(m)});
  };
  auto warn = [&report](std::string m) {
    report.findings.push_back({Finding::Severity::kWarning, std::move(m)});
  };
  auto need = [&error](const std::string& key, const std::string& path) {
    if (path.empty()) {
      error(key + " is not set");
    } else if (!std::filesystem::is_regular_file(path)) {
      error(key + ": file not found: " + path);
    }
  };

  if (!(cfg.missing_threshold >= 0.0 && cfg.missing_threshold <= 1.0)) {
    error("missing_threshold must lie in [0, 1]");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    error("train_fraction must lie strictly between 0 and 1");
  }
  if (cfg.bins < 2) error("bins must be at least 2");
  if (!(cfg.svm_c > 0.0)) error("svm_c must be positive");
  if (cfg.betas.empty()) error("betas is empty");
  for (double b : cfg.betas) {
    if (!(b >= 0.0 && b <= 1.0)) error("beta " + text::format_double(b) + " outside [0, 1]");
  }
  if (cfg.comparison_beta && !(*cfg.comparison_beta >= 0.0 && *cfg.comparison_beta <= 1.0)) {
    error("comparison.beta outside [0, 1]");
  }
  if (cfg.top_k < 1) error("top_k must be at least 1");
  if (!(cfg.epsilon > 0.0)) error("epsilon must be positive");
  if (cfg.tie_break != "catalog") error("tie_break supports only 'catalog'");
  if (cfg.repetitions < 1) error("repetitions must be at least 1");
  if (cfg.jones_min_rows < 3) error("jones_min_rows must be at least 3");
  if (cfg.models.empty()) error("models is empty");
  if (cfg.find_model(cfg.comparison_model) == nullptr) {
    error("comparison.model " + std::string(models::to_string(cfg.comparison_model)) +
          " is not listed in models");
  }
  for (std::size_t i = 0; i < cfg.models.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.models.size(); ++j) {
      if (cfg.models[i].kind() == cfg.models[j].kind()) {
        error("model " + std::string(models::to_string(cfg.models[i].kind())) + " listed twice");
      }
    }
  }
  for (const auto& tok : cfg.schema.positive_labels) {
    for (const auto& neg : cfg.schema.negative_labels) {
      if (tok == neg) error("label token '" + tok + "' is both positive and negative");
    }
  }
  if (cfg.schema.positive_labels.empty() || cfg.schema.negative_labels.empty()) {
    error("label vocabularies must be nonempty");
  }
  if (cfg.schema.id_column == cfg.schema.label_column) error("id_column equals label_column");

  for (Horizon h : cfg.horizons) {
    const std::string slug(to_string(h));
    auto it = cfg.inputs.find(h);
    const HorizonInputs in = it == cfg.inputs.end() ? HorizonInputs{} : it->second;
    if (stage == Stage::kIndicators) {
      need("table." + slug, in.table);
      need("accounting." + slug, in.accounting);
      need("posts." + slug, in.posts);
    } else {
      need("data." + slug, cfg.data_path(h));
    }
  }
  if (stage == Stage::kIndicators && cfg.sentiment == SentimentScoring::kLexicon) {
    need("lexicon", cfg.lexicon);
  }

  // Screening the input tells how many features can reach selection. Before
  // `indicators` the raw table lacks the three derived columns.
  if (report.ok()) {
    const std::size_t derived = stage == Stage::kIndicators ? 3 : 0;
    for (Horizon h : cfg.horizons) {
      const std::string slug(to_string(h));
      const std::string key = (stage == Stage::kIndicators ? "table." : "data.") + slug;
      const std::string path =
          stage == Stage::kIndicators ? cfg.inputs.at(h).table : cfg.data_path(h);
      try {
        Schema schema = cfg.schema;
        schema.horizon = h;
        const Dataset d = load_dataset(path, schema);
        if (stage == Stage::kIndicators) {
          for (const char* col : {"Audittyp", "DAP", "emotion"}) {
            if (d.feature_index(col)) error(key + " already has the derived column '" + col + "'");
          }
        }
        const auto screened = preprocess::screen_missing(d, cfg.missing_threshold, cfg.imputation);
        const std::size_t survivors = screened.dataset.cols() + derived;
        if (cfg.top_k > survivors) {
          warn("top_k " + std::to_string(cfg.top_k) + " exceeds the " + std::to_string(survivors) +
               " features surviving screening on " + slug + "; it will be clamped");
        }
        if (d.positives() == 0 || d.negatives() == 0) error(key + " lacks one of the two classes");
        for (const auto& code : validate_dataset(d, default_catalog()).uncataloged) {
          warn("feature '" + code + "' on " + slug + " is not in the catalog");
        }
      } catch (const Error& e) {
        error(key + ": " + e.what());
      }
    }
  }
  return report;
}

/// The complete effective configuration, defaults expanded, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> effective_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&out](std::string k, std::string v) { out.emplace_back(std::move(k), std::move(v)); };
  auto reals = [](const std::vector<double>& v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(text::format_double(x));
    return text::join(s, ",");
  };
  add("output_dir", cfg.output_dir);
  std::vector<std::string> hs;
  for (Horizon h : cfg.horizons) hs.emplace_back(to_string(h));
  add("horizons", text::join(hs, ","));
  add("delimiter", cfg.schema.delimiter == '\t' ? "tab" : std::string(1, cfg.schema.delimiter));
  std::vector<std::string> missing;
  for (const auto& m : cfg.schema.missing_tokens) {
    if (!m.empty()) missing.push_back(m);
  }
  add("missing_tokens", text::join(missing, ","));
  add("id_column", cfg.schema.id_column);
  add("label_column", cfg.schema.label_column);
  add("positive_labels", text::join(cfg.schema.positive_labels, ","));
  add("negative_labels", text::join(cfg.schema.negative_labels, ","));
  for (Horizon h : cfg.horizons) {
    const std::string slug(to_string(h));
    auto it = cfg.inputs.find(h);
    const HorizonInputs in = it == cfg.inputs.end() ? HorizonInputs{} : it->second;
    add("table." + slug, in.table);
    add("accounting." + slug, in.accounting);
    add("posts." + slug, in.posts);
    add("data." + slug, cfg.data_path(h));
  }
  add("lexicon", cfg.lexicon);
  add("sentiment_scoring", cfg.sentiment == SentimentScoring::kLexicon ? "lexicon" : "prescored");
  add("opinion_normalize", cfg.opinion_normalize ? "true" : "false");
  add("dap_mode", cfg.dap_mode == DapMode::kAbsolute ? "absolute" : "signed");
  add("jones_min_rows", std::to_string(cfg.jones_min_rows));
  add("missing_threshold", text::format_double(cfg.missing_threshold));
  add("imputation", cfg.imputation == preprocess::Imputation::kMedian ? "median" : "mean");
  add("train_fraction", text::format_double(cfg.train_fraction));
  add("bins", std::to_string(cfg.bins));
  add("svm_c", text::format_double(cfg.svm_c));
  add("betas", reals(cfg.betas));
  add("top_k", std::to_string(cfg.top_k));
  add("epsilon", text::format_double(cfg.epsilon));
  add("tie_break", cfg.tie_break);
  std::vector<std::string> kinds;
  for (const auto& m : cfg.models) kinds.emplace_back(models::to_string(m.kind()));
  add("models", text::join(kinds, ","));
  for (const auto& m : cfg.models) {
    for (const auto& [k, v] : m.values()) {
      add("model." + std::string(models::to_string(m.kind())) + "." + k, text::format_double(v));
    }
  }
  add("repetitions", std::to_string(cfg.repetitions));
  add("base_seed", std::to_string(cfg.base_seed));
  add("comparison.model", std::string(models::to_string(cfg.comparison_model)));
  add("comparison.beta", cfg.comparison_beta ? text::format_double(*cfg.comparison_beta) : "best");
  return out;
}

}  // namespace fdp

#endif  // FDP_CONFIG_HPP_
