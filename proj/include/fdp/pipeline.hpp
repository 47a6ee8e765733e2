#ifndef FDP_PIPELINE_HPP_
#define FDP_PIPELINE_HPP_

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fdp/config.hpp"
#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/evaluation.hpp"
#include "fdp/indicators.hpp"
#include "fdp/preprocess.hpp"
#include "fdp/report.hpp"
#include "fdp/selection/sweep.hpp"

namespace fdp::pipeline {

using Log = std::function<void(const std::string&)>;

/// An error tagged with the pipeline stage it came from.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), "stage '" + stage + "': " + cause.what(), Verbatim{}),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

template <typename F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

inline void note(const Log& log, const std::string& msg) {
  if (log) log(msg);
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// Checks the raw inputs when indicator tables are configured, otherwise the
/// augmented tables that `run` reads.
inline ConfigReport cmd_validate(const RunConfig& cfg) {
  bool raw = false;
  for (const auto& [h, in] : cfg.inputs) raw = raw || !in.table.empty();
  return validate_config(cfg, raw ? Stage::kIndicators : Stage::kRun);
}

// ---------------------------------------------------------------------------
// indicators
// ---------------------------------------------------------------------------

struct IndicatorSummary {
  Horizon horizon = Horizon::kT1;
  std::string output;
  std::size_t companies = 0;
  std::size_t dap_missing = 0;
  std::size_t audit_missing = 0;
  std::size_t without_posts = 0;
  indicators::JonesCoefficients jones;
};

inline constexpr const char* kAuditColumn = "Audittyp";
inline constexpr const char* kDapColumn = "DAP";
inline constexpr const char* kEmotionColumn = "emotion";

/// Adds Audittyp, DAP and emotion to one horizon's indicator table. Every
/// company in the table needs an accounting row; incomplete Jones inputs
/// leave DAP missing and a company without posts scores 0.
inline std::pair<Dataset, IndicatorSummary> augment(const RunConfig& cfg, Horizon h,
                                                    const indicators::Lexicon* lexicon) {
  const HorizonInputs& in = cfg.inputs.at(h);
  Schema schema = cfg.schema;
  schema.horizon = h;
  const Dataset table = in_stage("load", [&] { return load_dataset(in.table, schema); });
  for (const char* col : {kAuditColumn, kDapColumn, kEmotionColumn}) {
    if (table.feature_index(col)) {
      throw StageError("indicators", Error(ErrorKind::kIndicator,
                                           in.table + " already has a '" + col + "' column"));
    }
  }

  IndicatorSummary summary;
  summary.horizon = h;
  summary.companies = table.rows();

  const auto records = in_stage("load", [&] {
    return indicators::load_accounting(in.accounting, schema.delimiter, schema.id_column,
                                       schema.missing_tokens);
  });
  std::unordered_map<std::string, const indicators::AccountingRecord*> by_id;
  for (const auto& r : records) {
    if (!by_id.emplace(r.company, &r).second) {
      throw StageError("join", Error(ErrorKind::kUniqueness, in.accounting +
                                                                 ": duplicate company '" +
                                                                 r.company + "'"));
    }
  }
  std::vector<std::string> unmatched;
  for (const auto& id : table.sample_ids()) {
    if (!by_id.count(id)) unmatched.push_back(id);
  }
  if (!unmatched.empty()) {
    throw StageError("join", Error(ErrorKind::kJoin, "no accounting row for: " +
                                                         text::join(unmatched, ", ")));
  }

  // Pooled modified-Jones fit over every complete row of the accounting file.
  std::vector<indicators::JonesInputRow> jones_rows;
  for (const auto& r : records) {
    if (r.jones) jones_rows.push_back(*r.jones);
  }
  summary.jones =
      in_stage("jones", [&] { return indicators::fit_jones(jones_rows, cfg.jones_min_rows); });

  const auto posts = in_stage("opinion", [&] {
    return indicators::group_posts(indicators::load_posts(in.posts, schema.delimiter), lexicon);
  });

  const std::size_t n = table.cols();
  std::vector<std::string> names = table.feature_names();
  names.insert(names.end(), {kAuditColumn, kDapColumn, kEmotionColumn});
  std::vector<Cell> cells;
  cells.reserve(table.rows() * (n + 3));
  in_stage("indicators", [&] {
    for (std::size_t r = 0; r < table.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) cells.push_back(table.value(r, c));
      const auto& rec = *by_id.at(table.sample_ids()[r]);
      if (rec.audit_opinion) {
        cells.emplace_back(indicators::encode_audit_opinion(
            indicators::parse_audit_opinion(*rec.audit_opinion)));
      } else {
        cells.emplace_back(std::nullopt);
        ++summary.audit_missing;
      }
      if (rec.jones) {
        double dap = indicators::accrual_earnings_management(*rec.jones, summary.jones);
        if (cfg.dap_mode == DapMode::kAbsolute) dap = std::abs(dap);
        cells.emplace_back(dap);
      } else {
        cells.emplace_back(std::nullopt);
        ++summary.dap_missing;
      }
      auto it = posts.find(table.sample_ids()[r]);
      if (it == posts.end()) {
        cells.emplace_back(0.0);
        ++summary.without_posts;
      } else {
        cells.emplace_back(indicators::company_opinion_score(it->second, cfg.opinion_normalize));
      }
    }
    return 0;
  });
  Dataset out(std::move(names), std::move(cells), table.labels(), table.sample_ids(), h);
  return {std::move(out), summary};
}

inline std::vector<IndicatorSummary> cmd_indicators(const RunConfig& cfg, const Log& log = {}) {
  std::optional<indicators::Lexicon> lexicon;
  if (cfg.sentiment == SentimentScoring::kLexicon) {
    lexicon = in_stage("load", [&] { return indicators::load_lexicon(cfg.lexicon); });
  }
  std::filesystem::create_directories(cfg.output_dir);
  std::vector<IndicatorSummary> out;
  for (Horizon h : cfg.horizons) {
    auto [d, summary] = augment(cfg, h, lexicon ? &*lexicon : nullptr);
    summary.output = cfg.augmented_path(h);
    in_stage("write", [&] {
      Schema schema = cfg.schema;
      schema.horizon = h;
      save_dataset(summary.output, d, schema);
      return 0;
    });
    note(log, std::string(to_string(h)) + ": wrote " + summary.output);
    out.push_back(std::move(summary));
  }
  return out;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

inline std::vector<std::string> financial_subset(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  const auto& catalog = default_catalog();
  for (const auto& n : names) {
    const auto* e = catalog.find(n);
    if (e != nullptr && is_financial(e->category)) out.push_back(n);
  }
  return out;
}

inline selection::MrmrRfeOptions selection_options(const RunConfig& cfg) {
  selection::MrmrRfeOptions opt;
  opt.svm.c = cfg.svm_c;
  opt.bins = cfg.bins;
  opt.redundancy_floor = cfg.epsilon;
  return opt;
}

inline evaluation::ExperimentProtocol protocol(const RunConfig& cfg) {
  evaluation::ExperimentProtocol p;
  p.repetitions = cfg.repetitions;
  p.train_fraction = cfg.train_fraction;
  p.base_seed = cfg.base_seed;
  return p;
}

/// screen -> rank per beta -> repeated hold-out per (beta, model) and on the
/// unselected set -> pick beta -> compare indicator systems.
inline report::HorizonResult run_horizon(const RunConfig& cfg, Horizon h,
                                         std::vector<std::string>& warnings, const Log& log) {
  report::HorizonResult res;
  res.horizon = h;
  Schema schema = cfg.schema;
  schema.horizon = h;
  const Dataset raw = in_stage("load", [&] { return load_dataset(cfg.data_path(h), schema); });
  res.samples = raw.rows();
  res.positives = raw.positives();

  const auto screened = in_stage("screen", [&] {
    return preprocess::screen_missing(raw, cfg.missing_threshold, cfg.imputation);
  });
  const Dataset& d = screened.dataset;
  res.dropped = screened.dropped;
  res.features_after_screening = d.cols();
  res.k_effective = std::min(cfg.top_k, d.cols());
  if (res.k_effective < cfg.top_k) {
    warnings.push_back(std::string(to_string(h)) + ": top_k " + std::to_string(cfg.top_k) +
                       " clamped to " + std::to_string(res.k_effective));
  }
  note(log, std::string(to_string(h)) + ": " + std::to_string(d.cols()) +
                " features after screening, dropped " + std::to_string(res.dropped.size()));

  res.rankings = in_stage("select", [&] {
    return selection::rank_betas(d, cfg.betas, cfg.top_k, selection_options(cfg));
  });

  const auto proto = protocol(cfg);
  in_stage("evaluate", [&] {
    for (const auto& spec : cfg.models) {
      for (const auto& br : res.rankings) {
        res.cells[{h, br.beta, spec.kind()}] =
            evaluation::run_experiment(d, br.selected, spec, proto);
      }
      res.cells[{h, std::nullopt, spec.kind()}] =
          evaluation::run_experiment(d, d.feature_names(), spec, proto);
      note(log, std::string(to_string(h)) + ": evaluated " +
                    std::string(models::to_string(spec.kind())));
    }
    return 0;
  });

  std::vector<double> accuracy;
  for (const auto& br : res.rankings) {
    const auto& cell = res.cells.at({h, br.beta, cfg.comparison_model}).cell;
    accuracy.push_back(cell.mean.accuracy.value_or(0.0));
  }
  res.best_beta = cfg.betas[selection::best_beta_index(cfg.betas, accuracy)];
  res.comparison_beta = cfg.comparison_beta.value_or(res.best_beta);

  const selection::BetaRanking* chosen = nullptr;
  for (const auto& br : res.rankings) {
    if (br.beta == res.comparison_beta) chosen = &br;
  }
  std::optional<selection::BetaRanking> extra;
  if (chosen == nullptr) {
    extra = in_stage("select", [&] {
      return selection::rank_betas(d, {res.comparison_beta}, cfg.top_k, selection_options(cfg))
          .front();
    });
    chosen = &*extra;
  }
  res.comparison_selected = chosen->selected;
  res.financial_features = financial_subset(d.feature_names());

  res.comparison = in_stage("compare", [&] {
    if (res.financial_features.empty()) {
      fail(ErrorKind::kArgument, "no traditional financial feature survives screening");
    }
    return evaluation::compare_indicator_systems(d, d.select_features(res.financial_features),
                                                 res.comparison_selected,
                                                 *cfg.find_model(cfg.comparison_model), proto);
  });
  return res;
}

inline report::RunResults cmd_run(const RunConfig& cfg, const Log& log = {}) {
  report::RunResults results;
  for (Horizon h : cfg.horizons) results.horizons.push_back(run_horizon(cfg, h, results.warnings, log));
  in_stage("report", [&] { return report::write_reports(results, cfg); });
  return results;
}

}  // namespace fdp::pipeline

#endif  // FDP_PIPELINE_HPP_
