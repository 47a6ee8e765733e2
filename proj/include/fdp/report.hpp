#ifndef FDP_REPORT_HPP_
#define FDP_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdp/config.hpp"
#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/evaluation.hpp"
#include "fdp/selection/sweep.hpp"
#include "fdp/text.hpp"

namespace fdp::report {

struct HorizonResult {
  Horizon horizon = Horizon::kT1;
  std::size_t samples = 0;
  std::size_t positives = 0;
  std::vector<std::string> dropped;
  std::size_t features_after_screening = 0;
  std::size_t k_effective = 0;
  std::vector<selection::BetaRanking> rankings;
  /// Every evaluated cell; a key without beta is the unselected feature set.
  std::map<evaluation::CellKey, evaluation::ExperimentResult> cells;
  double best_beta = 0.0;
  double comparison_beta = 0.0;
  std::vector<std::string> comparison_selected;
  std::vector<std::string> financial_features;
  evaluation::IndicatorComparison comparison;
};

struct RunResults {
  std::vector<HorizonResult> horizons;
  std::vector<std::string> warnings;
};

inline std::string beta_label(const std::optional<double>& beta) {
  return beta ? text::format_double(*beta) : "raw";
}

inline std::string cell_text(const std::optional<double>& v) {
  return v ? text::format_fixed(*v, 4) : "NA";
}

inline std::string cell_exact(const std::optional<double>& v) {
  return v ? text::format_double(*v) : "NA";
}

/// Comment block carrying the effective configuration.
inline void write_preamble(std::ostream& out, const std::string& title, const RunConfig& cfg) {
  out << "# " << title << '\n';
  for (const auto& [k, v] : effective_entries(cfg)) out << "# " << k << " = " << v << '\n';
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << body;
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

inline std::vector<models::ClassifierKind> kinds(const RunConfig& cfg) {
  std::vector<models::ClassifierKind> out;
  for (const auto& m : cfg.models) out.push_back(m.kind());
  return out;
}

}  // namespace detail

/// One block per beta (and the unselected set), metric rows, model columns.
inline std::string horizon_table(const HorizonResult& h, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "prediction effects, " + std::string(to_string(h.horizon)), cfg);
  out << "Mean over " << cfg.repetitions << " repetitions, top " << h.k_effective
      << " features per beta; 'raw' uses all " << h.features_after_screening
      << " screened features. NA marks a metric undefined in every repetition.\n\n";
  const auto kinds = detail::kinds(cfg);
  out << detail::pad("beta", 6) << detail::pad("metric", 11);
  for (auto k : kinds) out << detail::pad(std::string(models::to_string(k)), 9);
  out << '\n';
  std::vector<std::optional<double>> rows;
  for (double b : cfg.betas) rows.emplace_back(b);
  rows.emplace_back(std::nullopt);
  for (const auto& beta : rows) {
    bool first = true;
    for (auto metric : evaluation::kAllMetrics) {
      out << detail::pad(first ? beta_label(beta) : "", 6)
          << detail::pad(std::string(evaluation::to_string(metric)), 11);
      for (auto k : kinds) {
        auto it = h.cells.find({h.horizon, beta, k});
        const std::optional<double> v =
            it == h.cells.end() ? std::nullopt : evaluation::get(it->second.cell.mean, metric);
        out << detail::pad(cell_text(v), 9);
      }
      out << '\n';
      first = false;
    }
  }
  out << "\nbest beta by " << models::to_string(cfg.comparison_model)
      << " accuracy: " << text::format_double(h.best_beta) << '\n';
  return out.str();
}

inline std::string metrics_long(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "metrics_long", cfg);
  out << "horizon,beta,model,metric,mean,defined_runs,repetitions\n";
  for (const auto& h : r.horizons) {
    for (const auto& [key, res] : h.cells) {
      for (auto metric : evaluation::kAllMetrics) {
        out << to_string(key.horizon) << ',' << beta_label(key.beta) << ','
            << models::to_string(key.model) << ',' << evaluation::to_string(metric) << ','
            << cell_exact(evaluation::get(res.cell.mean, metric)) << ','
            << res.cell.defined_runs.at(metric) << ',' << res.cell.repetitions << '\n';
      }
    }
  }
  return out.str();
}

/// Per-repetition confusion counts, enough to recompute every mean.
inline std::string runs_long(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "runs_long", cfg);
  out << "horizon,beta,model,repetition,split_seed,tp,fp,fn,tn\n";
  for (const auto& h : r.horizons) {
    for (const auto& [key, res] : h.cells) {
      for (std::size_t i = 0; i < res.runs.size(); ++i) {
        const auto& run = res.runs[i];
        out << to_string(key.horizon) << ',' << beta_label(key.beta) << ','
            << models::to_string(key.model) << ',' << i + 1 << ',' << run.seed << ','
            << run.confusion.tp << ',' << run.confusion.fp << ',' << run.confusion.fn << ','
            << run.confusion.tn << '\n';
      }
    }
  }
  return out.str();
}

/// Selected features at the comparison beta grouped by catalog category,
/// one column per horizon.
inline std::string feature_selection(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "feature selection results", cfg);
  const auto& catalog = default_catalog();
  std::vector<Category> categories;
  for (const auto& e : catalog.entries()) {
    if (std::find(categories.begin(), categories.end(), e.category) == categories.end()) {
      categories.push_back(e.category);
    }
  }
  std::vector<std::string> header = {"category"};
  for (const auto& h : r.horizons) {
    header.push_back(std::string(to_string(h.horizon)) + " (beta " +
                     text::format_double(h.comparison_beta) + ")");
  }
  std::vector<std::vector<std::string>> rows;
  for (Category c : categories) {
    std::vector<std::string> row = {std::string(to_string(c))};
    for (const auto& h : r.horizons) {
      std::vector<std::string> codes;
      for (const auto& code : h.comparison_selected) {
        const auto* e = catalog.find(code);
        if (e != nullptr && e->category == c) codes.push_back(code);
      }
      row.push_back(codes.empty() ? "-" : text::join(codes, " "));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> other = {"uncataloged"};
  bool any_other = false;
  for (const auto& h : r.horizons) {
    std::vector<std::string> codes;
    for (const auto& code : h.comparison_selected) {
      if (!catalog.contains(code)) codes.push_back(code);
    }
    any_other = any_other || !codes.empty();
    other.push_back(codes.empty() ? "-" : text::join(codes, " "));
  }
  if (any_other) rows.push_back(std::move(other));

  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  for (std::size_t j = 0; j < header.size(); ++j) out << detail::pad(header[j], width[j] + 2);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << detail::pad(row[j], width[j] + 2);
    out << '\n';
  }
  out << "\n'-' means no feature of that category was selected.\n";
  return out.str();
}

inline std::string rankings_long(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "rankings_long", cfg);
  out << "horizon,beta,rank,feature,selected,eliminated_at,score\n";
  for (const auto& h : r.horizons) {
    for (const auto& br : h.rankings) {
      const auto& order = br.ranking.order;
      const std::size_t n = order.size();
      for (std::size_t i = 0; i < n; ++i) {
        out << to_string(h.horizon) << ',' << text::format_double(br.beta) << ',' << i + 1 << ','
            << order[i] << ',' << (i < h.k_effective ? 1 : 0) << ',' << n - 1 - i << ','
            << text::format_double(br.ranking.scores[i]) << '\n';
      }
    }
  }
  return out.str();
}

inline std::string comparison_text(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "indicator system comparison", cfg);
  for (const auto& h : r.horizons) {
    out << to_string(h.horizon) << ", " << models::to_string(cfg.comparison_model) << ", beta "
        << text::format_double(h.comparison_beta) << '\n';
    out << detail::pad("system", 24);
    for (auto m : evaluation::kAllMetrics) {
      out << detail::pad(std::string(evaluation::to_string(m)), 11);
    }
    out << detail::pad("features", 8) << '\n';
    const std::size_t counts[] = {h.financial_features.size(), h.features_after_screening,
                                  h.comparison_selected.size()};
    for (std::size_t i = 0; i < h.comparison.rows.size(); ++i) {
      const auto& row = h.comparison.rows[i];
      out << detail::pad(row.name, 24);
      for (auto m : evaluation::kAllMetrics) {
        out << detail::pad(cell_text(evaluation::get(row.cell.mean, m)), 11);
      }
      out << counts[i] << '\n';
    }
    for (const auto& d : h.comparison.deltas) {
      out << detail::pad(d.to + " - " + d.from, 48);
      for (auto m : evaluation::kAllMetrics) {
        const auto v = d.delta.at(m);
        out << evaluation::to_string(m) << ' '
            << (v ? (*v >= 0.0 ? "+" : "") + text::format_fixed(*v, 4) : "NA") << "  ";
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

inline std::string comparison_long(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "comparison_long", cfg);
  out << "horizon,model,beta,system,metric,mean,defined_runs\n";
  for (const auto& h : r.horizons) {
    for (const auto& row : h.comparison.rows) {
      for (auto m : evaluation::kAllMetrics) {
        out << to_string(h.horizon) << ',' << models::to_string(cfg.comparison_model) << ','
            << text::format_double(h.comparison_beta) << ',' << row.name << ','
            << evaluation::to_string(m) << ',' << cell_exact(evaluation::get(row.cell.mean, m))
            << ',' << row.cell.defined_runs.at(m) << '\n';
      }
    }
  }
  return out.str();
}

inline std::string run_summary(const RunResults& r, const RunConfig& cfg) {
  std::ostringstream out;
  write_preamble(out, "run summary", cfg);
  for (const auto& h : r.horizons) {
    out << to_string(h.horizon) << ": " << h.samples << " samples (" << h.positives
        << " positive), " << h.features_after_screening << " features after screening\n";
    out << "  dropped: " << (h.dropped.empty() ? "none" : text::join(h.dropped, " ")) << '\n';
    out << "  k: " << h.k_effective << '\n';
    out << "  best beta: " << text::format_double(h.best_beta) << '\n';
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

inline std::vector<std::string> report_files(const RunConfig& cfg) {
  std::vector<std::string> files;
  for (Horizon h : cfg.horizons) files.push_back("table_" + RunConfig::horizon_slug(h) + ".txt");
  for (const char* f : {"metrics_long.csv", "runs_long.csv", "feature_selection.txt",
                        "rankings_long.csv", "comparison.txt", "comparison_long.csv",
                        "run_summary.txt"}) {
    files.emplace_back(f);
  }
  return files;
}

/// Writes every report into cfg.output_dir and returns the paths.
inline std::vector<std::string> write_reports(const RunResults& r, const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    detail::write_file(dir / name, body);
    written.push_back((dir / name).string());
  };
  for (const auto& h : r.horizons) {
    emit("table_" + RunConfig::horizon_slug(h.horizon) + ".txt", horizon_table(h, cfg));
  }
  emit("metrics_long.csv", metrics_long(r, cfg));
  emit("runs_long.csv", runs_long(r, cfg));
  emit("feature_selection.txt", feature_selection(r, cfg));
  emit("rankings_long.csv", rankings_long(r, cfg));
  emit("comparison.txt", comparison_text(r, cfg));
  emit("comparison_long.csv", comparison_long(r, cfg));
  emit("run_summary.txt", run_summary(r, cfg));
  return written;
}

}  // namespace fdp::report

#endif  // FDP_REPORT_HPP_
