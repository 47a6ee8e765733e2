#ifndef FDP_FIXTURE_HPP_
#define FDP_FIXTURE_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fdp/config.hpp"
#include "fdp/data_model.hpp"
#include "fdp/error.hpp"
#include "fdp/synthetic.hpp"
#include "fdp/text.hpp"

namespace fdp::fixture {

struct FixtureOptions {
  std::vector<Horizon> horizons = {Horizon::kT1};
  /// Planted-data seed of the first horizon; later horizons use the next seeds.
  std::uint64_t seed = synthetic::kFixtureSeeds[0];
  std::size_t repetitions = 10;
  std::optional<std::size_t> bp_epochs;
  std::string output_dir = "out";
};

/// Features dropped by the 30% screen: 25 of 75 cells missing.
inline const std::vector<std::string>& over_threshold_features() {
  static const std::vector<std::string> kCodes = {"F6", "F8"};
  return kCodes;
}

namespace detail {

inline std::ofstream open(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + p.string() + "'");
  return out;
}

inline std::string fixed(double v) { return text::format_fixed(v, 6); }

}  // namespace detail

/// Writes one horizon's raw inputs: the indicator table without the three
/// derived columns, an accounting file and a posts file. The derived
/// columns are re-created from accounting and posts so that they keep the
/// planted signal. Company ids are C001..C075.
inline void write_horizon(const std::filesystem::path& dir, Horizon h, std::uint64_t seed) {
  const auto planted = synthetic::generate(synthetic::fixture_spec(seed));
  const Dataset& d = planted.dataset;
  const std::string slug = RunConfig::horizon_slug(h);
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto audit = *d.feature_index("Audittyp");
  const auto dap = *d.feature_index("DAP");
  const auto emotion = *d.feature_index("emotion");
  const std::size_t k = d.rows();

  // Missingness: F6/F8 lose 25 rows each, F10 loses 22 (29.3%, kept and
  // imputed), and a handful of single gaps elsewhere.
  std::vector<std::vector<bool>> gap(k, std::vector<bool>(d.cols(), false));
  auto knock_out = [&](const std::string& code, std::size_t count, std::size_t offset) {
    const auto c = *d.feature_index(code);
    for (std::size_t i = 0; i < count; ++i) gap[(offset + 3 * i) % k][c] = true;
  };
  knock_out("F6", 25, 0);
  knock_out("F8", 25, 1);
  knock_out("F10", 22, 2);
  for (const char* code : {"F1", "F15", "E2"}) knock_out(code, 1, 40);

  {
    auto out = detail::open(dir / ("table_" + slug + ".csv"));
    out << "id,label";
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (c == audit || c == dap || c == emotion) continue;
      out << ',' << d.feature_names()[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < k; ++r) {
      out << d.sample_ids()[r] << ',' << (d.labels()[r] == 1 ? "ST" : "non-ST");
      for (std::size_t c = 0; c < d.cols(); ++c) {
        if (c == audit || c == dap || c == emotion) continue;
        out << ',' << (gap[r][c] ? "NA" : text::format_double(*d.value(r, c)));
      }
      out << '\n';
    }
  }

  {
    // Jones inputs follow TA/A = 0.8/A + 0.06 dREV/A + 0.04 PPE/A + 0.05 x,
    // with x the planted DAP value, so the fitted DAP tracks x.
    auto out = detail::open(dir / ("accounting_" + slug + ".csv"));
    out << "id,total_assets_prev,operating_profit,operating_cash_flow,delta_revenue,"
           "delta_receivables,fixed_assets_closing,audit_opinion\n";
    for (std::size_t r = 0; r < k; ++r) {
      const double a = 500.0 + 4500.0 * unit(rng);
      const double drev = a * (-0.2 + 0.6 * unit(rng));
      const double dar = a * 0.02 * (unit(rng) - 0.5);
      const double ppe = a * (0.1 + 0.5 * unit(rng));
      const double ocf = a * (-0.05 + 0.2 * unit(rng));
      const double ta = 0.8 + 0.06 * drev + 0.04 * ppe + 0.05 * a * *d.value(r, dap);
      const double ni = ocf + ta;
      const bool incomplete = r + 1 == k;  // last company lacks cash flow
      const std::string opinion =
          *d.value(r, audit) > 0.8 ? "qualified opinion" : "standard unqualified opinion";
      out << d.sample_ids()[r] << ',' << detail::fixed(a) << ',' << detail::fixed(ni) << ','
          << (incomplete ? "" : detail::fixed(ocf)) << ',' << detail::fixed(drev) << ','
          << detail::fixed(dar) << ',' << detail::fixed(ppe) << ',' << opinion << '\n';
    }
  }

  {
    // A scored post of influence 4 carries the planted opinion value; a
    // short token post adds lexicon-scored text. The second-to-last
    // company has no posts at all.
    auto out = detail::open(dir / ("posts_" + slug + ".csv"));
    out << "id,text,looks,comments\n";
    for (std::size_t r = 0; r < k; ++r) {
      if (r + 2 == k) continue;
      const double v = *d.value(r, emotion);
      out << d.sample_ids()[r] << ',' << text::format_fixed(std::tanh(v / 2.0), 4) << ",16,4\n";
      const char* words = v >= 0.0 ? "good growth" : "bad loss risk";
      out << d.sample_ids()[r] << ",\"" << words << "\",1,0\n";
    }
  }
}

inline void write_lexicon(const std::filesystem::path& path) {
  auto out = detail::open(path);
  out << "# token polarity\n"
         "good 1\n"
         "growth 1\n"
         "strong 1\n"
         "bad -1\n"
         "loss -1\n"
         "risk -1\n";
}

/// Writes a complete CLI fixture into `dir` and returns the config path.
inline std::string write_fixture(const std::filesystem::path& dir, const FixtureOptions& opt = {}) {
  std::filesystem::create_directories(dir);
  write_lexicon(dir / "lexicon.txt");
  std::uint64_t seed = opt.seed;
  std::vector<std::string> hs;
  for (Horizon h : opt.horizons) {
    write_horizon(dir, h, seed++);
    hs.emplace_back(to_string(h));
  }
  const auto config = dir / "fixture.conf";
  auto out = detail::open(config);
  out << "# Planted fixture: 75 companies, 25 ST, 40 raw indicators plus three derived.\n"
      << "output_dir = " << opt.output_dir << '\n'
      << "horizons = " << text::join(hs, ",") << '\n'
      << "missing_tokens = NA\n"
      << "positive_labels = ST\n"
      << "negative_labels = non-ST\n";
  for (Horizon h : opt.horizons) {
    const std::string slug = RunConfig::horizon_slug(h);
    const std::string name(to_string(h));
    out << "table." << name << " = table_" << slug << ".csv\n"
        << "accounting." << name << " = accounting_" << slug << ".csv\n"
        << "posts." << name << " = posts_" << slug << ".csv\n";
  }
  out << "lexicon = lexicon.txt\n"
      << "sentiment_scoring = lexicon\n"
      << "repetitions = " << opt.repetitions << '\n'
      << "base_seed = 0\n";
  if (opt.bp_epochs) out << "model.BP.epochs = " << *opt.bp_epochs << '\n';
  return config.string();
}

}  // namespace fdp::fixture

#endif  // FDP_FIXTURE_HPP_
