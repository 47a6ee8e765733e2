// fdp: financial distress prediction pipeline.
//
//   fdp validate   --config run.conf
//   fdp indicators --config run.conf [--output-dir DIR]
//   fdp run        --config run.conf [--output-dir DIR] [--seed N] [-v]
//
// Exit status: 0 success, 1 validation failure, 2 runtime failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fdp/config.hpp"
#include "fdp/pipeline.hpp"
#include "fdp/text.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailed = 2;

struct Options {
  std::string config;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  int verbosity = 0;
};

void print_findings(const fdp::ConfigReport& report) {
  for (const auto& f : report.findings) {
    std::cerr << (f.severity == fdp::Finding::Severity::kError ? "error: " : "warning: ")
              << f.message << '\n';
  }
}

// Loads the config and applies command-line overrides. Throws on a bad file.
fdp::RunConfig load(const Options& opt) {
  fdp::RunConfig cfg = fdp::load_config(opt.config);
  if (opt.output_dir) cfg.output_dir = *opt.output_dir;
  if (opt.seed) cfg.base_seed = *opt.seed;
  return cfg;
}

int validate(const Options& opt) {
  fdp::RunConfig cfg;
  try {
    cfg = load(opt);
  } catch (const fdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  const auto report = fdp::pipeline::cmd_validate(cfg);
  print_findings(report);
  if (opt.verbosity > 0) {
    for (const auto& [k, v] : fdp::effective_entries(cfg)) std::cout << k << " = " << v << '\n';
  }
  std::cout << (report.ok() ? "config ok" : "config invalid") << " (" << report.findings.size()
            << " finding" << (report.findings.size() == 1 ? "" : "s") << ")\n";
  return report.ok() ? kOk : kInvalid;
}

template <typename F>
int execute(const Options& opt, fdp::Stage stage, F&& body) {
  fdp::RunConfig cfg;
  try {
    cfg = load(opt);
  } catch (const fdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  const auto report = fdp::validate_config(cfg, stage);
  print_findings(report);
  if (!report.ok()) {
    std::cerr << "validation failed; nothing was computed\n";
    return kInvalid;
  }
  fdp::pipeline::Log log;
  if (opt.verbosity > 0) log = [](const std::string& m) { std::cerr << "[fdp] " << m << '\n'; };
  try {
    body(cfg, log);
  } catch (const fdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Financial distress prediction with MRMR-SVM-RFE feature selection"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("-c,--config", opt.config, "Run configuration file")->required();
  app.add_option("-o,--output-dir", opt.output_dir, "Override output_dir");
  app.add_option("-s,--seed", opt.seed, "Override base_seed");
  app.add_flag("-v,--verbose", opt.verbosity, "More output (repeatable)");

  auto* validate_cmd = app.add_subcommand("validate", "Check the configuration and inputs");
  auto* indicators_cmd =
      app.add_subcommand("indicators", "Add Audittyp, DAP and emotion to the indicator tables");
  auto* run_cmd = app.add_subcommand("run", "Screen, select, evaluate and write reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  if (validate_cmd->parsed()) return validate(opt);

  if (indicators_cmd->parsed()) {
    return execute(opt, fdp::Stage::kIndicators,
                   [](const fdp::RunConfig& cfg, const fdp::pipeline::Log& log) {
                     for (const auto& s : fdp::pipeline::cmd_indicators(cfg, log)) {
                       std::cout << fdp::to_string(s.horizon) << ": " << s.companies
                                 << " companies, DAP missing " << s.dap_missing
                                 << ", audit missing " << s.audit_missing << ", without posts "
                                 << s.without_posts << " -> " << s.output << '\n';
                     }
                   });
  }

  if (run_cmd->parsed()) {
    return execute(opt, fdp::Stage::kRun,
                   [](const fdp::RunConfig& cfg, const fdp::pipeline::Log& log) {
                     const auto results = fdp::pipeline::cmd_run(cfg, log);
                     for (const auto& w : results.warnings) std::cerr << "warning: " << w << '\n';
                     for (const auto& h : results.horizons) {
                       std::cout << fdp::to_string(h.horizon) << ": best beta "
                                 << fdp::text::format_double(h.best_beta) << ", dropped "
                                 << (h.dropped.empty() ? "none" : fdp::text::join(h.dropped, " "))
                                 << '\n';
                     }
                     std::cout << "reports in " << cfg.output_dir << '\n';
                   });
  }
  return kInvalid;
}
