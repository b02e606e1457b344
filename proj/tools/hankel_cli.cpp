#include "hankel/report.hpp"
#include "hankel/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> case_filter, out, format, plot_data;
  std::optional<double> beta, k;
  std::optional<int> l;
  bool timing = false;
};

void apply(hankel::Config &cfg, const Overrides &o) {
  if (o.case_filter)
    cfg.case_filter = *o.case_filter;
  if (o.out)
    cfg.out = *o.out;
  if (o.format)
    cfg.format = *o.format;
  if (o.plot_data)
    cfg.plot_data = *o.plot_data;
  if (o.beta) {
    // β below -1/2 has point spectrum and belongs to the discrete grid
    if (*o.beta < -0.5) {
      cfg.discrete_betas = {*o.beta};
      cfg.whittaker_betas.clear();
    } else {
      cfg.whittaker_betas = {*o.beta};
      cfg.discrete_betas.clear();
    }
    cfg.compact_betas = *o.beta > -1.0 ? std::vector<double>{*o.beta} : std::vector<double>{};
  }
  if (o.k)
    cfg.k_grid = cfg.normalization_k = cfg.carleman_k = cfg.subspace_k = {*o.k};
  if (o.l)
    cfg.ranks = {*o.l};
  cfg.timing = cfg.timing || o.timing;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Numerical verification of Hankel operator diagonalization"};
  app.require_subcommand(1);
  CLI::App *verify = app.add_subcommand("verify", "run a verification suite");

  std::string suite_arg;
  Overrides o;
  verify->add_option("suite", suite_arg, "ode|commutator|eigen|discrete|finite-rank|compact|transform|all")
      ->required()
      ->check(CLI::IsMember(
          {"ode", "commutator", "eigen", "discrete", "finite-rank", "compact", "transform", "all"}));
  verify->add_option("--case", o.case_filter, "keep cases whose id starts with this prefix");
  verify->add_option("--beta", o.beta, "restrict Whittaker-type cases to one beta");
  verify->add_option("--l", o.l, "restrict finite-rank cases to one rank")->check(CLI::PositiveNumber);
  verify->add_option("--k", o.k, "restrict k grids to one point")->check(CLI::PositiveNumber);
  verify->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  verify->add_option("--out", o.out, "report path, - for stdout");
  verify->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--plot-data", o.plot_data, "write continuum identity samples as CSV");
  verify->add_flag("--timing", o.timing, "record wall time in runtime_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<hankel::VerificationReport> reports;
  hankel::Config cfg;
  std::vector<hankel::PlotRow> plot;
  try {
    cfg = hankel::load_config();
    if (!o.config_path.empty())
      hankel::merge_config_file(cfg, o.config_path);
    apply(cfg, o);
    cfg.validate();
    reports = hankel::run_suite(hankel::parse_suite(suite_arg), cfg,
                                cfg.plot_data.empty() ? nullptr : &plot);
  } catch (const hankel::ConfigError &e) {
    std::cerr << "hankel: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "hankel: " << e.what() << "\n";
    return 2;
  }

  try {
    hankel::emit_report(reports, hankel::parse_format(cfg.format), cfg.out);
    if (!cfg.plot_data.empty()) {
      std::ofstream pf(cfg.plot_data);
      if (!pf)
        throw std::runtime_error("cannot write " + cfg.plot_data);
      hankel::write_plot_data(pf, plot);
    }
  } catch (const std::exception &e) {
    std::cerr << "hankel: " << e.what() << "\n";
    return 2;
  }

  int failed = 0;
  for (const auto &r : reports)
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.case_id << " " << r.check_id << " [" << hankel::format_params(r.params)
                << "]" << (r.diagnostic.empty() ? "" : ": " + r.diagnostic) << "\n";
    }
  if (failed)
    std::cerr << failed << " of " << reports.size() << " checks failed\n";
  return failed ? 1 : 0;
}
