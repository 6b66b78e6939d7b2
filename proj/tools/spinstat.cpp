// Command-line front end: verification campaigns over parameter grids plus
// small geometry utilities (winding counts, chart folding).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spinstat/campaign.hpp"
#include "spinstat/geometry.hpp"
#include "spinstat/version.hpp"

namespace {

using spinstat::Json;

struct CampaignCli {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_spectral;
  std::optional<double> tol_flow;
  std::optional<int> M;
  std::optional<int> l_max;
  std::optional<int> n_max;
};

void add_campaign_options(CLI::App* cmd, CampaignCli& cli) {
  cmd->add_option("--config", cli.config_path, "campaign configuration file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", cli.out_path, "output path for the report ('-' for stdout)");
  cmd->add_option("--format", cli.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--workers", cli.workers, "parallel campaign workers");
  cmd->add_option("--seed", cli.seed, "seed for the deterministic test states");
  cmd->add_option("--tolerance-spectral", cli.tol_spectral, "spectral comparison tolerance");
  cmd->add_option("--tolerance-flow", cli.tol_flow, "rotation-flow comparison tolerance");
  cmd->add_option("--M", cli.M, "mode-window order for spectra");
  cmd->add_option("--l-max", cli.l_max, "largest azimuthal quantum number (bound states)");
  cmd->add_option("--n-max", cli.n_max, "largest particle number (braid phases)");
}

spinstat::CampaignConfig build_config(spinstat::Mode mode, const CampaignCli& cli) {
  spinstat::CampaignConfig config;
  if (cli.config_path.empty()) {
    config = spinstat::default_config(mode);
  } else {
    std::ifstream in(cli.config_path);
    if (!in) throw spinstat::ConfigError("cannot open config: " + cli.config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw spinstat::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    config = spinstat::parse_config(j);
    if (config.mode != mode)
      throw spinstat::ConfigError(std::string("config mode '") + spinstat::str(config.mode) +
                                  "' does not match subcommand '" + spinstat::str(mode) + "'");
  }
  if (cli.workers) config.workers = *cli.workers;
  if (cli.seed) config.seed = *cli.seed;
  if (cli.tol_spectral) config.tol_spectral = *cli.tol_spectral;
  if (cli.tol_flow) config.tol_flow = *cli.tol_flow;
  if (cli.M) config.M = *cli.M;
  if (cli.l_max) config.l_max = *cli.l_max;
  if (cli.n_max) config.n_max = *cli.n_max;
  return config;
}

int run_campaign_command(spinstat::Mode mode, const CampaignCli& cli) {
  const auto config = build_config(mode, cli);
  const auto result = spinstat::run_campaign(config);
  const std::string payload = cli.format == "csv" ? spinstat::render_table(result.report)
                                                  : result.report.dump(2) + "\n";
  if (cli.out_path.empty() || cli.out_path == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(cli.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << cli.out_path << "\n";
      return 2;
    }
    out << payload;
    std::cout << spinstat::str(config.mode) << ": " << result.total - result.failed << "/"
              << result.total << " items passed -> " << cli.out_path << "\n";
  }
  return result.failed == 0 ? 0 : 1;
}

int run_winding(const std::string& path, const std::string& kappa_exponent) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return 2;
  }
  spinstat::ExchangePath exchange{spinstat::read_path_csv<2>(in)};
  const long long w = spinstat::exchange_winding(exchange);
  std::cout << "samples: " << exchange.samples.size() << "\n";
  std::cout << "half_windings: " << w << "\n";
  std::cout << "exchanges_particles: " << (w % 2 != 0 ? "yes" : "no") << "\n";
  if (!kappa_exponent.empty()) {
    const auto kappa =
        spinstat::ExactPhase::from_exponent(spinstat::Rational::parse(kappa_exponent));
    std::cout << "kappa: " << kappa.str() << "\n";
    std::cout << "holonomy: " << spinstat::holonomy_phase(w, kappa).str() << "\n";
  }
  return 0;
}

int run_fold(const std::string& point) {
  std::vector<double> coords;
  std::string cell;
  std::istringstream in(point);
  while (std::getline(in, cell, ',')) coords.push_back(std::stod(cell));
  if (coords.size() == 2) {
    const auto p = spinstat::to_chart(spinstat::Vec<double, 2>{coords[0], coords[1]});
    std::cout << spinstat::str(p) << "\n";
    return 0;
  }
  if (coords.size() == 3) {
    const auto p =
        spinstat::to_chart(spinstat::Vec<double, 3>{coords[0], coords[1], coords[2]});
    std::cout << spinstat::str(p) << "\n";
    return 0;
  }
  std::cerr << "error: expected 2 or 3 comma-separated coordinates\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification campaigns for exchange statistics and angular-momentum doubling"};
  app.set_version_flag("--version", std::string(spinstat::kName) + " " + spinstat::kVersion);
  app.require_subcommand(1);

  struct ModeCommand {
    spinstat::Mode mode;
    const char* description;
  };
  const std::vector<ModeCommand> modes = {
      {spinstat::Mode::verify2d,
       "planar equivalence sweep: spin-statistics test vs spectral equivalence"},
      {spinstat::Mode::verify3d, "half-space sector dichotomy sweep with obstruction check"},
      {spinstat::Mode::lemma_tables, "exhaustive two-imply-third condition tables"},
      {spinstat::Mode::bound_states, "central-potential bound-state classification table"},
      {spinstat::Mode::braid_phases, "relative/center-of-mass statistics phase bookkeeping"},
      {spinstat::Mode::flow_crosscheck, "spectral vs pointwise-transport rotation flows"},
  };

  std::vector<std::pair<spinstat::Mode, CampaignCli>> campaigns;
  campaigns.reserve(modes.size());
  for (const auto& m : modes) {
    campaigns.emplace_back(m.mode, CampaignCli{});
    add_campaign_options(app.add_subcommand(spinstat::str(m.mode), m.description),
                         campaigns.back().second);
  }

  std::string winding_path, winding_kappa;
  auto* winding = app.add_subcommand("winding", "half-winding count of a relative-coordinate path");
  winding->add_option("--path", winding_path, "CSV path samples, one x,y pair per line")
      ->required()
      ->check(CLI::ExistingFile);
  winding->add_option("--kappa", winding_kappa, "statistics phase exponent t in kappa = e^{i pi t}");

  std::string fold_point;
  auto* fold = app.add_subcommand("fold", "canonical chart representative of a relative vector");
  fold->add_option("--point", fold_point, "comma-separated coordinates, e.g. '-1,0' or '0,-3,2'")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (winding->parsed()) return run_winding(winding_path, winding_kappa);
    if (fold->parsed()) return run_fold(fold_point);
    for (auto& [mode, cli] : campaigns)
      if (app.get_subcommand(spinstat::str(mode))->parsed())
        return run_campaign_command(mode, cli);
  } catch (const spinstat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
