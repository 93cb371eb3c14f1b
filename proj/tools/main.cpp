#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "triarm/config_io.hpp"
#include "triarm/errors.hpp"
#include "triarm/experiment.hpp"
#include "triarm/report.hpp"
#include "triarm/selftest.hpp"
#include "triarm/variance.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitInsufficientData = 3;

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return grid;
}

struct SimulateArgs {
  std::string config_path;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  std::uint64_t samples = 0;
  double lo_amplitude = 0.0;
  double lo_phase = 0.0;
  double transmissivity = 0.0;
  double gain_1 = 0.0;
  double gain_2 = 0.0;
  double offset_sigma = 0.0;
  double drift_sigma = 0.0;
  double lock_loss = 0.0;
  double outlier_threshold = 0.0;
  std::string sorkin_correction;
  std::string peres_correction;
  bool noise_free = false;
};

void add_simulate(CLI::App& app, SimulateArgs& args) {
  CLI::App* cmd = app.add_subcommand("simulate", "run a full measurement campaign");
  cmd->add_option("--config", args.config_path, "config file (defaults used when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "master seed for all random streams")->required();
  cmd->add_option("--output-dir", args.output_dir,
                  "directory for runs.csv and summary.json (default: .)");
  cmd->add_option("--runs", args.runs, "override: number of runs");
  cmd->add_option("--samples", args.samples, "override: homodyne samples per configuration");
  cmd->add_option("--lo-amplitude", args.lo_amplitude, "override: LO amplitude");
  cmd->add_option("--lo-phase", args.lo_phase, "override: LO phase (radians)");
  cmd->add_option("--transmissivity", args.transmissivity,
                  "override: mixing splitter transmissivity");
  cmd->add_option("--gain-1", args.gain_1, "override: detector 1 gain");
  cmd->add_option("--gain-2", args.gain_2, "override: detector 2 gain");
  cmd->add_option("--offset-sigma", args.offset_sigma, "override: per-run DC offset scale");
  cmd->add_option("--drift-sigma", args.drift_sigma, "override: per-run drift slope scale");
  cmd->add_option("--lock-loss", args.lock_loss, "override: lock-loss probability per run");
  cmd->add_option("--outlier-threshold", args.outlier_threshold,
                  "override: outlier filter threshold (scaled MAD units)");
  cmd->add_option("--sorkin-correction", args.sorkin_correction,
                  "override: background correction for kappa (mean|photon)");
  cmd->add_option("--peres-correction", args.peres_correction,
                  "override: background correction for F (mean|photon)");
  cmd->add_flag("--noise-free", args.noise_free, "override: zero outcome variance (debug)");
}

int run_simulate(const CLI::App& app, const SimulateArgs& args) {
  const CLI::App* cmd = app.get_subcommand("simulate");
  triarm::ExperimentConfig config;
  if (!args.config_path.empty()) config = triarm::load_config_file(args.config_path);

  if (cmd->count("--runs") > 0) config.runs = static_cast<std::size_t>(args.runs);
  if (cmd->count("--samples") > 0) {
    config.samples_per_config = static_cast<std::size_t>(args.samples);
  }
  if (cmd->count("--lo-amplitude") > 0) config.lo_amplitude = args.lo_amplitude;
  if (cmd->count("--lo-phase") > 0) config.lo_phase = args.lo_phase;
  if (cmd->count("--transmissivity") > 0) config.transmissivity = args.transmissivity;
  if (cmd->count("--gain-1") > 0) config.gain_1 = args.gain_1;
  if (cmd->count("--gain-2") > 0) config.gain_2 = args.gain_2;
  if (cmd->count("--offset-sigma") > 0) config.noise.offset_sigma = args.offset_sigma;
  if (cmd->count("--drift-sigma") > 0) config.noise.drift_sigma = args.drift_sigma;
  if (cmd->count("--lock-loss") > 0) config.noise.lock_loss_probability = args.lock_loss;
  if (cmd->count("--outlier-threshold") > 0) {
    config.filter.outlier_threshold = args.outlier_threshold;
  }
  if (cmd->count("--sorkin-correction") > 0) {
    config.sorkin_correction = triarm::correction_from_name(args.sorkin_correction);
  }
  if (cmd->count("--peres-correction") > 0) {
    config.peres_correction = triarm::correction_from_name(args.peres_correction);
  }
  if (cmd->count("--noise-free") > 0) config.noise_free = true;
  config.master_seed = args.seed;
  config.validate();

  const std::vector<triarm::RunRecord> records = triarm::run_campaign(config);
  const triarm::CampaignSummary summary = triarm::aggregate_runs(records, config.filter);

  std::filesystem::create_directories(args.output_dir);
  const std::filesystem::path dir(args.output_dir);
  triarm::write_text_file((dir / "runs.csv").string(), triarm::run_records_csv(records));
  triarm::write_text_file((dir / "summary.json").string(),
                          triarm::campaign_summary_json(config, summary));

  std::cout << "campaign: " << summary.runs_total << " runs (" << summary.runs_lock_lost
            << " lock-lost, " << summary.runs_error << " errored)\n";
  std::cout << std::left << std::setw(8) << "stat" << std::right << std::setw(16) << "mean"
            << std::setw(16) << "stddev" << std::setw(12) << "retained" << '\n';
  for (const triarm::StatisticSummary& stat : summary.statistics) {
    std::cout << std::left << std::setw(8) << stat.name << std::right << std::setw(16)
              << std::setprecision(6) << std::scientific << stat.mean << std::setw(16)
              << stat.stddev << std::defaultfloat << std::setw(8) << stat.retained << "/"
              << stat.considered << '\n';
  }
  std::cout << "wrote " << (dir / "runs.csv").string() << " and "
            << (dir / "summary.json").string() << '\n';
  return kExitOk;
}

struct HomodyneSweepArgs {
  std::string parameter = "transmissivity";
  double min = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 11;
  std::vector<double> ratios{1000.0, 10000.0};
  double alpha_magnitude = 0.1;
  std::string output = "sweep_homodyne.json";
};

void add_sweep_homodyne(CLI::App& app, HomodyneSweepArgs& args) {
  CLI::App* cmd = app.add_subcommand(
      "sweep-homodyne", "apparent kappa from a miscalibrated detector over a parameter grid");
  cmd->add_option("--parameter", args.parameter, "swept parameter: transmissivity or gain_1")
      ->check(CLI::IsMember({"transmissivity", "gain_1"}));
  cmd->add_option("--min", args.min, "grid start (default 0.68 for t, 0.98 for gain)");
  cmd->add_option("--max", args.max, "grid end (default 0.73 for t, 1.02 for gain)");
  cmd->add_option("--points", args.points, "grid size (default 11)");
  cmd->add_option("--ratios", args.ratios, "LO-to-source amplitude ratios (default 1e3 1e4)");
  cmd->add_option("--alpha", args.alpha_magnitude, "per-source amplitude (default 0.1)");
  cmd->add_option("--output", args.output, "output document path");
}

int run_sweep_homodyne(const HomodyneSweepArgs& args) {
  const bool is_t = args.parameter == "transmissivity";
  const double lo = std::isnan(args.min) ? (is_t ? 0.68 : 0.98) : args.min;
  const double hi = std::isnan(args.max) ? (is_t ? 0.73 : 1.02) : args.max;
  if (args.points == 0) throw triarm::ConfigError("--points must be positive");

  triarm::ExperimentConfig base;
  base.bank = triarm::SourceBank{triarm::Quaternion{0.0, args.alpha_magnitude},
                                 triarm::Quaternion{0.0, args.alpha_magnitude},
                                 triarm::Quaternion{0.0, args.alpha_magnitude}};
  const triarm::SweepParameter parameter = is_t ? triarm::SweepParameter::transmissivity
                                                : triarm::SweepParameter::gain_1;
  const triarm::HomodyneSweepTable table =
      triarm::imperfection_sweep(base, parameter, linspace(lo, hi, args.points), args.ratios);

  triarm::write_text_file(args.output, triarm::homodyne_sweep_json(base, table));

  std::cout << std::left << std::setw(14) << args.parameter << std::right << std::setw(12)
            << "beta/alpha" << std::setw(24) << "kappa" << '\n';
  for (const triarm::HomodyneSweepRow& row : table.rows) {
    std::cout << std::left << std::setw(14) << std::setprecision(6) << std::defaultfloat
              << row.value << std::right << std::setw(12) << row.beta_ratio << std::setw(24)
              << std::setprecision(12) << std::scientific << row.kappa << '\n';
  }
  std::cout << std::defaultfloat << "wrote " << args.output << '\n';
  return kExitOk;
}

struct SqueezingSweepArgs {
  double n_total = 1.0;
  double probability = 4.0 / 9.0;
  double f_min = 0.0;
  double f_max = 1.0;
  std::size_t points = 21;
  std::size_t samples = 100;
  std::string output = "sweep_squeezing.json";
};

void add_sweep_squeezing(CLI::App& app, SqueezingSweepArgs& args) {
  CLI::App* cmd = app.add_subcommand(
      "sweep-squeezing", "fused-estimator MSE over the displacement/squeezing split");
  cmd->add_option("--n-total", args.n_total, "photon budget (default 1)");
  cmd->add_option("--probability", args.probability, "path probability (default 4/9)");
  cmd->add_option("--f-min", args.f_min, "grid start (default 0)");
  cmd->add_option("--f-max", args.f_max, "grid end (default 1)");
  cmd->add_option("--points", args.points, "grid size (default 21)");
  cmd->add_option("--samples", args.samples, "probe samples per estimate (default 100)");
  cmd->add_option("--output", args.output, "output document path");
}

int run_sweep_squeezing(const SqueezingSweepArgs& args) {
  if (args.points == 0) throw triarm::ConfigError("--points must be positive");
  const triarm::SqueezingSweepTable table = triarm::squeezing_sweep(
      args.n_total, args.probability, linspace(args.f_min, args.f_max, args.points),
      args.samples);

  triarm::write_text_file(args.output, triarm::squeezing_sweep_json(table));

  std::cout << std::left << std::setw(10) << "fraction" << std::right << std::setw(24) << "mse"
            << '\n';
  for (std::size_t i = 0; i < table.sweep.points.size(); ++i) {
    const triarm::SplittingSweepPoint& point = table.sweep.points[i];
    std::cout << std::left << std::setw(10) << std::setprecision(4) << std::defaultfloat
              << point.fraction << std::right << std::setw(24) << std::setprecision(12)
              << std::scientific << point.mse
              << (i == table.sweep.argmin ? "  <- minimum" : "") << '\n';
  }
  std::cout << std::defaultfloat << "wrote " << args.output << '\n';
  return kExitOk;
}

struct OracleArgs {
  std::uint64_t seed = 1;
  std::uint64_t draws = 1000000;
  std::uint64_t batches = 2000;
  std::uint64_t batch_samples = 100;
};

void add_oracle(CLI::App& app, OracleArgs& args) {
  CLI::App* cmd =
      app.add_subcommand("oracle", "closed-form estimator variances vs seeded Monte Carlo");
  cmd->add_option("--seed", args.seed, "stream seed (default 1)");
  cmd->add_option("--draws", args.draws, "per-sample draws for the variance rows");
  cmd->add_option("--batches", args.batches, "batches for the fused-probe MSE row");
  cmd->add_option("--batch-samples", args.batch_samples, "samples per fused-probe batch");
}

int run_oracle(const OracleArgs& args) {
  using triarm::PathConfig;
  const auto draws = static_cast<std::size_t>(args.draws);

  struct Row {
    std::string name;
    double closed;
    double empirical;
  };
  std::vector<Row> rows;

  triarm::Rng stream = triarm::make_stream(args.seed, 0);
  rows.push_back({"coherent single-path, per sample",
                  triarm::coherent_probability_variance(PathConfig::single_path, 1),
                  triarm::empirical_coherent_variance(PathConfig::single_path, draws, stream)});
  stream = triarm::make_stream(args.seed, 1);
  rows.push_back({"coherent two-path, per sample",
                  triarm::coherent_probability_variance(PathConfig::two_path, 1),
                  triarm::empirical_coherent_variance(PathConfig::two_path, draws, stream)});
  stream = triarm::make_stream(args.seed, 2);
  rows.push_back({"single-photon single-path, per click",
                  triarm::binomial_probability_variance(1.0 / 9.0, 1),
                  triarm::empirical_binomial_variance(1.0 / 9.0, draws, stream)});
  stream = triarm::make_stream(args.seed, 3);
  rows.push_back({"single-photon two-path, per click",
                  triarm::binomial_probability_variance(4.0 / 9.0, 1),
                  triarm::empirical_binomial_variance(4.0 / 9.0, draws, stream)});

  {
    const double n_total = 1.0;
    const double probability = 4.0 / 9.0;
    const double fraction = 0.5;
    const auto samples = static_cast<std::size_t>(args.batch_samples);
    const triarm::SplittingBudget budget(n_total, fraction);
    const triarm::GaussianMoments moments =
        triarm::displaced_squeezed_moments(budget, probability);
    const triarm::SqueezedEstimate analytic = triarm::combine_estimates(
        triarm::squeezed_estimators(moments, budget, samples));
    stream = triarm::make_stream(args.seed, 4);
    const double empirical = triarm::empirical_fused_mse(
        n_total, probability, fraction, samples, static_cast<std::size_t>(args.batches),
        stream);
    rows.push_back({"fused squeezed probe, f=0.5, N=" + std::to_string(samples),
                    analytic.v_combined, empirical});
  }

  std::cout << std::left << std::setw(40) << "estimator" << std::right << std::setw(16)
            << "closed form" << std::setw(16) << "empirical" << std::setw(10) << "ratio"
            << '\n';
  for (const Row& row : rows) {
    std::cout << std::left << std::setw(40) << row.name << std::right << std::setw(16)
              << std::setprecision(8) << std::defaultfloat << row.closed << std::setw(16)
              << row.empirical << std::setw(10) << std::setprecision(4)
              << row.empirical / row.closed << '\n';
  }
  return kExitOk;
}

int run_selftest_command() {
  const std::vector<triarm::SelftestResult> results = triarm::run_selftest();
  bool all_passed = true;
  for (const triarm::SelftestResult& result : results) {
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << " — "
              << result.detail << '\n';
    all_passed = all_passed && result.passed;
  }
  std::cout << (all_passed ? "selftest passed" : "selftest FAILED") << '\n';
  return all_passed ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-arm interferometer simulator with homodyne readout"};
  app.require_subcommand(1);

  SimulateArgs simulate_args;
  HomodyneSweepArgs homodyne_args;
  SqueezingSweepArgs squeezing_args;
  OracleArgs oracle_args;
  add_simulate(app, simulate_args);
  add_sweep_homodyne(app, homodyne_args);
  add_sweep_squeezing(app, squeezing_args);
  add_oracle(app, oracle_args);
  app.add_subcommand("selftest", "fast exact-algebra smoke checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (app.got_subcommand("simulate")) return run_simulate(app, simulate_args);
    if (app.got_subcommand("sweep-homodyne")) return run_sweep_homodyne(homodyne_args);
    if (app.got_subcommand("sweep-squeezing")) return run_sweep_squeezing(squeezing_args);
    if (app.got_subcommand("oracle")) return run_oracle(oracle_args);
    if (app.got_subcommand("selftest")) return run_selftest_command();
  } catch (const triarm::InsufficientData& e) {
    std::cerr << "insufficient data: " << e.what() << '\n';
    return kExitInsufficientData;
  } catch (const triarm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const triarm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInsufficientData;
  }
  return kExitOk;
}
