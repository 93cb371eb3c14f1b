#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triarm/homodyne.hpp"
#include "triarm/interferometer.hpp"
#include "triarm/statistics.hpp"
#include "triarm/variance.hpp"

namespace triarm {

/// Slow-noise and dropout model applied per run.
struct NoiseModel {
  double offset_sigma = 0.0;           ///< per-run constant DC offset ~ N(0, sigma^2)
  double drift_sigma = 0.0;            ///< per-run linear drift slope across config slots
  double lock_loss_probability = 0.0;  ///< chance a run loses phase lock entirely

  bool operator==(const NoiseModel&) const = default;
};

struct FilterPolicy {
  double outlier_threshold = 5.0;  ///< in scaled-MAD units around the ensemble median

  bool operator==(const FilterPolicy&) const = default;
};

/// @brief Full description of a simulated measurement campaign.
struct ExperimentConfig {
  SourceBank bank{Quaternion{0.0, 0.5773502691896258},
                  Quaternion{0.0, 0.5773502691896258},
                  Quaternion{0.0, 0.5773502691896258}};

  double lo_amplitude = 100.0;
  double lo_phase = kPi / 2.0;
  double transmissivity = 0.7071067811865476;
  double gain_1 = 1.0;
  double gain_2 = 1.0;

  std::size_t runs = 500;
  std::size_t samples_per_config = 10000;
  Correction sorkin_correction = Correction::photon;
  Correction peres_correction = Correction::mean;
  bool noise_free = false;  ///< debug: outcome variance forced to zero

  NoiseModel noise;
  FilterPolicy filter;

  std::uint64_t master_seed = 0;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// @brief One run: eight configurations measured back to back.
///
/// Derived statistics are absent when the run lost lock or a statistic
/// raised a degeneracy error; such runs carry the filtered flag and a reason.
struct RunRecord {
  std::size_t index = 0;
  std::array<double, 8> config_means{};     ///< raw p-quadrature means, canonical order
  std::array<double, 8> photon_numbers{};   ///< corrected estimates (sorkin method)
  std::optional<SorkinResult> sorkin;
  std::optional<PeresResult> peres;
  std::optional<GlauberResult> glauber;
  bool lock_lost = false;
  bool filtered = false;
  std::string filter_reason;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

struct StatisticSummary {
  std::string name;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t considered = 0;  ///< usable values entering the outlier filter
  std::size_t retained = 0;    ///< values kept by the outlier filter
  Histogram histogram;
};

struct CampaignSummary {
  std::size_t runs_total = 0;
  std::size_t runs_lock_lost = 0;
  std::size_t runs_error = 0;
  std::vector<StatisticSummary> statistics;  ///< kappa, F, G_AB, G_AC, G_BC, G_ABC
};

/// Simulate one run. Deterministic: all draws come from streams derived from
/// (master_seed, run_index, slot), so runs are independent of evaluation order.
RunRecord run_experiment(const ExperimentConfig& config, std::size_t run_index);

/// All runs of the campaign, in index order.
std::vector<RunRecord> run_campaign(const ExperimentConfig& config);

/// Indices of values kept by the scaled-MAD outlier filter. With fewer than
/// two values, or zero spread, everything is kept.
std::vector<std::size_t> outlier_retained_indices(const std::vector<double>& values,
                                                  double threshold);

/// Freedman-Diaconis bin edges and counts (falls back to one bin when the
/// interquartile range vanishes).
Histogram freedman_diaconis_histogram(const std::vector<double>& values);

/// @brief Ensemble statistics over the retained runs, per statistic.
///
/// Lock-lost and errored runs are dropped first; the outlier filter is then
/// applied per statistic, so retained counts may differ between statistics.
/// Throws InsufficientData when fewer than two usable values remain anywhere.
CampaignSummary aggregate_runs(const std::vector<RunRecord>& records,
                               const FilterPolicy& policy);

enum class SweepParameter { transmissivity, gain_1 };

struct HomodyneSweepRow {
  double value = 0.0;       ///< swept parameter value
  double beta_ratio = 0.0;  ///< LO amplitude / per-source amplitude
  double kappa = 0.0;
};

struct HomodyneSweepTable {
  SweepParameter parameter = SweepParameter::transmissivity;
  double alpha_magnitude = 0.0;
  std::vector<HomodyneSweepRow> rows;  ///< ratio-major, then grid order
};

/// @brief Apparent third-order violation produced by detector miscalibration.
///
/// Noise-free: for each grid value and LO ratio, the exact subtracted
/// currents of the eight configurations are pushed through the *ideal*
/// calibration, inferred <n> = ((D_cfg - D_none)/(2 beta 2 t sqrt(1-t^2)
/// (g1+g2)/2))^2, and kappa of the inferred photon numbers is reported.
/// The non-swept detector parameters come from base.
HomodyneSweepTable imperfection_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                      const std::vector<double>& grid,
                                      const std::vector<double>& beta_ratios);

struct SqueezingSweepTable {
  double n_total = 0.0;
  double probability = 0.0;
  std::size_t samples = 0;
  SplittingSweep sweep;
};

/// Splitting-fraction sweep packaged with its inputs for serialization.
SqueezingSweepTable squeezing_sweep(double n_total, double probability,
                                    const std::vector<double>& f_grid, std::size_t samples);

}  // namespace triarm
