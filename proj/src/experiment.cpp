#include "triarm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "triarm/errors.hpp"
#include "triarm/rng.hpp"

namespace triarm {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

/// Type-7 quantile (linear interpolation between closest ranks) of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted.front();
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

double median_of_sorted(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

/// Normalized mean outcome of one configuration slot: subtracted current of
/// the detector model divided by the LO amplitude. At the exactly balanced
/// point the analytically reduced quadrature form is evaluated instead of the
/// general expression; the two agree to machine rounding, but the reduced
/// form keeps the zero-signal background exactly zero.
double slot_center(const Quaternion& alpha, const HomodyneModel& model) {
  if (!alpha.is_complex()) {
    return quaternion_measured_magnitude(alpha, model.lo_phase, model.lo_amplitude) /
           model.lo_amplitude;
  }
  static const double balanced_t = HomodyneModel::ideal(1.0, 0.0).transmissivity;
  if (model.transmissivity == balanced_t && model.gain_1 == model.gain_2) {
    return model.gain_1 * homodyne_mean(alpha, model.lo_phase);
  }
  return general_subtracted_current(alpha, model) / model.lo_amplitude;
}

PhotonNumberSet as_photon_set(const std::array<double, 8>& n, double n_total) {
  return PhotonNumberSet{n[0], n[1], n[2], n[3], n[4], n[5], n[6], n[7], n_total};
}

void mark_filtered(RunRecord& record, const std::string& reason) {
  record.filtered = true;
  if (!record.filter_reason.empty()) record.filter_reason += "; ";
  record.filter_reason += reason;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(std::isfinite(lo_amplitude) && lo_amplitude > 0.0,
          "lo_amplitude must be positive and finite");
  require(std::isfinite(lo_phase), "lo_phase must be finite");
  require(transmissivity > 0.0 && transmissivity < 1.0,
          "transmissivity must lie strictly between 0 and 1");
  require(std::isfinite(gain_1) && gain_1 > 0.0, "gain_1 must be positive and finite");
  require(std::isfinite(gain_2) && gain_2 > 0.0, "gain_2 must be positive and finite");
  require(runs > 0, "runs must be positive");
  require(samples_per_config > 0, "samples_per_config must be positive");
  require(std::isfinite(noise.offset_sigma) && noise.offset_sigma >= 0.0,
          "offset_sigma must be nonnegative");
  require(std::isfinite(noise.drift_sigma) && noise.drift_sigma >= 0.0,
          "drift_sigma must be nonnegative");
  require(noise.lock_loss_probability >= 0.0 && noise.lock_loss_probability <= 1.0,
          "lock_loss_probability must lie in [0, 1]");
  require(std::isfinite(filter.outlier_threshold) && filter.outlier_threshold > 0.0,
          "outlier_threshold must be positive");
}

RunRecord run_experiment(const ExperimentConfig& config, std::size_t run_index) {
  config.validate();

  RunRecord record;
  record.index = run_index;

  // Slot 0 of the run's stream family carries the slow-noise draws. The
  // number of draws is fixed so that changing one noise amplitude never
  // shifts another channel's variates.
  Rng noise_rng = make_stream(config.master_seed, static_cast<std::uint64_t>(run_index), 0);
  const double offset = config.noise.offset_sigma * standard_normal(noise_rng);
  const double drift_slope = config.noise.drift_sigma * standard_normal(noise_rng);
  record.lock_lost = uniform_unit(noise_rng) < config.noise.lock_loss_probability;
  // Always drawn so the stream layout does not depend on the lock outcome.
  const double unlocked_shift = (2.0 * uniform_unit(noise_rng) - 1.0) * kPi;

  const double effective_phase =
      record.lock_lost ? config.lo_phase + unlocked_shift : config.lo_phase;
  const HomodyneModel model{config.lo_amplitude, effective_phase, config.transmissivity,
                            config.gain_1, config.gain_2};
  const auto& patterns = SwitchPattern::canonical();

  std::array<double, 8> mean_square{};  // per-config mean of (value/2)^2
  for (std::size_t k = 0; k < SwitchPattern::kConfigCount; ++k) {
    Rng rng = make_stream(config.master_seed, static_cast<std::uint64_t>(run_index),
                          static_cast<std::uint64_t>(k + 1));
    const Quaternion alpha = output_amplitude(config.bank, patterns[k]);
    const double center = slot_center(alpha, model);

    const double bias = offset + drift_slope * static_cast<double>(k);
    if (config.noise_free) {
      // Every sample equals center + bias exactly, so the moments are exact;
      // a summation loop would only accumulate rounding.
      const double value = center + bias;
      record.config_means[k] = value;
      const double half = value / 2.0;
      mean_square[k] = half * half;
    } else {
      double sum = 0.0;
      double sum_square = 0.0;
      for (std::size_t i = 0; i < config.samples_per_config; ++i) {
        const double value = center + bias + standard_normal(rng);
        sum += value;
        const double half = value / 2.0;
        sum_square += half * half;
      }
      const double n = static_cast<double>(config.samples_per_config);
      record.config_means[k] = sum / n;
      mean_square[k] = sum_square / n;
    }
  }

  const auto corrected = [&](Correction method) {
    std::array<double, 8> out{};
    for (std::size_t k = 0; k < 8; ++k) {
      if (method == Correction::mean) {
        const double d = (record.config_means[k] - record.config_means[0]) / 2.0;
        out[k] = d * d;
      } else {
        out[k] = mean_square[k] - mean_square[0];
      }
    }
    return out;
  };

  const std::array<double, 8> sorkin_numbers = corrected(config.sorkin_correction);
  record.photon_numbers = sorkin_numbers;

  if (record.lock_lost) {
    mark_filtered(record, "lock lost");
    return record;
  }

  {
    const double n_total = sorkin_numbers[1] + sorkin_numbers[2] + sorkin_numbers[3];
    try {
      record.sorkin = sorkin_statistics(as_photon_set(sorkin_numbers, n_total));
    } catch (const Error& error) {
      mark_filtered(record, std::string("sorkin: ") + error.what());
    }
  }
  {
    const std::array<double, 8> peres_numbers = corrected(config.peres_correction);
    const double n_total = peres_numbers[1] + peres_numbers[2] + peres_numbers[3];
    try {
      const PeresCosines c = peres_cosines(as_photon_set(peres_numbers, n_total));
      record.peres = PeresResult{c.cos_bc, c.cos_ca, c.cos_ab,
                                 peres_F(c.cos_bc, c.cos_ca, c.cos_ab)};
    } catch (const Error& error) {
      mark_filtered(record, std::string("peres: ") + error.what());
    }
  }
  try {
    record.glauber = glauber_statistics(record.config_means);
  } catch (const Error& error) {
    mark_filtered(record, std::string("glauber: ") + error.what());
  }

  return record;
}

std::vector<RunRecord> run_campaign(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunRecord> records;
  records.reserve(config.runs);
  for (std::size_t i = 0; i < config.runs; ++i) {
    records.push_back(run_experiment(config, i));
  }
  return records;
}

std::vector<std::size_t> outlier_retained_indices(const std::vector<double>& values,
                                                  double threshold) {
  std::vector<std::size_t> retained;
  retained.reserve(values.size());
  if (values.size() < 2) {
    for (std::size_t i = 0; i < values.size(); ++i) retained.push_back(i);
    return retained;
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double median = median_of_sorted(sorted);
  std::vector<double> deviations(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) deviations[i] = std::abs(values[i] - median);
  std::vector<double> sorted_dev(deviations);
  std::sort(sorted_dev.begin(), sorted_dev.end());
  const double scaled_mad = 1.4826 * median_of_sorted(sorted_dev);
  if (scaled_mad == 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) retained.push_back(i);
    return retained;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (deviations[i] <= threshold * scaled_mad) retained.push_back(i);
  }
  return retained;
}

Histogram freedman_diaconis_histogram(const std::vector<double>& values) {
  if (values.empty()) throw EmptySamples("histogram needs at least one value");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();

  Histogram histogram;
  if (hi == lo) {
    histogram.edges = {lo - 0.5, lo + 0.5};
    histogram.counts = {values.size()};
    return histogram;
  }

  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(values.size()));
  std::size_t bins = 1;
  if (width > 0.0) {
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::size_t>(bins, 1, 1024);
  }

  histogram.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    histogram.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  histogram.counts.assign(bins, 0);
  for (double v : values) {
    const double position = (v - lo) / (hi - lo) * static_cast<double>(bins);
    std::size_t idx = static_cast<std::size_t>(position);
    if (idx >= bins) idx = bins - 1;
    ++histogram.counts[idx];
  }
  return histogram;
}

CampaignSummary aggregate_runs(const std::vector<RunRecord>& records,
                               const FilterPolicy& policy) {
  CampaignSummary summary;
  summary.runs_total = records.size();
  for (const RunRecord& r : records) {
    if (r.lock_lost) {
      ++summary.runs_lock_lost;
    } else if (r.filtered) {
      ++summary.runs_error;
    }
  }

  struct Extractor {
    const char* name;
    double (*get)(const RunRecord&);
    bool (*present)(const RunRecord&);
  };
  static const Extractor extractors[] = {
      {"kappa", [](const RunRecord& r) { return r.sorkin->kappa; },
       [](const RunRecord& r) { return r.sorkin.has_value(); }},
      {"F", [](const RunRecord& r) { return r.peres->f; },
       [](const RunRecord& r) { return r.peres.has_value(); }},
      {"G_AB", [](const RunRecord& r) { return r.glauber->g_ab; },
       [](const RunRecord& r) { return r.glauber.has_value(); }},
      {"G_AC", [](const RunRecord& r) { return r.glauber->g_ac; },
       [](const RunRecord& r) { return r.glauber.has_value(); }},
      {"G_BC", [](const RunRecord& r) { return r.glauber->g_bc; },
       [](const RunRecord& r) { return r.glauber.has_value(); }},
      {"G_ABC", [](const RunRecord& r) { return r.glauber->g_abc; },
       [](const RunRecord& r) { return r.glauber.has_value(); }},
  };

  for (const Extractor& extractor : extractors) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const RunRecord& r : records) {
      if (r.lock_lost || r.filtered) continue;
      if (!extractor.present(r)) continue;
      values.push_back(extractor.get(r));
    }
    const std::vector<std::size_t> retained =
        outlier_retained_indices(values, policy.outlier_threshold);
    if (retained.size() < 2) {
      throw InsufficientData(std::string("fewer than two usable runs for statistic ") +
                             extractor.name);
    }
    std::vector<double> kept;
    kept.reserve(retained.size());
    for (std::size_t idx : retained) kept.push_back(values[idx]);

    // Welford's recurrence: identical inputs accumulate exactly zero spread
    // (the naive two-pass sum would leave rounding residue), and long
    // campaigns avoid cancellation in the second moment.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    for (double v : kept) {
      ++count;
      const double delta = v - mean;
      mean += delta / static_cast<double>(count);
      m2 += delta * (v - mean);
    }
    const double variance = m2 / static_cast<double>(kept.size() - 1);

    StatisticSummary stat;
    stat.name = extractor.name;
    stat.mean = mean;
    stat.stddev = std::sqrt(variance);
    stat.considered = values.size();
    stat.retained = kept.size();
    stat.histogram = freedman_diaconis_histogram(kept);
    summary.statistics.push_back(std::move(stat));
  }
  return summary;
}

HomodyneSweepTable imperfection_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                      const std::vector<double>& grid,
                                      const std::vector<double>& beta_ratios) {
  if (grid.empty() || beta_ratios.empty()) {
    throw std::domain_error("sweep grids must be nonempty");
  }
  if (!base.bank.is_complex()) {
    throw HypercomplexAmplitude("imperfection sweep is defined for complex source amplitudes");
  }
  HomodyneSweepTable table;
  table.parameter = parameter;
  table.alpha_magnitude = qnorm(base.bank.alpha_a);
  if (table.alpha_magnitude <= 0.0) {
    throw ZeroPathPower("imperfection sweep needs a nonzero source amplitude");
  }

  const auto& patterns = SwitchPattern::canonical();
  std::array<Quaternion, 8> outputs;
  for (std::size_t k = 0; k < 8; ++k) outputs[k] = output_amplitude(base.bank, patterns[k]);
  const double n_total = base.bank.total_photon_number();

  table.rows.reserve(beta_ratios.size() * grid.size());
  for (double ratio : beta_ratios) {
    const double beta = ratio * table.alpha_magnitude;
    for (double value : grid) {
      const double t =
          parameter == SweepParameter::transmissivity ? value : base.transmissivity;
      const double g1 = parameter == SweepParameter::gain_1 ? value : base.gain_1;
      const HomodyneModel model{beta, base.lo_phase, t, g1, base.gain_2};

      std::array<double, 8> currents{};
      for (std::size_t k = 0; k < 8; ++k) {
        currents[k] = general_subtracted_current(outputs[k], model);
      }
      // The analyst trusts an ideal balanced detector: calibration factor
      // 2 beta * [2 t sqrt(1-t^2)] * [(g1+g2)/2] evaluated at t = 1/sqrt(2),
      // unit gains, i.e. 2 beta.
      std::array<double, 8> inferred{};
      for (std::size_t k = 0; k < 8; ++k) {
        const double d = (currents[k] - currents[0]) / (2.0 * beta);
        inferred[k] = d * d;
      }
      const SorkinResult sorkin = sorkin_statistics(as_photon_set(inferred, n_total));
      table.rows.push_back({value, ratio, sorkin.kappa});
    }
  }
  return table;
}

SqueezingSweepTable squeezing_sweep(double n_total, double probability,
                                    const std::vector<double>& f_grid, std::size_t samples) {
  SqueezingSweepTable table;
  table.n_total = n_total;
  table.probability = probability;
  table.samples = samples;
  table.sweep = optimal_splitting_sweep(n_total, probability, f_grid, samples);
  return table;
}

}  // namespace triarm
