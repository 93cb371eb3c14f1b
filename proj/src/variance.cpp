#include "triarm/variance.hpp"

#include <cmath>
#include <stdexcept>

#include "triarm/errors.hpp"

namespace triarm {

namespace {
constexpr const char* kAlphaVarianceForm = "squared-gaussian-mean";
}

double binomial_probability_variance(double probability, std::size_t samples) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::domain_error("probability must lie in [0, 1]");
  }
  if (samples == 0) throw std::domain_error("sample count must be positive");
  return probability * (1.0 - probability) / static_cast<double>(samples);
}

double squared_gaussian_variance(double mean, double stddev) {
  const double s2 = stddev * stddev;
  return 2.0 * s2 * s2 + 4.0 * s2 * mean * mean;
}

double coherent_probability_variance(PathConfig config, std::size_t samples) {
  if (samples == 0) throw std::domain_error("sample count must be positive");
  // Canonical equal bank: output amplitude 1/3 for one path, 2/3 for two.
  const double alpha_out = config == PathConfig::single_path ? 1.0 / 3.0 : 2.0 / 3.0;
  const double per_sample = squared_gaussian_variance(2.0 * alpha_out, 1.0) / 16.0;
  return per_sample / static_cast<double>(samples);
}

ProbeComparison compare_probe(ProbeKind probe, PathConfig config, std::size_t samples) {
  ProbeComparison row;
  row.probe = probe;
  row.config = config;
  row.samples = samples;
  if (probe == ProbeKind::single_photon) {
    const double p = config == PathConfig::single_path ? 1.0 / 9.0 : 4.0 / 9.0;
    row.variance = binomial_probability_variance(p, samples);
  } else {
    row.variance = coherent_probability_variance(config, samples);
  }
  return row;
}

double empirical_coherent_variance(PathConfig config, std::size_t draws, Rng& rng) {
  if (draws < 2) throw std::domain_error("need at least two draws");
  const double alpha_out = config == PathConfig::single_path ? 1.0 / 3.0 : 2.0 / 3.0;
  const double mean_x = 2.0 * alpha_out;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = mean_x + standard_normal(rng);
    const double half = x / 2.0;
    const double estimate = half * half;
    sum += estimate;
    sum_sq += estimate * estimate;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  return (sum_sq - n * mean * mean) / (n - 1.0);
}

double empirical_binomial_variance(double probability, std::size_t draws, Rng& rng) {
  if (draws < 2) throw std::domain_error("need at least two draws");
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::domain_error("probability must lie in [0, 1]");
  }
  std::size_t clicks = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    if (uniform_unit(rng) < probability) ++clicks;
  }
  const double n = static_cast<double>(draws);
  const double mean = static_cast<double>(clicks) / n;
  // Clicks are 0/1, so sum of squares equals the click count.
  return (static_cast<double>(clicks) - n * mean * mean) / (n - 1.0);
}

double SqueezedEstimate::r_channel_variance() const {
  if (!has_r) {
    throw DegenerateSqueezing("variance channel undefined: the probe carries no squeezing");
  }
  return v_r;
}

SqueezedEstimate squeezed_estimators(const GaussianMoments& moments,
                                     const SplittingBudget& budget, std::size_t samples) {
  if (samples < 2) {
    throw InsufficientData("squeezed estimators need at least two samples");
  }
  const double n = static_cast<double>(samples);
  const double a = budget.alpha_in();
  const double r = budget.r_in();
  const double mu = moments.mean_p;
  const double v = moments.var_p;

  SqueezedEstimate e;
  if (a > 0.0) {
    const double half = mu / (2.0 * a);
    e.p_alpha = half * half;
    // Exact variance of (m/2a)^2 for Gaussian sample mean m with variance v/n.
    const double a2 = a * a;
    e.v_alpha = squared_gaussian_variance(mu, std::sqrt(v / n)) / (16.0 * a2 * a2);
    e.has_alpha = true;
  }
  if (r > 0.0) {
    const double depth = 1.0 - std::exp(-2.0 * r);
    e.p_r = (1.0 - v) / depth;
    e.v_r = 2.0 * v * v / (depth * depth * n);
    e.has_r = true;
  }
  return e;
}

SqueezedEstimate combine_estimates(SqueezedEstimate e) {
  if (e.has_alpha && !e.has_r) {
    e.weight = 1.0;
    e.p_combined = e.p_alpha;
    e.v_combined = e.v_alpha;
    return e;
  }
  if (e.has_r && !e.has_alpha) {
    e.weight = 0.0;
    e.p_combined = e.p_r;
    e.v_combined = e.v_r;
    return e;
  }
  if (!e.has_alpha && !e.has_r) {
    throw DegenerateSqueezing("no estimator channel available to combine");
  }
  // A zero-variance channel is already exact: return it rather than divide by zero.
  if (e.v_alpha == 0.0) {
    e.weight = 1.0;
    e.p_combined = e.p_alpha;
    e.v_combined = 0.0;
    return e;
  }
  if (e.v_r == 0.0) {
    e.weight = 0.0;
    e.p_combined = e.p_r;
    e.v_combined = 0.0;
    return e;
  }
  e.weight = e.v_r / (e.v_alpha + e.v_r);
  e.p_combined = e.weight * e.p_alpha + (1.0 - e.weight) * e.p_r;
  e.v_combined = e.v_alpha * e.v_r / (e.v_alpha + e.v_r);
  return e;
}

ProbeSampleEstimate estimate_probability_from_samples(const std::vector<double>& samples,
                                                      const SplittingBudget& budget,
                                                      const SqueezedEstimate& analytic,
                                                      bool bias_corrected) {
  if (samples.size() < 2) {
    throw InsufficientData("empirical probe estimate needs at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= n - 1.0;

  ProbeSampleEstimate out;
  const double a = budget.alpha_in();
  const double r = budget.r_in();
  if (analytic.has_alpha) {
    double numerator = mean * mean;
    if (bias_corrected) numerator -= var / n;  // remove the known sampling-noise floor
    out.p_alpha = numerator / (4.0 * a * a);
  }
  if (analytic.has_r) {
    out.p_r = (1.0 - var) / (1.0 - std::exp(-2.0 * r));
  }
  if (analytic.has_alpha && analytic.has_r) {
    out.p_combined = analytic.weight * out.p_alpha + (1.0 - analytic.weight) * out.p_r;
  } else if (analytic.has_alpha) {
    out.p_combined = out.p_alpha;
  } else {
    out.p_combined = out.p_r;
  }
  return out;
}

SplittingSweep optimal_splitting_sweep(double n_total, double probability,
                                       const std::vector<double>& f_grid, std::size_t samples) {
  if (f_grid.empty()) throw std::domain_error("splitting sweep needs a nonempty grid");
  SplittingSweep sweep;
  sweep.alpha_variance_form = kAlphaVarianceForm;
  sweep.points.reserve(f_grid.size());
  for (double f : f_grid) {
    const SplittingBudget budget(n_total, f);
    const GaussianMoments moments = displaced_squeezed_moments(budget, probability);
    SqueezedEstimate e = squeezed_estimators(moments, budget, samples);
    if (probability == 0.0 && e.has_r) {
      // The mean channel carries no signal at P = 0: report the variance
      // channel alone on interior points.
      e.has_alpha = false;
    }
    e = combine_estimates(e);
    sweep.points.push_back({f, e.v_combined});
  }
  sweep.argmin = 0;
  for (std::size_t i = 1; i < sweep.points.size(); ++i) {
    if (sweep.points[i].mse < sweep.points[sweep.argmin].mse) sweep.argmin = i;
  }
  return sweep;
}

double empirical_fused_mse(double n_total, double probability, double fraction,
                           std::size_t samples, std::size_t batches, Rng& rng) {
  if (batches == 0) throw std::domain_error("batch count must be positive");
  const SplittingBudget budget(n_total, fraction);
  const GaussianMoments moments = displaced_squeezed_moments(budget, probability);
  SqueezedEstimate analytic = squeezed_estimators(moments, budget, samples);
  if (probability == 0.0 && analytic.has_r) analytic.has_alpha = false;
  analytic = combine_estimates(analytic);

  const double stddev = std::sqrt(moments.var_p);
  std::vector<double> draws(samples);
  double total = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < samples; ++i) {
      draws[i] = moments.mean_p + stddev * standard_normal(rng);
    }
    const ProbeSampleEstimate estimate =
        estimate_probability_from_samples(draws, budget, analytic);
    const double error = estimate.p_combined - probability;
    total += error * error;
  }
  return total / static_cast<double>(batches);
}

}  // namespace triarm
