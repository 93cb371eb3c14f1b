#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "triarm/gaussian.hpp"
#include "triarm/rng.hpp"

namespace triarm {

/// Variance of a click-fraction estimate over n Bernoulli trials: p(1-p)/n.
double binomial_probability_variance(double probability, std::size_t samples);

/// Variance of the square of a Gaussian variable: 2 sigma^4 + 4 sigma^2 mu^2.
double squared_gaussian_variance(double mean, double stddev);

/// Canonical-bank homodyne path configurations for the closed-form
/// per-sample estimator variances.
enum class PathConfig { single_path, two_path };

/// @brief Per-run variance of the coherent-state photon-number estimator.
///
/// For the canonical equal bank the output amplitude is 1/3 (single path) or
/// 2/3 (two paths); each sample estimates the photon number as (x/2)^2, and
/// the estimator variance over n samples is Var[(x/2)^2]/n, evaluated through
/// squared_gaussian_variance rather than hard-coded.
double coherent_probability_variance(PathConfig config, std::size_t samples);

enum class ProbeKind { single_photon, coherent };

/// One row of the probe-versus-probe variance comparison at the canonical
/// working point (path probability 1/9 or 4/9).
struct ProbeComparison {
  ProbeKind probe = ProbeKind::single_photon;
  PathConfig config = PathConfig::single_path;
  std::size_t samples = 1;
  double variance = 0.0;
};

/// Closed-form estimator variance for the chosen probe and path count.
ProbeComparison compare_probe(ProbeKind probe, PathConfig config, std::size_t samples);

/// Empirical per-sample variance of the coherent photon estimator (x/2)^2
/// over the given number of quadrature draws x ~ N(2 alpha_out, 1).
double empirical_coherent_variance(PathConfig config, std::size_t draws, Rng& rng);

/// Empirical per-click variance of the Bernoulli click estimator at the given
/// probability (single-trial analogue of clicks/n).
double empirical_binomial_variance(double probability, std::size_t draws, Rng& rng);

/// @brief Analytic estimates and variances for the two squeezed-probe channels.
///
/// The mean channel (alpha) squares the sample mean; the variance channel (r)
/// inverts the squeezed quadrature variance. Channels missing at the budget
/// boundaries (f = 0 removes alpha, f = 1 removes r) have their flag cleared.
struct SqueezedEstimate {
  double p_alpha = 0.0;
  double v_alpha = 0.0;
  bool has_alpha = false;

  double p_r = 0.0;
  double v_r = 0.0;
  bool has_r = false;

  double weight = 0.0;      ///< inverse-variance weight on the alpha channel
  double p_combined = 0.0;
  double v_combined = 0.0;

  /// Throws DegenerateSqueezing when the variance channel does not exist.
  double r_channel_variance() const;
};

/// @brief Analytic channel estimators from true output moments.
///
/// alpha channel: P ~ (mean_p / 2 alpha_in)^2 with variance equal to the
/// exact squared-Gaussian variance of the mean estimator,
/// (2 s^4 + 4 s^2 mu^2)/(16 alpha_in^4), s^2 = var_p / samples. This is the
/// first-order propagation plus its exact O(1/n^2) completion and remains
/// finite as mu -> 0.
/// r channel: P ~ (1 - var_p)/(1 - e^{-2 r_in}) with variance
/// 2 var_p^2 / ((1 - e^{-2 r_in})^2 samples).
/// Requires samples >= 2 (throws InsufficientData otherwise).
SqueezedEstimate squeezed_estimators(const GaussianMoments& moments,
                                     const SplittingBudget& budget, std::size_t samples);

/// Inverse-variance fusion of the available channels. With both channels,
/// weight = v_r/(v_alpha + v_r) and v_combined = v_alpha v_r/(v_alpha + v_r);
/// a zero-variance channel is returned as-is with full weight instead of
/// dividing by zero.
SqueezedEstimate combine_estimates(SqueezedEstimate estimate);

/// Empirical twin of the analytic channels, for Monte Carlo oracles: the same
/// estimators evaluated on a drawn sample set, fused with the analytic weight.
/// bias_corrected subtracts the known sampling-noise floor s^2/n from the
/// squared mean before dividing (off by default).
struct ProbeSampleEstimate {
  double p_alpha = 0.0;
  double p_r = 0.0;
  double p_combined = 0.0;
};
ProbeSampleEstimate estimate_probability_from_samples(const std::vector<double>& samples,
                                                      const SplittingBudget& budget,
                                                      const SqueezedEstimate& analytic,
                                                      bool bias_corrected = false);

struct SplittingSweepPoint {
  double fraction = 0.0;
  double mse = 0.0;
};

struct SplittingSweep {
  std::vector<SplittingSweepPoint> points;
  std::size_t argmin = 0;
  /// Which alpha-channel variance rule produced the curve (recorded so sweep
  /// artifacts are self-describing).
  std::string alpha_variance_form;
};

/// @brief Fused-estimator MSE across a grid of splitting fractions.
///
/// Boundary handling: f = 0 and (for probability 0) interior points report
/// the variance channel alone; f = 1 reports the mean channel alone.
SplittingSweep optimal_splitting_sweep(double n_total, double probability,
                                       const std::vector<double>& f_grid, std::size_t samples);

/// @brief Brute-force mean squared error of the fused probe estimator.
///
/// Repeatedly draws `samples` p-quadrature outcomes from the displaced-squeezed
/// output moments, applies estimate_probability_from_samples with analytic
/// weights, and averages (estimate - probability)^2 over the batches.
double empirical_fused_mse(double n_total, double probability, double fraction,
                           std::size_t samples, std::size_t batches, Rng& rng);

}  // namespace triarm
