#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "triarm/errors.hpp"
#include "triarm/gaussian.hpp"
#include "triarm/rng.hpp"
#include "triarm/variance.hpp"

namespace {

using triarm::binomial_probability_variance;
using triarm::coherent_probability_variance;
using triarm::combine_estimates;
using triarm::compare_probe;
using triarm::displaced_squeezed_moments;
using triarm::empirical_binomial_variance;
using triarm::empirical_coherent_variance;
using triarm::empirical_fused_mse;
using triarm::estimate_probability_from_samples;
using triarm::GaussianMoments;
using triarm::make_stream;
using triarm::optimal_splitting_sweep;
using triarm::PathConfig;
using triarm::ProbeKind;
using triarm::ProbeSampleEstimate;
using triarm::SplittingBudget;
using triarm::SplittingSweep;
using triarm::squared_gaussian_variance;
using triarm::SqueezedEstimate;
using triarm::squeezed_estimators;

std::vector<double> unit_grid(std::size_t points) {
  std::vector<double> grid;
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return grid;
}

}  // namespace

TEST_CASE("click-fraction variance follows the binomial law") {
  CHECK(binomial_probability_variance(1.0 / 9.0, 1) ==
        doctest::Approx(8.0 / 81.0).epsilon(1e-15));
  CHECK(binomial_probability_variance(4.0 / 9.0, 1) ==
        doctest::Approx(20.0 / 81.0).epsilon(1e-15));
  CHECK(binomial_probability_variance(0.0, 10) == 0.0);
  CHECK(binomial_probability_variance(1.0, 10) == 0.0);
  CHECK_THROWS_AS(binomial_probability_variance(-0.1, 10), std::domain_error);
  CHECK_THROWS_AS(binomial_probability_variance(1.1, 10), std::domain_error);
  CHECK_THROWS_AS(binomial_probability_variance(0.5, 0), std::domain_error);
}

TEST_CASE("variance of a squared gaussian variable") {
  CHECK(squared_gaussian_variance(0.0, 1.0) == 2.0);
  CHECK(squared_gaussian_variance(3.0, 0.0) == 0.0);
  // 2 sigma^4 + 4 sigma^2 mu^2 at sigma = 1, mu = 2/3: 2 + 16/9 = 34/9.
  CHECK(squared_gaussian_variance(2.0 / 3.0, 1.0) ==
        doctest::Approx(34.0 / 9.0).epsilon(1e-15));
  CHECK(squared_gaussian_variance(-2.0, 0.5) ==
        doctest::Approx(2.0 * 0.0625 + 4.0 * 0.25 * 4.0).epsilon(1e-15));
}

TEST_CASE("coherent-probe estimator variances at the canonical working point") {
  // Single path: Var[(x/2)^2] with x ~ N(2/3, 1) is (2 + 4*(2/3)^2)/16 = 17/72.
  CHECK(coherent_probability_variance(PathConfig::single_path, 1) ==
        doctest::Approx(17.0 / 72.0).epsilon(1e-12));
  // Two paths: x ~ N(4/3, 1) gives (2 + 64/9)/16 = 41/72.
  CHECK(coherent_probability_variance(PathConfig::two_path, 1) ==
        doctest::Approx(41.0 / 72.0).epsilon(1e-12));

  // Averaging n samples scales the variance by exactly 1/n.
  CHECK(coherent_probability_variance(PathConfig::single_path, 50) ==
        coherent_probability_variance(PathConfig::single_path, 1) / 50.0);
  CHECK_THROWS_AS(coherent_probability_variance(PathConfig::single_path, 0),
                  std::domain_error);
}

TEST_CASE("probe comparison puts the coherent probe at a fixed disadvantage") {
  const double single_ratio = compare_probe(ProbeKind::coherent, PathConfig::single_path, 1)
                                  .variance /
                              compare_probe(ProbeKind::single_photon, PathConfig::single_path, 1)
                                  .variance;
  CHECK(single_ratio == doctest::Approx(153.0 / 64.0).epsilon(1e-12));

  const double two_ratio = compare_probe(ProbeKind::coherent, PathConfig::two_path, 1)
                               .variance /
                           compare_probe(ProbeKind::single_photon, PathConfig::two_path, 1)
                               .variance;
  CHECK(two_ratio == doctest::Approx(369.0 / 160.0).epsilon(1e-12));

  // The ratio is independent of the sample count.
  const double ratio_at_1000 =
      compare_probe(ProbeKind::coherent, PathConfig::single_path, 1000).variance /
      compare_probe(ProbeKind::single_photon, PathConfig::single_path, 1000).variance;
  CHECK(ratio_at_1000 == doctest::Approx(153.0 / 64.0).epsilon(1e-12));

  const auto row = compare_probe(ProbeKind::single_photon, PathConfig::two_path, 7);
  CHECK(row.probe == ProbeKind::single_photon);
  CHECK(row.config == PathConfig::two_path);
  CHECK(row.samples == 7);
}

TEST_CASE("empirical estimator variances agree with the closed forms") {
  auto rng_coherent = make_stream(51, 0);
  const double single = empirical_coherent_variance(PathConfig::single_path, 1000000,
                                                    rng_coherent);
  CHECK(std::abs(single / (17.0 / 72.0) - 1.0) <= 0.02);

  auto rng_two = make_stream(51, 1);
  const double two = empirical_coherent_variance(PathConfig::two_path, 1000000, rng_two);
  CHECK(std::abs(two / (41.0 / 72.0) - 1.0) <= 0.02);

  auto rng_click_single = make_stream(51, 2);
  const double click_single =
      empirical_binomial_variance(1.0 / 9.0, 1000000, rng_click_single);
  CHECK(std::abs(click_single / (8.0 / 81.0) - 1.0) <= 0.03);

  auto rng_click_two = make_stream(51, 3);
  const double click_two = empirical_binomial_variance(4.0 / 9.0, 1000000, rng_click_two);
  CHECK(std::abs(click_two / (20.0 / 81.0) - 1.0) <= 0.03);
}

TEST_CASE("squeezed-probe channels at the even-split working point") {
  const SplittingBudget budget(1.0, 0.5);
  const GaussianMoments moments = displaced_squeezed_moments(budget, 4.0 / 9.0);
  const SqueezedEstimate e = combine_estimates(squeezed_estimators(moments, budget, 100));

  REQUIRE(e.has_alpha);
  REQUIRE(e.has_r);
  // Both channels are unbiased at the true moments.
  CHECK(e.p_alpha == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(e.p_r == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(e.p_combined == doctest::Approx(4.0 / 9.0).epsilon(1e-12));

  // Regression-frozen channel variances and fusion at n = 100.
  CHECK(e.v_alpha == doctest::Approx(0.006019593547883963).epsilon(1e-13));
  CHECK(e.v_r == doctest::Approx(0.016986229292360485).epsilon(1e-13));
  CHECK(e.weight == doctest::Approx(0.73834478385386).epsilon(1e-13));
  CHECK(e.v_combined == doctest::Approx(0.004444535497000476).epsilon(1e-13));

  // Internal consistency of the fusion is exact.
  CHECK(e.weight == e.v_r / (e.v_alpha + e.v_r));
  CHECK(e.v_combined == e.v_alpha * e.v_r / (e.v_alpha + e.v_r));
  CHECK(e.v_combined <= std::min(e.v_alpha, e.v_r));
  CHECK(e.r_channel_variance() == e.v_r);
}

TEST_CASE("channel variances scale as one over the sample count") {
  const SplittingBudget budget(1.0, 0.5);
  const GaussianMoments moments = displaced_squeezed_moments(budget, 4.0 / 9.0);
  const SqueezedEstimate at_100 = squeezed_estimators(moments, budget, 100);
  const SqueezedEstimate at_10000 = squeezed_estimators(moments, budget, 10000);

  // The r channel is exactly 1/n; the alpha channel carries an extra
  // quartic-in-s term (2 s^4 with s^2 = var/n) that decays as 1/n^2, so a
  // hundredfold sample increase shrinks it slightly faster than 1/100.
  CHECK(at_10000.v_r == doctest::Approx(at_100.v_r / 100.0).epsilon(1e-12));
  CHECK(at_10000.v_alpha < at_100.v_alpha / 100.0);
  CHECK(at_10000.v_alpha > 0.99 * at_100.v_alpha / 100.0);
}

TEST_CASE("budget boundaries drop the corresponding channel") {
  const double p = 4.0 / 9.0;

  const SplittingBudget all_displacement(1.0, 1.0);
  const SqueezedEstimate alpha_only = squeezed_estimators(
      displaced_squeezed_moments(all_displacement, p), all_displacement, 100);
  CHECK(alpha_only.has_alpha);
  CHECK_FALSE(alpha_only.has_r);
  CHECK_THROWS_AS(alpha_only.r_channel_variance(), triarm::DegenerateSqueezing);
  const SqueezedEstimate alpha_combined = combine_estimates(alpha_only);
  CHECK(alpha_combined.weight == 1.0);
  CHECK(alpha_combined.p_combined == alpha_only.p_alpha);
  CHECK(alpha_combined.v_combined == alpha_only.v_alpha);

  const SplittingBudget all_squeezing(1.0, 0.0);
  const SqueezedEstimate r_only = squeezed_estimators(
      displaced_squeezed_moments(all_squeezing, p), all_squeezing, 100);
  CHECK_FALSE(r_only.has_alpha);
  CHECK(r_only.has_r);
  const SqueezedEstimate r_combined = combine_estimates(r_only);
  CHECK(r_combined.weight == 0.0);
  CHECK(r_combined.p_combined == r_only.p_r);

  CHECK_THROWS_AS(squeezed_estimators(displaced_squeezed_moments(all_squeezing, p),
                                      all_squeezing, 1),
                  triarm::InsufficientData);
  CHECK_THROWS_AS(combine_estimates(SqueezedEstimate{}), triarm::DegenerateSqueezing);
}

TEST_CASE("displacement-only variance matches the squared-gaussian closed form") {
  // With the whole budget in the displacement the channel must reproduce the
  // coherent-probe law Var[(m/2)^2] for m ~ N(2 sqrt(P), 1/n) exactly.
  const std::size_t n = 250;
  const SplittingBudget budget(1.0, 1.0);
  const GaussianMoments moments = displaced_squeezed_moments(budget, 1.0 / 9.0);
  const SqueezedEstimate e = squeezed_estimators(moments, budget, n);
  const double expected =
      squared_gaussian_variance(2.0 / 3.0, std::sqrt(1.0 / static_cast<double>(n))) / 16.0;
  CHECK(e.v_alpha == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("inverse-variance fusion worked example") {
  SqueezedEstimate e;
  e.has_alpha = true;
  e.p_alpha = 0.5;
  e.v_alpha = 2.0;
  e.has_r = true;
  e.p_r = 0.5;
  e.v_r = 1.0;
  const SqueezedEstimate fused = combine_estimates(e);
  CHECK(fused.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(fused.v_combined == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(fused.p_combined == doctest::Approx(0.5).epsilon(1e-15));

  // Equal variances split the weight evenly and halve the variance.
  e.v_alpha = 1.0;
  const SqueezedEstimate even = combine_estimates(e);
  CHECK(even.weight == 0.5);
  CHECK(even.v_combined == 0.5);

  // A zero-variance channel is taken verbatim.
  e.v_alpha = 0.0;
  e.p_alpha = 0.25;
  const SqueezedEstimate exact = combine_estimates(e);
  CHECK(exact.weight == 1.0);
  CHECK(exact.p_combined == 0.25);
  CHECK(exact.v_combined == 0.0);
}

TEST_CASE("sample-based probability estimates on exact inputs") {
  // Two symmetric samples make the mean and variance exact, so the estimator
  // arithmetic can be pinned down bitwise.
  const std::vector<double> samples{0.25, 0.75};  // mean 0.5, variance 0.125

  SqueezedEstimate analytic;
  analytic.has_alpha = true;

  const SplittingBudget displacement_only(1.0, 1.0);
  const ProbeSampleEstimate plain =
      estimate_probability_from_samples(samples, displacement_only, analytic);
  CHECK(plain.p_alpha == 0.0625);  // (0.5^2) / 4
  CHECK(plain.p_combined == 0.0625);

  const ProbeSampleEstimate corrected =
      estimate_probability_from_samples(samples, displacement_only, analytic, true);
  CHECK(corrected.p_alpha == (0.25 - 0.0625) / 4.0);  // variance floor removed

  SqueezedEstimate r_analytic;
  r_analytic.has_r = true;
  const SplittingBudget squeezing_only(1.0, 0.0);
  const ProbeSampleEstimate r_estimate =
      estimate_probability_from_samples(samples, squeezing_only, r_analytic);
  const double depth = 1.0 - std::exp(-2.0 * squeezing_only.r_in());
  CHECK(r_estimate.p_r == (1.0 - 0.125) / depth);
  CHECK(r_estimate.p_combined == r_estimate.p_r);

  SqueezedEstimate both;
  both.has_alpha = true;
  both.has_r = true;
  both.weight = 0.25;
  const SplittingBudget mixed(1.0, 0.5);
  const ProbeSampleEstimate fused =
      estimate_probability_from_samples(samples, mixed, both);
  CHECK(fused.p_combined == 0.25 * fused.p_alpha + 0.75 * fused.p_r);

  CHECK_THROWS_AS(
      estimate_probability_from_samples(std::vector<double>{1.0}, mixed, analytic),
      triarm::InsufficientData);
}

TEST_CASE("splitting sweep finds the interior optimum") {
  const SplittingSweep sweep = optimal_splitting_sweep(1.0, 4.0 / 9.0, unit_grid(21), 100);
  REQUIRE(sweep.points.size() == 21);
  CHECK(sweep.alpha_variance_form == "squared-gaussian-mean");

  CHECK(sweep.points[sweep.argmin].fraction == 0.85);

  // Regression-frozen fused MSE values at n = 100.
  CHECK(sweep.points[0].mse == doctest::Approx(0.011633076797698502).epsilon(1e-13));
  CHECK(sweep.points[10].mse == doctest::Approx(0.004444535497000476).epsilon(1e-13));
  CHECK(sweep.points[17].mse == doctest::Approx(0.0036528379762810555).epsilon(1e-13));
  CHECK(sweep.points[20].mse == doctest::Approx(0.004456944444444446).epsilon(1e-13));

  // The optimum beats both pure strategies.
  CHECK(sweep.points[sweep.argmin].mse < sweep.points[0].mse);
  CHECK(sweep.points[sweep.argmin].mse < sweep.points[20].mse);

  // Fusion never loses to the better single channel anywhere on the grid.
  for (const auto& point : sweep.points) {
    const SplittingBudget budget(1.0, point.fraction);
    const SqueezedEstimate e = combine_estimates(squeezed_estimators(
        displaced_squeezed_moments(budget, 4.0 / 9.0), budget, 100));
    if (e.has_alpha && e.has_r) {
      CHECK(point.mse <= std::min(e.v_alpha, e.v_r) * (1.0 + 1e-15));
    }
  }

  CHECK_THROWS_AS(optimal_splitting_sweep(1.0, 0.5, std::vector<double>{}, 100),
                  std::domain_error);
}

TEST_CASE("splitting sweep at zero probability reports the variance channel") {
  const SplittingSweep sweep = optimal_splitting_sweep(1.0, 0.0, unit_grid(11), 100);
  for (std::size_t i = 0; i + 1 < sweep.points.size(); ++i) {
    const SplittingBudget budget(1.0, sweep.points[i].fraction);
    const double depth = 1.0 - std::exp(-2.0 * budget.r_in());
    const double expected = 2.0 / (depth * depth * 100.0);  // var_p = 1 at P = 0
    CHECK(sweep.points[i].mse == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("monte carlo fused error agrees with the analytic curve") {
  auto rng = make_stream(52, 0);
  const double empirical = empirical_fused_mse(1.0, 4.0 / 9.0, 0.5, 100, 1500, rng);
  const double analytic = 0.004444535497000476;
  // The empirical MSE carries the O(1/n) estimator bias on top of the
  // variance, so the ratio sits slightly above 1.
  CHECK(empirical / analytic >= 0.85);
  CHECK(empirical / analytic <= 1.25);

  CHECK_THROWS_AS(empirical_fused_mse(1.0, 0.5, 0.5, 100, 0, rng), std::domain_error);
}
