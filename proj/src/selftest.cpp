#include "triarm/selftest.hpp"

#include <cmath>

#include "triarm/homodyne.hpp"
#include "triarm/interferometer.hpp"
#include "triarm/quaternion.hpp"
#include "triarm/report.hpp"
#include "triarm/statistics.hpp"
#include "triarm/variance.hpp"

namespace triarm {

namespace {

constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
constexpr Quaternion kI{0.0, 1.0, 0.0, 0.0};
constexpr Quaternion kJ{0.0, 0.0, 1.0, 0.0};
constexpr Quaternion kK{0.0, 0.0, 0.0, 1.0};

void check(std::vector<SelftestResult>& results, const std::string& name, bool passed,
           const std::string& detail) {
  results.push_back({name, passed, detail});
}

double rel_diff(double actual, double expected) {
  const double scale = std::abs(expected);
  return scale > 0.0 ? std::abs(actual - expected) / scale : std::abs(actual - expected);
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> results;

  {
    const Quaternion minus_one = -1.0 * kOne;
    const bool squares = qmul(kI, kI) == minus_one && qmul(kJ, kJ) == minus_one &&
                         qmul(kK, kK) == minus_one;
    const bool triple = qmul(kI, kJ, kK) == minus_one;
    check(results, "quaternion defining relations", squares && triple,
          "i^2 = j^2 = k^2 = ijk = -1, compared bitwise");
  }
  {
    const Quaternion product = qmul(kI + kJ, kI - kJ);
    const bool ok = product == -2.0 * kK;
    check(results, "quaternion worked product", ok,
          "(i+j)(i-j) = -2k; got (" + format_double(product.a) + ", " +
              format_double(product.b) + ", " + format_double(product.c) + ", " +
              format_double(product.d) + ")");
  }
  {
    const Quaternion u{0.3, -1.2, 0.7, 2.1};
    const Quaternion v{-0.8, 0.5, -0.4, 1.6};
    const double lhs = norm_squared(qmul(u, v));
    const double rhs = norm_squared(u) * norm_squared(v);
    const double err = rel_diff(lhs, rhs);
    check(results, "norm multiplicativity", err <= 1e-12,
          "|uv|^2 vs |u|^2 |v|^2 relative error " + format_double(err));
  }
  {
    const double s = 0.5773502691896258;
    const SourceBank bank{Quaternion{0.0, s}, Quaternion{0.0, s}, Quaternion{0.0, s}};
    const SorkinResult sorkin = sorkin_statistics(config_photon_numbers(bank));
    const bool ok = std::abs(sorkin.epsilon) <= 1e-12 && std::abs(sorkin.kappa) <= 1.5e-12;
    check(results, "third-order interference closure", ok,
          "equal complex bank: epsilon = " + format_double(sorkin.epsilon) +
              ", kappa = " + format_double(sorkin.kappa));
  }
  {
    const SourceBank bank{qmul(qexp(Quaternion{0.0, 0.4}), Quaternion{0.0, 0.5773502691896258}),
                          qmul(qexp(Quaternion{0.0, -1.1}), Quaternion{0.0, 0.5773502691896258}),
                          qmul(qexp(Quaternion{0.0, 2.3}), Quaternion{0.0, 0.5773502691896258})};
    const PeresCosines c = peres_cosines(config_photon_numbers(bank));
    const double f = peres_F(c.cos_bc, c.cos_ca, c.cos_ab);
    check(results, "complex phase-triangle closure", std::abs(f - 1.0) <= 1e-10,
          "dephased complex bank: F = " + format_double(f));
  }
  {
    const SourceBank bank{kI, kJ, kK};
    const PeresCosines c = peres_cosines(config_photon_numbers(bank));
    const double f = peres_F(c.cos_bc, c.cos_ca, c.cos_ab);
    const bool ok = c.cos_bc == 0.0 && c.cos_ca == 0.0 && c.cos_ab == 0.0 && f == 0.0;
    check(results, "orthogonal-axis bank F", ok,
          "bank (i, j, k): cosines (" + format_double(c.cos_bc) + ", " +
              format_double(c.cos_ca) + ", " + format_double(c.cos_ab) +
              "), F = " + format_double(f));
  }
  {
    const Quaternion alpha{0.37, -0.82};
    const double phi = 0.61;
    const double beta = 250.0;
    const double general = general_subtracted_current(alpha, HomodyneModel::ideal(beta, phi));
    const double ideal = ideal_subtracted_current(alpha, phi, beta);
    const double err = rel_diff(general, ideal);
    check(results, "balanced detector reduction", err <= 1e-10,
          "general vs ideal current relative error " + format_double(err));
  }
  {
    const Quaternion alpha{0.37, -0.82};
    const double phi = 0.61;
    const double magnitude = quaternion_measured_magnitude(alpha, phi, 3.0);
    const double ideal = std::abs(ideal_subtracted_current(alpha, phi, 3.0));
    check(results, "magnitude readout consistency", magnitude == ideal,
          "complex-restricted magnitude equals |ideal current| bitwise: " +
              format_double(magnitude));
  }
  {
    const double b1 = binomial_probability_variance(1.0 / 9.0, 1);
    const double b2 = binomial_probability_variance(4.0 / 9.0, 1);
    const double c1 = coherent_probability_variance(PathConfig::single_path, 1);
    const double c2 = coherent_probability_variance(PathConfig::two_path, 1);
    const bool ok = rel_diff(b1, 8.0 / 81.0) <= 1e-12 && rel_diff(b2, 20.0 / 81.0) <= 1e-12 &&
                    rel_diff(c1, 17.0 / 72.0) <= 1e-12 && rel_diff(c2, 41.0 / 72.0) <= 1e-12 &&
                    rel_diff(c1 / b1, 153.0 / 64.0) <= 1e-12 &&
                    rel_diff(c2 / b2, 369.0 / 160.0) <= 1e-12;
    check(results, "variance closed forms", ok,
          "single 17/72 vs 8/81, two-path 41/72 vs 20/81, ratios 153/64 and 369/160");
  }

  return results;
}

}  // namespace triarm
