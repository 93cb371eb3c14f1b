#include "triarm/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "triarm/errors.hpp"

namespace triarm {

double mean_photon_number(const CoherentState& state) {
  return norm_squared(state.amplitude);
}

double quadrature_mean(const CoherentState& state, Quadrature which) {
  const Quaternion& alpha = state.amplitude;
  if (!alpha.is_complex()) {
    throw HypercomplexAmplitude("quadrature mean defined only for complex amplitudes");
  }
  return which == Quadrature::x ? 2.0 * alpha.a : 2.0 * alpha.b;
}

SplittingBudget::SplittingBudget(double n_total, double fraction)
    : n_total_(n_total), fraction_(fraction) {
  if (!(n_total >= 0.0) || !std::isfinite(n_total)) {
    throw std::domain_error("photon budget must be finite and nonnegative");
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::domain_error("splitting fraction must lie in [0, 1]");
  }
}

double SplittingBudget::alpha_in() const { return std::sqrt(fraction_ * n_total_); }

double SplittingBudget::r_in() const {
  return std::asinh(std::sqrt((1.0 - fraction_) * n_total_));
}

GaussianMoments displaced_squeezed_moments(const SplittingBudget& budget, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("transmission probability must lie in [0, 1]");
  }
  const double r = budget.r_in();
  GaussianMoments m;
  m.mean_x = 0.0;
  m.mean_p = 2.0 * std::sqrt(p) * budget.alpha_in();
  m.var_x = 1.0 - p + p * std::exp(2.0 * r);
  m.var_p = 1.0 - p + p * std::exp(-2.0 * r);
  m.cov_xp = 0.0;
  return m;
}

}  // namespace triarm
