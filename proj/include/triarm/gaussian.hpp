#pragma once

#include "triarm/quaternion.hpp"

namespace triarm {

/// Quadrature convention: x = a + a^dagger, p = -i(a - a^dagger), so a
/// coherent state has unit variance in both quadratures and mean
/// (2 Re alpha, 2 Im alpha).
enum class Quadrature { x, p };

/// @brief Coherent state labelled by a (possibly hypercomplex) amplitude.
struct CoherentState {
  Quaternion amplitude;
};

/// Mean photon number |alpha|^2.
double mean_photon_number(const CoherentState& state);

/// Quadrature expectation for a complex amplitude: 2 Re alpha (x) or 2 Im alpha (p).
/// Throws HypercomplexAmplitude when the amplitude has j or k components.
double quadrature_mean(const CoherentState& state, Quadrature which);

/// @brief First and second moments of a single-mode Gaussian state.
struct GaussianMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 1.0;
  double var_p = 1.0;
  double cov_xp = 0.0;

  double determinant() const { return var_x * var_p - cov_xp * cov_xp; }
};

/// @brief Division of a fixed photon budget between displacement and squeezing.
///
/// A fraction f of n_total goes into the displacement alpha_in = sqrt(f n_total);
/// the remainder into squeezing with sinh^2(r_in) = (1-f) n_total, so
/// alpha_in^2 + sinh^2(r_in) = n_total holds by construction.
class SplittingBudget {
 public:
  SplittingBudget(double n_total, double fraction);

  double n_total() const { return n_total_; }
  double fraction() const { return fraction_; }
  double alpha_in() const;
  double r_in() const;

 private:
  double n_total_;
  double fraction_;
};

/// @brief Moments of a displaced-squeezed probe after a beam splitter of
/// transmission probability p.
///
/// The displacement is along p (x mean stays zero); the antisqueezed
/// quadrature is x. Mean: (0, 2 sqrt(p) alpha_in). Covariance: diagonal
/// (1 - p + p e^{2r}, 1 - p + p e^{-2r}).
GaussianMoments displaced_squeezed_moments(const SplittingBudget& budget, double p);

}  // namespace triarm
