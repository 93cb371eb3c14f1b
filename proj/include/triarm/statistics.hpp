#pragma once

#include <array>

namespace triarm {

/// Mean photon numbers for the eight switch configurations of a three-path
/// source, in canonical order [none, A, B, C, AB, AC, BC, ABC], plus the
/// total input photon number used for normalization.
struct PhotonNumberSet {
  double n_none = 0.0;
  double n_a = 0.0;
  double n_b = 0.0;
  double n_c = 0.0;
  double n_ab = 0.0;
  double n_ac = 0.0;
  double n_bc = 0.0;
  double n_abc = 0.0;
  double n_total = 0.0;

  std::array<double, 8> canonical() const {
    return {n_none, n_a, n_b, n_c, n_ab, n_ac, n_bc, n_abc};
  }
};

/// Third-order interference test. epsilon is the three-path interference
/// residual, delta the sum of absolute two-path interference terms, and
/// kappa = epsilon / delta the normalized violation.
struct SorkinResult {
  double epsilon = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
};

struct PeresCosines {
  double cos_bc = 0.0;
  double cos_ca = 0.0;
  double cos_ab = 0.0;
};

struct PeresResult {
  double cos_bc = 0.0;
  double cos_ca = 0.0;
  double cos_ab = 0.0;
  double f = 0.0;
};

/// Linear-statistic residuals on quadrature means; all vanish when the
/// measured means combine additively.
struct GlauberResult {
  double g_ab = 0.0;
  double g_ac = 0.0;
  double g_bc = 0.0;
  double g_abc = 0.0;
};

/// Throws DegenerateNormalization when delta <= 1e-12 * n_total.
SorkinResult sorkin_statistics(const PhotonNumberSet& n);

/// Pairwise phase cosines from normalized powers,
/// cos_AB = (P_AB - P_A - P_B) / (2 sqrt(P_A P_B)) and cyclic.
/// Throws ZeroPathPower when a single-path power (or n_total) is not positive.
PeresCosines peres_cosines(const PhotonNumberSet& n);

/// F = b^2 + c^2 + z^2 - 2 b c z; equals 1 when the three phases can close a
/// complex triangle, sinks below 1 when a third rotation axis is involved.
double peres_F(double cos_bc, double cos_ca, double cos_ab);

/// @brief Normalized linear residuals of per-configuration p-quadrature means.
///
/// Input is the eight means in canonical order; the switched-off entry is
/// subtracted from the other seven as the background before forming the
/// residuals. Throws ZeroDenominator for the affected statistic.
GlauberResult glauber_statistics(const std::array<double, 8>& config_p_means);

}  // namespace triarm
