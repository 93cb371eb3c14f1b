#include "triarm/statistics.hpp"

#include <cmath>

#include "triarm/errors.hpp"

namespace triarm {

SorkinResult sorkin_statistics(const PhotonNumberSet& n) {
  SorkinResult r;
  r.epsilon = n.n_abc - n.n_ab - n.n_ac - n.n_bc + n.n_a + n.n_b + n.n_c;
  r.delta = std::abs(n.n_ab - n.n_a - n.n_b) + std::abs(n.n_ac - n.n_a - n.n_c) +
            std::abs(n.n_bc - n.n_b - n.n_c);
  if (r.delta <= 1e-12 * n.n_total) {
    throw DegenerateNormalization("second-order interference terms are numerically zero");
  }
  r.kappa = r.epsilon / r.delta;
  return r;
}

PeresCosines peres_cosines(const PhotonNumberSet& n) {
  if (!(n.n_total > 0.0)) {
    throw ZeroPathPower("total photon number must be positive");
  }
  if (!(n.n_a > 0.0) || !(n.n_b > 0.0) || !(n.n_c > 0.0)) {
    throw ZeroPathPower("single-path powers must be positive to extract phase cosines");
  }
  const double pa = n.n_a / n.n_total;
  const double pb = n.n_b / n.n_total;
  const double pc = n.n_c / n.n_total;
  const double pab = n.n_ab / n.n_total;
  const double pac = n.n_ac / n.n_total;
  const double pbc = n.n_bc / n.n_total;
  PeresCosines c;
  c.cos_bc = (pbc - pb - pc) / (2.0 * std::sqrt(pb * pc));
  c.cos_ca = (pac - pc - pa) / (2.0 * std::sqrt(pc * pa));
  c.cos_ab = (pab - pa - pb) / (2.0 * std::sqrt(pa * pb));
  return c;
}

double peres_F(double cos_bc, double cos_ca, double cos_ab) {
  return cos_bc * cos_bc + cos_ca * cos_ca + cos_ab * cos_ab -
         2.0 * cos_bc * cos_ca * cos_ab;
}

GlauberResult glauber_statistics(const std::array<double, 8>& config_p_means) {
  // Background-correct against the all-off configuration so a common DC
  // offset drops out of every residual.
  const double bg = config_p_means[0];
  const double a = config_p_means[1] - bg;
  const double b = config_p_means[2] - bg;
  const double c = config_p_means[3] - bg;
  const double ab = config_p_means[4] - bg;
  const double ac = config_p_means[5] - bg;
  const double bc = config_p_means[6] - bg;
  const double abc = config_p_means[7] - bg;

  const double dab = std::abs(a) + std::abs(b);
  const double dac = std::abs(a) + std::abs(c);
  const double dbc = std::abs(b) + std::abs(c);
  const double dabc = std::abs(a) + std::abs(b) + std::abs(c);
  if (dab == 0.0) throw ZeroDenominator("G_AB denominator |p_A| + |p_B| is zero");
  if (dac == 0.0) throw ZeroDenominator("G_AC denominator |p_A| + |p_C| is zero");
  if (dbc == 0.0) throw ZeroDenominator("G_BC denominator |p_B| + |p_C| is zero");
  if (dabc == 0.0) throw ZeroDenominator("G_ABC denominator |p_A| + |p_B| + |p_C| is zero");

  GlauberResult g;
  g.g_ab = (ab - a - b) / dab;
  g.g_ac = (ac - a - c) / dac;
  g.g_bc = (bc - b - c) / dbc;
  g.g_abc = (abc - ab - ac - bc + a + b + c) / dabc;
  return g;
}

}  // namespace triarm
