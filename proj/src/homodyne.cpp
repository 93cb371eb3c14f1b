#include "triarm/homodyne.hpp"

#include <cmath>
#include <stdexcept>

#include "triarm/errors.hpp"

namespace triarm {

HomodyneModel::HomodyneModel(double beta, double phi, double t, double g1, double g2)
    : lo_amplitude(beta), lo_phase(phi), transmissivity(t), gain_1(g1), gain_2(g2) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("LO amplitude must be positive");
  }
  if (!std::isfinite(phi)) {
    throw std::domain_error("LO phase must be finite");
  }
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("transmissivity must lie strictly between 0 and 1");
  }
  if (!(g1 > 0.0) || !(g2 > 0.0)) {
    throw std::domain_error("detector gains must be positive");
  }
}

HomodyneModel HomodyneModel::ideal(double beta, double phi) {
  return HomodyneModel(beta, phi, 0.7071067811865476, 1.0, 1.0);
}

double ideal_subtracted_current(const Quaternion& alpha, double phi, double beta) {
  if (!alpha.is_complex()) {
    throw HypercomplexAmplitude("ideal current defined for complex amplitudes");
  }
  return 2.0 * beta * (alpha.a * std::cos(phi) + alpha.b * std::sin(phi));
}

double general_subtracted_current(const Quaternion& alpha, const HomodyneModel& m) {
  if (!alpha.is_complex()) {
    throw HypercomplexAmplitude("general current defined for complex amplitudes");
  }
  const double t2 = m.transmissivity * m.transmissivity;
  const double r2 = 1.0 - t2;
  const double mod2 = alpha.a * alpha.a + alpha.b * alpha.b;
  const double beta = m.lo_amplitude;
  // 2 Re(alpha e^{-i phi})
  const double projection =
      2.0 * (alpha.a * std::cos(m.lo_phase) + alpha.b * std::sin(m.lo_phase));
  const double cross = m.transmissivity * std::sqrt(r2) * beta * projection;
  const double n1 = t2 * mod2 + r2 * beta * beta + cross;
  const double n2 = r2 * mod2 + t2 * beta * beta - cross;
  return m.gain_1 * n1 - m.gain_2 * n2;
}

double quaternion_measured_magnitude(const Quaternion& alpha, double phi, double beta) {
  // e^{i phi} conj(alpha) + e^{-i phi} alpha; restricted to complex alpha this
  // collapses to the real number 2 Re(alpha e^{-i phi}).
  const Quaternion lo{std::cos(phi), std::sin(phi), 0.0, 0.0};
  const Quaternion lo_conj{lo.a, -lo.b, 0.0, 0.0};
  const Quaternion combined = qmul(lo, conj(alpha)) + qmul(lo_conj, alpha);
  return beta * qnorm(combined);
}

double homodyne_mean(const Quaternion& alpha, double phi) {
  if (alpha.is_complex()) {
    return ideal_subtracted_current(alpha, phi, 1.0);
  }
  return quaternion_measured_magnitude(alpha, phi, 1.0);
}

double HomodyneSamples::mean() const {
  if (values.empty()) throw EmptySamples("mean of empty sample set");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double HomodyneSamples::sample_variance() const {
  if (values.size() < 2) throw EmptySamples("variance needs at least two samples");
  const double m = mean();
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return acc / static_cast<double>(values.size() - 1);
}

HomodyneSamples sample_homodyne(const Quaternion& alpha, double phi, std::size_t count,
                                Rng& rng) {
  const double center = homodyne_mean(alpha, phi);
  HomodyneSamples out;
  out.phi = phi;
  out.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.values[i] = center + standard_normal(rng);
  }
  return out;
}

double estimate_mean_photon(const HomodyneSamples& signal, const HomodyneSamples& background,
                            Correction method) {
  if (signal.values.empty() || background.values.empty()) {
    throw EmptySamples("photon-number estimate needs signal and background samples");
  }
  if (method == Correction::mean) {
    const double diff = (signal.mean() - background.mean()) / 2.0;
    return diff * diff;
  }
  // photon correction: square per sample, then subtract the background power
  double sig = 0.0;
  for (double v : signal.values) sig += (v / 2.0) * (v / 2.0);
  sig /= static_cast<double>(signal.values.size());
  double bg = 0.0;
  for (double v : background.values) bg += (v / 2.0) * (v / 2.0);
  bg /= static_cast<double>(background.values.size());
  return sig - bg;
}

}  // namespace triarm
