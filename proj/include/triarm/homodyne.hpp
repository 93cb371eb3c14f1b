#pragma once

#include <cstddef>
#include <vector>

#include "triarm/quaternion.hpp"
#include "triarm/rng.hpp"

namespace triarm {

/// Background-correction method for photon-number estimates.
enum class Correction {
  mean,    ///< subtract background mean first, then square: ((m_sig - m_bg)/2)^2
  photon,  ///< square each sample first: mean[(x/2)^2]_sig - mean[(x/2)^2]_bg
};

/// @brief Balanced (or deliberately unbalanced) homodyne detector model.
///
/// lo_amplitude is the local-oscillator amplitude beta > 0, lo_phase its
/// phase, transmissivity t in (0,1) the mixing beam splitter amplitude
/// transmissivity, and gain_1/gain_2 the detector gains.
struct HomodyneModel {
  double lo_amplitude;
  double lo_phase;
  double transmissivity;
  double gain_1;
  double gain_2;

  HomodyneModel(double beta, double phi, double t, double g1, double g2);

  /// Balanced detector: t = 1/sqrt(2), unit gains.
  static HomodyneModel ideal(double beta, double phi);
};

/// Ideal balanced subtracted photocurrent 2 beta (Re(alpha) cos phi + Im(alpha) sin phi).
/// Throws HypercomplexAmplitude for non-complex amplitudes.
double ideal_subtracted_current(const Quaternion& alpha, double phi, double beta);

/// @brief Subtracted photocurrent g1 <n1> - g2 <n2> for the full detector model.
///
/// <n1> = t^2 |alpha|^2 + (1-t^2) beta^2 + 2 t sqrt(1-t^2) beta Re(alpha e^{-i phi}),
/// <n2> swaps the splitter coefficients and the cross-term sign. Throws
/// HypercomplexAmplitude for non-complex amplitudes.
double general_subtracted_current(const Quaternion& alpha, const HomodyneModel& model);

/// @brief Magnitude of the subtracted current for a hypercomplex amplitude.
///
/// Postulated readout beta * || e^{i phi} conj(alpha) + e^{-i phi} alpha ||;
/// restricted to complex amplitudes it reproduces |ideal_subtracted_current|.
/// Sign information is not defined for hypercomplex inputs, the magnitude is
/// returned with positive sign.
double quaternion_measured_magnitude(const Quaternion& alpha, double phi, double beta);

/// Mean of normalized homodyne outcomes at LO phase phi: the signed
/// quadrature mean for complex amplitudes, the (positive) measured magnitude
/// for hypercomplex ones. Outcomes are the current divided by the LO
/// amplitude, so this is beta-free.
double homodyne_mean(const Quaternion& alpha, double phi);

/// @brief A set of homodyne outcomes at a fixed LO phase.
///
/// Values are in vacuum units (current normalized by the LO amplitude at
/// generation): a coherent input has unit variance and mean
/// homodyne_mean(alpha, phi). phi = 0 probes the x quadrature, phi = pi/2
/// the p quadrature.
struct HomodyneSamples {
  std::vector<double> values;
  double phi = 0.0;

  std::size_t count() const { return values.size(); }
  double mean() const;
  double sample_variance() const;  // unbiased, count >= 2
};

/// Draw count outcomes N(homodyne_mean(alpha, phi), 1) from the given stream.
HomodyneSamples sample_homodyne(const Quaternion& alpha, double phi, std::size_t count,
                                Rng& rng);

/// Background-corrected mean photon number from signal and background sample
/// sets. Throws EmptySamples when either set is empty.
double estimate_mean_photon(const HomodyneSamples& signal, const HomodyneSamples& background,
                            Correction method);

}  // namespace triarm
