#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "triarm/quaternion.hpp"
#include "triarm/statistics.hpp"

namespace triarm {

/// @brief The three source amplitudes entering the recombiner.
struct SourceBank {
  Quaternion alpha_a;
  Quaternion alpha_b;
  Quaternion alpha_c;

  double total_photon_number() const;
  bool is_complex() const {
    return alpha_a.is_complex() && alpha_b.is_complex() && alpha_c.is_complex();
  }
  bool operator==(const SourceBank&) const = default;
};

/// @brief Which of the three paths are switched on.
struct SwitchPattern {
  bool a = false;
  bool b = false;
  bool c = false;

  bool operator==(const SwitchPattern&) const = default;

  /// Canonical measurement order [none, A, B, C, AB, AC, BC, ABC]; every
  /// per-configuration array in this project is indexed this way.
  static const std::array<SwitchPattern, 8>& canonical();
  static constexpr std::size_t kConfigCount = 8;
  static std::string label(std::size_t canonical_index);

  std::size_t canonical_index() const;
};

/// Per-path phase shifts as quaternion exponents; each must be purely
/// imaginary (zero scalar part) so that exp of it has unit norm.
struct PhaseShifts {
  Quaternion phi_a;
  Quaternion phi_b;
  Quaternion phi_c;
};

/// alpha_i -> exp(phi_i) * alpha_i. Throws NonUnitaryPhase if any phi has a
/// nonzero scalar part.
SourceBank apply_phase_shifts(const SourceBank& bank, const PhaseShifts& phases);

/// @brief Recombined output amplitude (1/sqrt(3)) sum of switched-on paths.
///
/// Each path is scaled before summation in A, B, C order, so the output of a
/// two-path pattern is bitwise the sum of the corresponding one-path outputs.
Quaternion output_amplitude(const SourceBank& bank, const SwitchPattern& pattern);

/// Mean output photon numbers for all eight switch patterns plus the total
/// input photon number.
PhotonNumberSet config_photon_numbers(const SourceBank& bank);

}  // namespace triarm
