#include "triarm/interferometer.hpp"

#include <cmath>

#include "triarm/errors.hpp"

namespace triarm {

namespace {
constexpr double kInvSqrt3 = 0.5773502691896258;  // 1/sqrt(3)
}

double SourceBank::total_photon_number() const {
  return norm_squared(alpha_a) + norm_squared(alpha_b) + norm_squared(alpha_c);
}

const std::array<SwitchPattern, 8>& SwitchPattern::canonical() {
  static const std::array<SwitchPattern, 8> order = {{
      {false, false, false},
      {true, false, false},
      {false, true, false},
      {false, false, true},
      {true, true, false},
      {true, false, true},
      {false, true, true},
      {true, true, true},
  }};
  return order;
}

std::string SwitchPattern::label(std::size_t canonical_index) {
  static const char* names[8] = {"none", "A", "B", "C", "AB", "AC", "BC", "ABC"};
  return names[canonical_index];
}

std::size_t SwitchPattern::canonical_index() const {
  const auto& order = canonical();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == *this) return i;
  }
  return 0;  // unreachable: all 8 combinations are listed
}

SourceBank apply_phase_shifts(const SourceBank& bank, const PhaseShifts& phases) {
  for (const Quaternion* phi : {&phases.phi_a, &phases.phi_b, &phases.phi_c}) {
    if (phi->a != 0.0) {
      throw NonUnitaryPhase("phase-shift quaternion must have zero scalar part");
    }
  }
  return {qmul(qexp(phases.phi_a), bank.alpha_a), qmul(qexp(phases.phi_b), bank.alpha_b),
          qmul(qexp(phases.phi_c), bank.alpha_c)};
}

Quaternion output_amplitude(const SourceBank& bank, const SwitchPattern& pattern) {
  // Scale each path before summing: pair outputs are then bitwise equal to
  // the sum of the single-path outputs.
  Quaternion out{};
  if (pattern.a) out = out + kInvSqrt3 * bank.alpha_a;
  if (pattern.b) out = out + kInvSqrt3 * bank.alpha_b;
  if (pattern.c) out = out + kInvSqrt3 * bank.alpha_c;
  return out;
}

PhotonNumberSet config_photon_numbers(const SourceBank& bank) {
  const auto& order = SwitchPattern::canonical();
  std::array<double, 8> n{};
  for (std::size_t i = 0; i < order.size(); ++i) {
    n[i] = norm_squared(output_amplitude(bank, order[i]));
  }
  PhotonNumberSet set;
  set.n_none = n[0];
  set.n_a = n[1];
  set.n_b = n[2];
  set.n_c = n[3];
  set.n_ab = n[4];
  set.n_ac = n[5];
  set.n_bc = n[6];
  set.n_abc = n[7];
  set.n_total = bank.total_photon_number();
  return set;
}

}  // namespace triarm
