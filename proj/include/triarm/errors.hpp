#pragma once

#include <stdexcept>
#include <string>

namespace triarm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quadrature expectation was requested for an amplitude with nonzero j or k part.
class HypercomplexAmplitude : public Error {
 public:
  using Error::Error;
};

/// A phase-shift quaternion had a nonzero scalar part, so exp of it is not a versor.
class NonUnitaryPhase : public Error {
 public:
  using Error::Error;
};

/// A photon-number estimate was requested from an empty sample set.
class EmptySamples : public Error {
 public:
  using Error::Error;
};

/// The second-order interference normalization is numerically zero.
class DegenerateNormalization : public Error {
 public:
  using Error::Error;
};

/// A single-path power needed under a square root or in a denominator is not positive.
class ZeroPathPower : public Error {
 public:
  using Error::Error;
};

/// A linear-statistic denominator vanished.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// The variance channel of the squeezed probe is undefined (no squeezing).
class DegenerateSqueezing : public Error {
 public:
  using Error::Error;
};

/// Fewer usable runs than a summary statistic requires.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration file or option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace triarm
