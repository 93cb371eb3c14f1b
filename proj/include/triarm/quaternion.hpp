#pragma once

#include <cmath>

namespace triarm {

inline constexpr double kPi = 3.14159265358979323846;

/// @brief Real quaternion q = a + i b + j c + k d with Hamilton's product.
///
/// Complex numbers embed as quaternions with c = d = 0; several callers
/// branch on that embedding, so the components are kept exact (no
/// normalization is ever applied implicitly).
struct Quaternion {
  double a = 0.0;  ///< scalar part
  double b = 0.0;  ///< i component
  double c = 0.0;  ///< j component
  double d = 0.0;  ///< k component

  constexpr Quaternion() = default;
  constexpr Quaternion(double a_, double b_ = 0.0, double c_ = 0.0, double d_ = 0.0)
      : a(a_), b(b_), c(c_), d(d_) {}

  /// True when the j and k components are exactly zero.
  constexpr bool is_complex() const { return c == 0.0 && d == 0.0; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }
};

constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.a, s * q.b, s * q.c, s * q.d};
}

/// @brief Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion qmul(const Quaternion& q1, const Quaternion& q2) {
  return {q1.a * q2.a - q1.b * q2.b - q1.c * q2.c - q1.d * q2.d,
          q1.a * q2.b + q1.b * q2.a + q1.c * q2.d - q1.d * q2.c,
          q1.a * q2.c - q1.b * q2.d + q1.c * q2.a + q1.d * q2.b,
          q1.a * q2.d + q1.b * q2.c - q1.c * q2.b + q1.d * q2.a};
}

constexpr Quaternion qmul(const Quaternion& q1, const Quaternion& q2, const Quaternion& q3) {
  return qmul(qmul(q1, q2), q3);
}

/// Squared Euclidean norm a^2 + b^2 + c^2 + d^2. Photon numbers are formed
/// from this directly so that no sqrt/square round trip is introduced.
constexpr double norm_squared(const Quaternion& q) {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

inline double qnorm(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

/// Standard conjugation: the vector part is negated.
constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

/// @brief Quaternion exponential exp(a)(cos|v| + (v/|v|) sin|v|), v the vector part.
///
/// For |v| below 1e-8 the sin|v|/|v| factor switches to its Taylor series so
/// the v -> 0 limit is smooth.
inline Quaternion qexp(const Quaternion& q) {
  const double v = std::sqrt(q.b * q.b + q.c * q.c + q.d * q.d);
  double sinc;  // sin(v)/v
  if (v < 1e-8) {
    sinc = 1.0 - v * v / 6.0;
  } else {
    sinc = std::sin(v) / v;
  }
  const double scale = std::exp(q.a);
  return {scale * std::cos(v), scale * sinc * q.b, scale * sinc * q.c, scale * sinc * q.d};
}

}  // namespace triarm
