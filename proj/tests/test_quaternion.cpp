#include <cmath>

#include "doctest.h"
#include "triarm/quaternion.hpp"
#include "triarm/rng.hpp"

namespace {

using triarm::conj;
using triarm::make_stream;
using triarm::norm_squared;
using triarm::qexp;
using triarm::qmul;
using triarm::qnorm;
using triarm::Quaternion;

const Quaternion kOne{1.0};
const Quaternion kI{0.0, 1.0};
const Quaternion kJ{0.0, 0.0, 1.0};
const Quaternion kK{0.0, 0.0, 0.0, 1.0};

Quaternion random_quaternion(triarm::Rng& rng) {
  auto draw = [&rng] { return 2.0 * triarm::uniform_unit(rng) - 1.0; };
  return {draw(), draw(), draw(), draw()};
}

double max_component_difference(const Quaternion& u, const Quaternion& v) {
  return std::max(std::max(std::abs(u.a - v.a), std::abs(u.b - v.b)),
                  std::max(std::abs(u.c - v.c), std::abs(u.d - v.d)));
}

}  // namespace

TEST_CASE("hamilton product satisfies the defining relations exactly") {
  const Quaternion minus_one = -kOne;
  CHECK(qmul(kI, kI) == minus_one);
  CHECK(qmul(kJ, kJ) == minus_one);
  CHECK(qmul(kK, kK) == minus_one);
  CHECK(qmul(kI, kJ, kK) == minus_one);

  CHECK(qmul(kI, kJ) == kK);
  CHECK(qmul(kJ, kK) == kI);
  CHECK(qmul(kK, kI) == kJ);

  CHECK(qmul(kJ, kI) == -kK);
  CHECK(qmul(kK, kJ) == -kI);
  CHECK(qmul(kI, kK) == -kJ);
}

TEST_CASE("product of mixed-axis amplitudes lands on the third axis") {
  // (i + j)(i - j) = -i^2 + ij - ji + j^2... collected: -2k exactly.
  const Quaternion product = qmul(kI + kJ, kI - kJ);
  CHECK(product == Quaternion{0.0, 0.0, 0.0, -2.0});
}

TEST_CASE("multiplication is associative but not commutative") {
  auto rng = make_stream(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion u = random_quaternion(rng);
    const Quaternion v = random_quaternion(rng);
    const Quaternion w = random_quaternion(rng);
    const Quaternion left = qmul(qmul(u, v), w);
    const Quaternion right = qmul(u, qmul(v, w));
    const double scale = std::max(1.0, qnorm(left));
    CHECK(max_component_difference(left, right) <= 1e-12 * scale);
  }
  // A single witness of non-commutativity is enough: ij = k but ji = -k.
  CHECK(qmul(kI, kJ) == -qmul(kJ, kI));
}

TEST_CASE("norm is multiplicative over random pairs") {
  auto rng = make_stream(12, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Quaternion u = random_quaternion(rng);
    const Quaternion v = random_quaternion(rng);
    const double product_norm = qnorm(qmul(u, v));
    const double norm_product = qnorm(u) * qnorm(v);
    CHECK(std::abs(product_norm - norm_product) <= 1e-12 * std::max(1.0, norm_product));
  }
}

TEST_CASE("conjugation reverses products and recovers the squared norm") {
  auto rng = make_stream(13, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion u = random_quaternion(rng);
    const Quaternion v = random_quaternion(rng);
    const Quaternion lhs = conj(qmul(u, v));
    const Quaternion rhs = qmul(conj(v), conj(u));
    CHECK(max_component_difference(lhs, rhs) <= 1e-12 * std::max(1.0, qnorm(lhs)));

    // q conj(q) collapses onto the scalar axis. The scalar part sums the four
    // squares in the same grouping as norm_squared, so it matches bitwise, and
    // the i component cancels in adjacently paired products, so it is exactly
    // zero. The j and k components interleave their cancelling pairs with
    // other terms and only vanish to rounding.
    const Quaternion self = qmul(u, conj(u));
    CHECK(self.a == norm_squared(u));
    CHECK(self.b == 0.0);
    CHECK(std::abs(self.c) <= 4e-16 * std::max(1.0, norm_squared(u)));
    CHECK(std::abs(self.d) <= 4e-16 * std::max(1.0, norm_squared(u)));
  }
}

TEST_CASE("exponential of an imaginary quaternion is a unit rotation") {
  const Quaternion quarter_i = qexp(Quaternion{0.0, triarm::kPi / 2.0});
  CHECK(std::abs(quarter_i.a) <= 1e-15);
  CHECK(std::abs(quarter_i.b - 1.0) <= 1e-15);
  CHECK(quarter_i.c == 0.0);
  CHECK(quarter_i.d == 0.0);

  const Quaternion quarter_j = qexp(Quaternion{0.0, 0.0, triarm::kPi / 2.0});
  CHECK(std::abs(quarter_j.a) <= 1e-15);
  CHECK(std::abs(quarter_j.c - 1.0) <= 1e-15);

  const Quaternion quarter_k = qexp(Quaternion{0.0, 0.0, 0.0, triarm::kPi / 2.0});
  CHECK(std::abs(quarter_k.a) <= 1e-15);
  CHECK(std::abs(quarter_k.d - 1.0) <= 1e-15);

  const Quaternion half_turn = qexp(Quaternion{0.0, triarm::kPi});
  CHECK(std::abs(half_turn.a + 1.0) <= 1e-15);
  CHECK(std::abs(half_turn.b) <= 1e-14);

  CHECK(qexp(Quaternion{}) == kOne);

  auto rng = make_stream(14, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Quaternion v = random_quaternion(rng);
    v.a = 0.0;
    CHECK(std::abs(qnorm(qexp(v)) - 1.0) <= 1e-14);
  }
}

TEST_CASE("exponential is smooth through the small-angle switch") {
  // Just below the series cutoff the rotation is 1 + v to first order.
  const double tiny = 1e-10;
  const Quaternion q = qexp(Quaternion{0.0, tiny});
  CHECK(q.a == 1.0);
  CHECK(q.b == doctest::Approx(tiny).epsilon(1e-12));

  // A nonzero scalar part scales the whole rotation by exp(a).
  const Quaternion scaled = qexp(Quaternion{0.5, triarm::kPi / 2.0});
  CHECK(qnorm(scaled) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
}

TEST_CASE("complex embedding is detected by exact zero tests") {
  CHECK(Quaternion{1.5, -2.0}.is_complex());
  CHECK(Quaternion{}.is_complex());
  CHECK_FALSE(Quaternion{0.0, 0.0, 1e-300, 0.0}.is_complex());
  CHECK_FALSE(Quaternion{0.0, 0.0, 0.0, -1.0}.is_complex());
}

TEST_CASE("componentwise arithmetic") {
  const Quaternion u{1.0, 2.0, 3.0, 4.0};
  const Quaternion v{0.5, -0.25, 8.0, -16.0};
  CHECK(u + v == Quaternion{1.5, 1.75, 11.0, -12.0});
  CHECK(u - v == Quaternion{0.5, 2.25, -5.0, 20.0});
  CHECK(-u == Quaternion{-1.0, -2.0, -3.0, -4.0});
  CHECK(2.0 * u == Quaternion{2.0, 4.0, 6.0, 8.0});
  CHECK(norm_squared(u) == 30.0);
}
