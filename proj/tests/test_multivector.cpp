#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "subgeo/multivector.hpp"
#include "subgeo/principal.hpp"
#include "subgeo/random.hpp"
#include "test_helpers.hpp"

using namespace subgeo;
using testutil::plant_angles;

namespace {

Multivector coord_vector(int n, int i, Field f = Field::Real) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return Multivector::from_vector(v, f);
}

Multivector random_mv(int n, Field f, Rng& rng) {
  Multivector m(n, f);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits)
    if (rng.uniform() < 0.4) m.add_term(bits, rng.scalar(f));
  return m;
}

}  // namespace

TEST_CASE("grades and parts") {
  const Multivector s = Multivector::scalar(4, Field::Real, 2.0);
  CHECK(s.grade() == 0);
  CHECK(s.is_homogeneous());
  const Multivector v = coord_vector(4, 1);
  CHECK(v.grade() == 1);
  const Multivector mixed = s + v;
  CHECK(mixed.grade() == -1);
  CHECK_FALSE(mixed.is_homogeneous());
  CHECK(std::abs(mixed.grade_part(0).coefficient(0) - Complex(2.0)) == 0.0);
  CHECK(std::abs(mixed.grade_part(1).coefficient(0b10) - Complex(1.0)) == 0.0);
  CHECK(mixed.grade_part(2).is_zero());
  CHECK(Multivector(4, Field::Real).grade() == -1);  // zero element
}

TEST_CASE("add_term accumulates and drops exact zeros") {
  Multivector m(3, Field::Real);
  m.add_term(0b101, 1.5);
  m.add_term(0b101, -1.5);
  CHECK(m.is_zero());
  CHECK_THROWS_AS(m.add_term(0b1000, 1.0), std::invalid_argument);
}

TEST_CASE("wedge basics") {
  const Multivector e0 = coord_vector(4, 0);
  const Multivector e1 = coord_vector(4, 1);
  const Multivector w01 = wedge(e0, e1);
  CHECK(w01.grade() == 2);
  CHECK(std::abs(w01.coefficient(0b11) - Complex(1.0)) < 1e-15);
  const Multivector w10 = wedge(e1, e0);
  CHECK(std::abs(w10.coefficient(0b11) + Complex(1.0)) < 1e-15);
  CHECK(wedge(e0, e0).is_zero());
}

TEST_CASE("wedge is associative and bilinear") {
  Rng rng(501);
  for (Field f : {Field::Real, Field::Complex}) {
    const Multivector a = random_mv(5, f, rng);
    const Multivector b = random_mv(5, f, rng);
    const Multivector c = random_mv(5, f, rng);
    const Multivector lhs = wedge(wedge(a, b), c);
    const Multivector rhs = wedge(a, wedge(b, c));
    CHECK(norm(lhs - rhs) < 1e-10);
    const Multivector dist_lhs = wedge(a, b + c);
    const Multivector dist_rhs = wedge(a, b) + wedge(a, c);
    CHECK(norm(dist_lhs - dist_rhs) < 1e-10);
  }
}

TEST_CASE("inner product of coordinate blades") {
  Multivector a(4, Field::Real), b(4, Field::Real), c(4, Field::Real);
  a.add_term(0b0011, 1.0);
  b.add_term(0b0011, 1.0);
  c.add_term(0b0101, 1.0);
  CHECK(std::abs(inner(a, b) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(inner(a, c)) < 1e-15);
  // distinct grades are orthogonal
  const Multivector v = coord_vector(4, 0);
  CHECK(std::abs(inner(v, a)) < 1e-15);
  // 3 e0^e1 + 4 e2^e3 has norm 5
  Multivector p(4, Field::Real);
  p.add_term(0b0011, 3.0);
  p.add_term(0b1100, 4.0);
  CHECK(norm(p) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
  Rng rng(503);
  const Multivector a = random_mv(4, Field::Complex, rng);
  const Multivector b = random_mv(4, Field::Complex, rng);
  const Complex c(0.7, -1.3);
  const Complex lhs = inner(a * c, b);
  const Complex rhs = std::conj(c) * inner(a, b);
  CHECK(std::abs(lhs - rhs) < 1e-12);
  const Complex sym = inner(b, a);
  CHECK(std::abs(inner(a, b) - std::conj(sym)) < 1e-12);
}

TEST_CASE("contraction is the adjoint of wedging on the left") {
  // exhaustive over coordinate blades of F^4
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      for (std::uint32_t c = 0; c < 16; ++c) {
        Multivector ma(4, Field::Real), mb(4, Field::Real),
            mc(4, Field::Real);
        ma.add_term(a, 1.0);
        mb.add_term(b, 1.0);
        mc.add_term(c, 1.0);
        const Complex lhs = inner(mc, contraction(ma, mb));
        const Complex rhs = inner(wedge(ma, mc), mb);
        CHECK(std::abs(lhs - rhs) < 1e-14);
      }
    }
  }
}

TEST_CASE("adjoint identity for random complex elements") {
  Rng rng(505);
  for (int rep = 0; rep < 20; ++rep) {
    const Multivector a = random_mv(5, Field::Complex, rng);
    const Multivector b = random_mv(5, Field::Complex, rng);
    const Multivector c = random_mv(5, Field::Complex, rng);
    const Complex lhs = inner(c, contraction(a, b));
    const Complex rhs = inner(wedge(a, c), b);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("contraction grades") {
  Multivector a(5, Field::Real), b(5, Field::Real);
  a.add_term(0b00011, 1.0);
  b.add_term(0b00111, 2.0);
  const Multivector ab = contraction(a, b);
  CHECK(ab.grade() == 1);
  CHECK(contraction(b, a).is_zero());  // grade of a < grade of b
  // equal grades reduce to the inner product
  Multivector b2(5, Field::Real);
  b2.add_term(0b00011, 3.0);
  const Multivector s = contraction(a, b2);
  CHECK(s.grade() == 0);
  CHECK(std::abs(s.coefficient(0) - inner(a, b2)) < 1e-14);
}

TEST_CASE("blade of a subspace and back") {
  Rng rng(507);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int p : {0, 1, 3}) {
      const Subspace v = random_subspace(5, p, f, rng);
      const Multivector b = blade_of(v);
      CHECK(b.grade() == p);
      CHECK(norm(b) == doctest::Approx(1.0).epsilon(1e-12));
      if (p == 0) {
        CHECK(std::abs(b.coefficient(0) - Complex(1.0)) < 1e-15);
      }
      CHECK(same_span(blade_span(b), v));
    }
  }
}

TEST_CASE("blade_span rejects non-decomposable input") {
  Multivector m(4, Field::Real);
  m.add_term(0b0011, 1.0);
  m.add_term(0b1100, 1.0);
  CHECK_THROWS_AS(blade_span(m), std::invalid_argument);
  CHECK_THROWS_AS(blade_span(Multivector(4, Field::Real)),
                  std::invalid_argument);
}

TEST_CASE("projecting a blade scales by the product of cosines") {
  Rng rng(509);
  constexpr double kPi = 3.141592653589793;
  for (Field f : {Field::Real, Field::Complex}) {
    const auto pair = plant_angles(7, {kPi / 6, kPi / 4}, 1, f, rng);
    const Multivector bv = blade_of(pair.v);
    const Multivector proj = project_multivector(pair.w, bv);
    CHECK(proj.grade() == 2);
    CHECK(norm(proj) ==
          doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("operand mismatch is rejected") {
  const Multivector a(3, Field::Real);
  const Multivector b(4, Field::Real);
  const Multivector c(3, Field::Complex);
  CHECK_THROWS_AS(wedge(a, b), std::invalid_argument);
  CHECK_THROWS_AS(inner(a, c), std::invalid_argument);
}
