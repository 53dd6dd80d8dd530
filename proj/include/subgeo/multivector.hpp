#pragma once

#include <cstdint>
#include <map>

#include "subgeo/core.hpp"

namespace subgeo {

// Element of the exterior algebra over F^n, n <= 32. Terms are kept in a
// sorted map from coordinate index sets (bit i set = basis vector u_{i+1}
// present) to coefficients, so iteration order is deterministic.
class Multivector {
 public:
  Multivector(int ambient, Field field);

  static Multivector scalar(int ambient, Field field, Complex value);
  static Multivector from_vector(const Vector& v, Field field);

  int ambient() const { return ambient_; }
  Field field() const { return field_; }
  const std::map<std::uint32_t, Complex>& terms() const { return terms_; }

  Complex coefficient(std::uint32_t bits) const;
  void add_term(std::uint32_t bits, Complex c);  // accumulates, drops exact zeros
  bool is_zero() const { return terms_.empty(); }

  // -1 for the zero or mixed-grade element.
  int grade() const;
  bool is_homogeneous() const;
  Multivector grade_part(int k) const;

  Multivector operator+(const Multivector& rhs) const;
  Multivector operator-(const Multivector& rhs) const;
  Multivector operator*(Complex c) const;

 private:
  int ambient_;
  Field field_;
  std::map<std::uint32_t, Complex> terms_;
};

Multivector wedge(const Multivector& a, const Multivector& b);

// <a, b>, conjugate-linear in a; coordinate blades are orthonormal and
// distinct grades are orthogonal.
Complex inner(const Multivector& a, const Multivector& b);
double norm(const Multivector& a);

// Interior product a . b (grade of b minus grade of a), the adjoint of
// wedging on the left: <c, contraction(a, b)> = <wedge(a, c), b>.
// Zero when grade a > grade b; equals <a, b> at equal grades.
Multivector contraction(const Multivector& a, const Multivector& b);

// Grade-preserving extension of the orthogonal projection onto w.
Multivector project_multivector(const Subspace& w, const Multivector& a);

// Unit blade representing v (wedge of an orthonormal basis); the scalar 1
// for the zero subspace.
Multivector blade_of(const Subspace& v);

// Span of a nonzero decomposable element: the solutions of wedge(x, b) = 0.
// Throws if b is zero or if the solution space does not match b's grade
// (i.e. b is not a blade).
Subspace blade_span(const Multivector& b, const Tolerances& tol = {});

}  // namespace subgeo
