#include "subgeo/worked_examples.hpp"

#include <cmath>
#include <sstream>

#include "subgeo/angle.hpp"
#include "subgeo/core.hpp"
#include "subgeo/metrics.hpp"
#include "subgeo/multivector.hpp"
#include "subgeo/principal.hpp"

namespace subgeo {

bool WorkedCheck::pass() const { return std::abs(actual - expected) <= tol; }

bool WorkedExample::pass() const {
  for (const WorkedCheck& c : checks)
    if (!c.pass()) return false;
  return true;
}

namespace {

constexpr double kTight = 1e-12;

void add(WorkedExample& ex, std::string label, double expected, double actual,
         double tol = kTight) {
  ex.checks.push_back({std::move(label), expected, actual, tol});
}

std::string term_label(const std::vector<int>& indices) {
  std::ostringstream os;
  os << "coordinate split factor [";
  for (std::size_t i = 0; i < indices.size(); ++i)
    os << (i ? "," : "") << indices[i] + 1;
  os << "]";
  return os.str();
}

double term_factor(const BcDecomposition& dec, std::vector<int> want) {
  for (const BcTerm& t : dec.terms)
    if (t.indices == want) return t.factor;
  return NAN;
}

Vector rvec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = Complex(x, 0.0);
  return v;
}

WorkedExample two_planes_r5() {
  WorkedExample ex;
  ex.name = "r5-two-planes";
  ex.summary =
      "2-subspace vs coordinate 3-subspace of R^5 with principal angles "
      "pi/6, pi/4; both asymmetric angles, d_BC, and its coordinate split";

  const double s3 = std::sqrt(3.0);
  Matrix vb(5, 2);
  vb.setZero();
  vb.col(0) = rvec({s3 / 2, 0, 0, 0.5, 0});
  vb.col(1) = rvec({0, M_SQRT1_2, 0, 0, M_SQRT1_2});
  Subspace v = Subspace::from_spanning(vb, Field::Real);

  Matrix wb = Matrix::Zero(5, 3);
  wb(0, 0) = wb(1, 1) = wb(2, 2) = 1.0;
  Subspace w = Subspace::from_spanning(wb, Field::Real);

  RealVector angles = principal_angles(v, w);
  add(ex, "principal angle 1", M_PI / 6, angles(0));
  add(ex, "principal angle 2", M_PI / 4, angles(1));
  add(ex, "asymmetric angle V->W", std::acos(std::sqrt(6.0) / 4), angle_via_principal(v, w));
  add(ex, "asymmetric angle W->V", M_PI_2, angle_via_principal(w, v), 0.0);
  add(ex, "d_BC V->W", std::sqrt(5.0 / 8), asym_distance(Metric::BinetCauchy, v, w));

  BcDecomposition dec = bc_coordinate_decomposition(v, w, Matrix::Identity(5, 5));
  add(ex, term_label({0, 4}), std::sqrt(6.0) / 4, term_factor(dec, {0, 4}));
  add(ex, term_label({1, 3}), std::sqrt(2.0) / 4, term_factor(dec, {1, 3}));
  add(ex, term_label({3, 4}), std::sqrt(2.0) / 4, term_factor(dec, {3, 4}));
  for (std::vector<int> z : {std::vector<int>{0, 3}, {1, 4}, {2, 3}, {2, 4}})
    add(ex, term_label(z), 0.0, term_factor(dec, z));
  add(ex, "coordinate split total", 5.0 / 8, dec.total);
  return ex;
}

WorkedExample raw_bases_r5() {
  WorkedExample ex;
  ex.name = "r5-raw-bases";
  ex.summary =
      "non-orthonormal spanning sets in R^5; Gram route against the exterior "
      "route, blade norms, contraction values";

  Matrix vraw(5, 2), wraw(5, 3);
  vraw.col(0) = rvec({2, -1, 0, 0, 0});
  vraw.col(1) = rvec({2, 0, 1, 0, 0});
  wraw.col(0) = rvec({0, 1, 0, 0, 1});
  wraw.col(1) = rvec({0, 0, 1, -1, 0});
  wraw.col(2) = rvec({0, 0, 0, 1, 0});

  const double c = 1.0 / (3.0 * std::sqrt(2.0));
  add(ex, "cos of angle, Gram route", c, std::cos(angle_via_gram(vraw, wraw)));

  Multivector a = wedge(Multivector::from_vector(vraw.col(0), Field::Real),
                        Multivector::from_vector(vraw.col(1), Field::Real));
  Multivector b = wedge(wedge(Multivector::from_vector(wraw.col(0), Field::Real),
                              Multivector::from_vector(wraw.col(1), Field::Real)),
                        Multivector::from_vector(wraw.col(2), Field::Real));
  add(ex, "cos of angle, exterior route", c, std::cos(angle_via_contraction(a, b)));
  add(ex, "reverse angle", M_PI_2, angle_via_contraction(b, a), 0.0);
  add(ex, "norm of the 2-blade", 3.0, norm(a));
  add(ex, "norm of the 3-blade", std::sqrt(2.0), norm(b));

  Multivector ab = contraction(a, b);
  Multivector u4 = Multivector::from_vector(rvec({0, 0, 0, 1, 0}), Field::Real);
  add(ex, "contraction coefficient at u4", -1.0, ab.coefficient(1u << 3).real());
  add(ex, "contraction residual off -u4", 0.0, norm(ab + u4));
  add(ex, "reverse contraction norm", 0.0, norm(contraction(b, a)));
  return ex;
}

WorkedExample line_plane_c3() {
  WorkedExample ex;
  ex.name = "c3-line-plane";
  ex.summary =
      "complex line vs complex plane in C^3; complex and realified angles "
      "and projection factors";

  Matrix vraw(3, 1), wraw(3, 2);
  vraw(0, 0) = 1.0;
  vraw(1, 0) = 0.0;
  vraw(2, 0) = Complex(0, 1);
  wraw.setZero();
  wraw(0, 0) = 1.0;
  wraw(0, 1) = Complex(0, 1);
  wraw(1, 1) = 1.0;

  Subspace v = Subspace::from_spanning(vraw, Field::Complex);
  Subspace w = Subspace::from_spanning(wraw, Field::Complex);
  add(ex, "complex angle", M_PI / 4, angle_via_principal(v, w));
  add(ex, "cos of complex angle, Gram route", M_SQRT1_2,
      std::cos(angle_via_gram(vraw, wraw)));

  Subspace vr = realify(v);
  Subspace wr = realify(w);
  add(ex, "realified angle", M_PI / 3, angle_via_principal(vr, wr));
  add(ex, "projection factor, complex", 0.5, projection_factor(v, w));
  add(ex, "projection factor, realified", 0.5, projection_factor(vr, wr));
  return ex;
}

}  // namespace

std::vector<WorkedExample> run_worked_examples() {
  return {two_planes_r5(), raw_bases_r5(), line_plane_c3()};
}

}  // namespace subgeo
