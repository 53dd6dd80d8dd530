#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subgeo/core.hpp"
#include "subgeo/metrics.hpp"
#include "subgeo/principal.hpp"
#include "subgeo/random.hpp"
#include "test_helpers.hpp"

using namespace subgeo;
using testutil::plant_angles;

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = 1.5707963267948966;

double dist(Metric k, const Subspace& v, const Subspace& w) {
  return asym_distance(k, v, w);
}
}  // namespace

// Angles pi/6 and pi/4 give closed forms for every kind.
TEST_CASE("values on a pair with planted angles") {
  Rng rng(401);
  for (Field f : {Field::Real, Field::Complex}) {
    const auto pair = plant_angles(7, {kPi / 6, kPi / 4}, 1, f, rng);
    const double s6 = std::sqrt(6.0) / 4.0;  // cos(pi/6) cos(pi/4)
    const struct { Metric kind; double want; } table[] = {
        {Metric::Geodesic, kPi * std::sqrt(13.0) / 12.0},
        {Metric::ChordalFrobenius,
         2.0 * std::sqrt(std::pow(std::sin(kPi / 12), 2) +
                         std::pow(std::sin(kPi / 8), 2))},
        {Metric::ProjectionFrobenius, std::sqrt(3.0) / 2.0},
        {Metric::FubiniStudy, std::acos(s6)},
        {Metric::ChordalWedge, std::sqrt(2.0 - 2.0 * s6)},
        {Metric::BinetCauchy, std::sqrt(10.0) / 4.0},
        {Metric::Asimov, kPi / 4.0},
        {Metric::ChordalTwo, 2.0 * std::sin(kPi / 8)},
        {Metric::ProjectionTwo, std::sqrt(2.0) / 2.0},
    };
    for (const auto& row : table) {
      CAPTURE(metric_name(row.kind));
      CHECK(dist(row.kind, pair.v, pair.w) ==
            doctest::Approx(row.want).epsilon(1e-12));
    }
  }
}

TEST_CASE("diameters") {
  const struct { Metric kind; double want; } table[] = {
      {Metric::Geodesic, kHalfPi * std::sqrt(3.0)},
      {Metric::ChordalFrobenius, std::sqrt(6.0)},
      {Metric::ProjectionFrobenius, std::sqrt(3.0)},
      {Metric::FubiniStudy, kHalfPi},
      {Metric::ChordalWedge, std::sqrt(2.0)},
      {Metric::BinetCauchy, 1.0},
      {Metric::Asimov, kHalfPi},
      {Metric::ChordalTwo, std::sqrt(2.0)},
      {Metric::ProjectionTwo, 1.0},
  };
  for (const auto& row : table) {
    CAPTURE(metric_name(row.kind));
    CHECK(diameter(row.kind, 3) == doctest::Approx(row.want).epsilon(1e-15));
    CHECK(diameter(row.kind, 0) == 0.0);
  }
}

TEST_CASE("degenerate dimensions and the empty infimum") {
  Rng rng(403);
  const Subspace z = Subspace::zero(6, Field::Real);
  const Subspace w = random_subspace(6, 4, Field::Real, rng);
  const Subspace big = random_subspace(6, 5, Field::Real, rng);
  for (Metric kind : kAllMetrics) {
    CAPTURE(metric_name(kind));
    CHECK(dist(kind, z, w) == 0.0);
    CHECK(dist(kind, w, z) == diameter(kind, 4));
    // dim 5 source against dim 4 target: value taken from the convention
    CHECK(dist(kind, big, w) == diameter(kind, 5));
    CHECK(asym_distance(kind, big, w, InfConvention::AmbientDiameter) ==
          diameter(kind, 6));
    CHECK(std::isinf(
        asym_distance(kind, big, w, InfConvention::Unbounded)));
  }
}

TEST_CASE("distance vanishes exactly on containment") {
  Rng rng(405);
  for (Field f : {Field::Real, Field::Complex}) {
    const Subspace w = random_subspace(7, 4, f, rng);
    const Subspace v = random_subspace_of(w, 2, rng);
    for (Metric kind : kAllMetrics) {
      CAPTURE(metric_name(kind));
      CHECK(dist(kind, v, w) < 1e-9);
      CHECK(dist(kind, w, v) > 0.1);  // reverse direction sees the gap
    }
  }
}

TEST_CASE("angle-vector entry point matches the subspace one") {
  Rng rng(407);
  for (long trial = 0; trial < 100; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    const int n = 6;
    const Subspace v = random_subspace(n, rng.uniform_int(0, n), f, rng);
    const Subspace w = random_subspace(n, rng.uniform_int(0, n), f, rng);
    const RealVector th = principal_angles(v, w);
    for (Metric kind : kAllMetrics) {
      const double a = asym_distance(kind, v, w);
      const double b =
          asym_distance_from_angles(kind, v.dim(), w.dim(), n, th);
      CHECK(std::abs(a - b) < 1e-13);
    }
  }
}

TEST_CASE("symmetrizations") {
  Rng rng(409);
  const Subspace v = random_subspace(6, 2, Field::Real, rng);
  const Subspace w = random_subspace(6, 4, Field::Real, rng);
  for (Metric kind : kAllMetrics) {
    const double vw = dist(kind, v, w);
    const double wv = dist(kind, w, v);
    CHECK(symmetrize(kind, v, w, SymMode::Max) ==
          doctest::Approx(std::max(vw, wv)));
    CHECK(symmetrize(kind, v, w, SymMode::Min) ==
          doctest::Approx(std::min(vw, wv)));
    CHECK(symmetrize(kind, v, w, SymMode::PNorm, 2.0) ==
          doctest::Approx(std::hypot(vw, wv)));
  }
  CHECK(sym_mode_is_metric(SymMode::Max));
  CHECK(sym_mode_is_metric(SymMode::PNorm));
  CHECK_FALSE(sym_mode_is_metric(SymMode::Min));
}

TEST_CASE("metric names round trip") {
  for (Metric kind : kAllMetrics) {
    Metric back;
    REQUIRE(metric_from_name(metric_name(kind), &back));
    CHECK(back == kind);
  }
  Metric out;
  CHECK(metric_from_name("d_cw", &out));  // short alias
  CHECK(out == Metric::ChordalWedge);
  CHECK_FALSE(metric_from_name("d_nope", &out));
  for (LegacyMetric kind : kAllLegacyMetrics) {
    LegacyMetric back;
    REQUIRE(legacy_from_name(legacy_name(kind), &back));
    CHECK(back == kind);
  }
}

TEST_CASE("families") {
  CHECK(family_of(Metric::Geodesic) == MetricFamily::L2);
  CHECK(family_of(Metric::ChordalFrobenius) == MetricFamily::L2);
  CHECK(family_of(Metric::ProjectionFrobenius) == MetricFamily::L2);
  CHECK(family_of(Metric::FubiniStudy) == MetricFamily::Wedge);
  CHECK(family_of(Metric::ChordalWedge) == MetricFamily::Wedge);
  CHECK(family_of(Metric::BinetCauchy) == MetricFamily::Wedge);
  CHECK(family_of(Metric::Asimov) == MetricFamily::Max);
  CHECK(family_of(Metric::ChordalTwo) == MetricFamily::Max);
  CHECK(family_of(Metric::ProjectionTwo) == MetricFamily::Max);
}

TEST_CASE("older distances on planted angles") {
  Rng rng(411);
  const auto eq = plant_angles(6, {kPi / 6, kPi / 4}, 0, Field::Real, rng);
  const struct { LegacyMetric kind; double want; } table[] = {
      {LegacyMetric::Symmetric, std::sqrt(3.0) / 2.0},
      {LegacyMetric::ExtendedProjectionF, std::sqrt(3.0) / 2.0},
      {LegacyMetric::Directional, std::sqrt(3.0) / 2.0},
      {LegacyMetric::ContainmentGap, std::sqrt(2.0) / 2.0},
      {LegacyMetric::SymmetricGap, std::sqrt(2.0) / 2.0},
      {LegacyMetric::EqualDimFubiniStudy, std::acos(std::sqrt(6.0) / 4.0)},
      {LegacyMetric::NaiveProjectionF, std::sqrt(3.0) / 2.0},
      {LegacyMetric::MaxCorrelation, 0.5},
      {LegacyMetric::Martin, std::sqrt(std::log(8.0 / 3.0))},
  };
  for (const auto& row : table) {
    CAPTURE(legacy_name(row.kind));
    CHECK(legacy_distance(row.kind, eq.v, eq.w) ==
          doctest::Approx(row.want).epsilon(1e-12));
  }
}

TEST_CASE("older distances across a dimension gap") {
  Rng rng(413);
  const auto pr = plant_angles(7, {kPi / 6, kPi / 4}, 1, Field::Real, rng);
  CHECK(legacy_distance(LegacyMetric::Symmetric, pr.v, pr.w) ==
        doctest::Approx(std::sqrt(7.0) / 2.0).epsilon(1e-12));
  CHECK(legacy_distance(LegacyMetric::ExtendedProjectionF, pr.v, pr.w) ==
        doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  CHECK(legacy_distance(LegacyMetric::Directional, pr.v, pr.w) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(legacy_distance(LegacyMetric::Directional, pr.w, pr.v) ==
        doctest::Approx(std::sqrt(7.0) / 2.0).epsilon(1e-12));
  CHECK(legacy_distance(LegacyMetric::ContainmentGap, pr.w, pr.v) == 1.0);
  CHECK(legacy_distance(LegacyMetric::EqualDimFubiniStudy, pr.v, pr.w) ==
        kHalfPi);
  CHECK(std::isinf(legacy_distance(LegacyMetric::Martin, pr.v, pr.w)));
  const Subspace z = Subspace::zero(7, Field::Real);
  CHECK(legacy_distance(LegacyMetric::MaxCorrelation, z, pr.w) == 1.0);
}

TEST_CASE("Martin blows up at a right angle") {
  Rng rng(415);
  const auto pr = plant_angles(4, {kHalfPi}, 0, Field::Real, rng);
  CHECK(std::isinf(legacy_distance(LegacyMetric::Martin, pr.v, pr.w)));
}

TEST_CASE("triangle inequality status of the older distances") {
  CHECK(legacy_triangle_status(LegacyMetric::Symmetric) ==
        TriangleStatus::Holds);
  CHECK(legacy_triangle_status(LegacyMetric::Directional) ==
        TriangleStatus::Unknown);
  CHECK(legacy_triangle_status(LegacyMetric::NaiveProjectionF) ==
        TriangleStatus::Fails);
  CHECK(legacy_triangle_status(LegacyMetric::MaxCorrelation) ==
        TriangleStatus::Fails);
  CHECK(legacy_triangle_status(LegacyMetric::Martin) == TriangleStatus::Fails);
}

TEST_CASE("shrinking the target: planted equality branches") {
  Rng rng(417);
  for (Field f : {Field::Real, Field::Complex}) {
    const Subspace w = random_subspace(8, 4, f, rng);
    const Subspace v = random_subspace(8, 2, f, rng);

    // keep the projection subspace
    const Subspace kept = projection_subspace(w, v);
    CHECK(target_shrink_preserves_dg(v, w, kept));
    CHECK(target_shrink_preserves_dfs(v, w, kept));
    CHECK(std::abs(dist(Metric::Geodesic, v, kept) -
                   dist(Metric::Geodesic, v, w)) < 1e-10);
    CHECK(std::abs(dist(Metric::FubiniStudy, v, kept) -
                   dist(Metric::FubiniStudy, v, w)) < 1e-10);

    // fully orthogonal source, target shrunk below dim v
    const Subspace vo = random_subspace_of(complement(w), 3, rng);
    const Subspace w_small = random_subspace_of(w, 2, rng);
    CHECK(target_shrink_preserves_dg(vo, w, w_small));
    CHECK(std::abs(dist(Metric::Geodesic, vo, w_small) -
                   dist(Metric::Geodesic, vo, w)) < 1e-10);

    // dim v > dim w pins both values at the diameter
    const Subspace big = random_subspace(8, 5, f, rng);
    CHECK(target_shrink_preserves_dg(big, w, w_small));

    // generic shrink moves the value
    const Subspace w_generic = random_subspace_of(w, 2, rng);
    CHECK_FALSE(target_shrink_preserves_dg(v, w, w_generic));
    CHECK_FALSE(target_shrink_preserves_dfs(v, w, w_generic));
    CHECK(dist(Metric::Geodesic, v, w_generic) >
          dist(Metric::Geodesic, v, w) + 1e-6);
  }
}

TEST_CASE("shrinking the source: planted equality branches") {
  Rng rng(419);
  for (Field f : {Field::Real, Field::Complex}) {
    const Subspace w = random_subspace(8, 4, f, rng);
    const Subspace inside = random_subspace_of(w, 2, rng);
    const Subspace out = random_subspace_of(complement(w), 1, rng);
    const Subspace v = direct_sum(inside, out);

    CHECK(source_shrink_preserves_dg(v, out, w));
    CHECK(source_shrink_preserves_dfs(v, out, w));
    CHECK(std::abs(dist(Metric::Geodesic, out, w) -
                   dist(Metric::Geodesic, v, w)) < 1e-10);
    CHECK(std::abs(dist(Metric::FubiniStudy, out, w) -
                   dist(Metric::FubiniStudy, v, w)) < 1e-10);

    // partially orthogonal sub keeps the right angle for the product kind
    const Subspace vo = random_subspace_of(complement(w), 2, rng);
    const Subspace v2 = direct_sum(vo, random_subspace_of(w, 1, rng));
    CHECK(source_shrink_preserves_dfs(v2, vo, w));
    CHECK(std::abs(dist(Metric::FubiniStudy, vo, w) -
                   dist(Metric::FubiniStudy, v2, w)) < 1e-10);

    // generic sub loses angle mass
    const Subspace v_generic = random_subspace_of(v, 1, rng);
    CHECK_FALSE(source_shrink_preserves_dg(v, v_generic, w));
  }
}

TEST_CASE("shrink predicates agree with the numerics") {
  Rng rng(421);
  int eq_dg = 0, eq_dfs = 0;
  for (long trial = 0; trial < 300; ++trial) {
    const Field f = trial % 2 ? Field::Complex : Field::Real;
    const int n = 6;
    const Subspace v = random_subspace(n, rng.uniform_int(0, 4), f, rng);
    const Subspace w = random_subspace(n, rng.uniform_int(1, 5), f, rng);
    const Subspace ws =
        random_subspace_of(w, rng.uniform_int(0, w.dim()), rng);
    const bool num_dg = std::abs(dist(Metric::Geodesic, v, ws) -
                                 dist(Metric::Geodesic, v, w)) < 1e-9;
    const bool num_dfs = std::abs(dist(Metric::FubiniStudy, v, ws) -
                                  dist(Metric::FubiniStudy, v, w)) < 1e-9;
    CHECK(target_shrink_preserves_dg(v, w, ws) == num_dg);
    CHECK(target_shrink_preserves_dfs(v, w, ws) == num_dfs);
    eq_dg += num_dg;
    eq_dfs += num_dfs;

    const Subspace vs =
        random_subspace_of(v, rng.uniform_int(0, v.dim()), rng);
    const bool num_sdg = std::abs(dist(Metric::Geodesic, vs, w) -
                                  dist(Metric::Geodesic, v, w)) < 1e-9;
    const bool num_sdfs = std::abs(dist(Metric::FubiniStudy, vs, w) -
                                   dist(Metric::FubiniStudy, v, w)) < 1e-9;
    CHECK(source_shrink_preserves_dg(v, vs, w) == num_sdg);
    CHECK(source_shrink_preserves_dfs(v, vs, w) == num_sdfs);
  }
  // both outcomes actually appear
  CHECK(eq_dg > 0);
  CHECK(eq_dg < 300);
  CHECK(eq_dfs > 0);
  CHECK(eq_dfs < 300);
}
