#include <doctest.h>

#include <cmath>
#include <complex>

#include "photon/errors.hpp"
#include "photon/kgrid.hpp"

using namespace photon;

namespace {

std::shared_ptr<const KGrid> offaxis_grid(int n = 33) {
  return build_grid(Vec3(10, 0, 0), Vec3(0.5, 0.5, 0.5), {n, n, n},
                    Vec3(0, 0, 1));
}

}  // namespace

TEST_CASE("build_grid masks the origin and the singular cone") {
  auto g = build_grid(Vec3::Zero(), Vec3(1, 1, 1), {5, 5, 5}, Vec3(0, 0, 1));
  CHECK(g->size() == 125);
  // the origin is masked by eps_k
  bool origin_found = false;
  for (std::size_t q = 0; q < g->size(); ++q) {
    const Vec3 k = g->point(q);
    if (k.norm() < 1e-9) {
      origin_found = true;
      CHECK(g->mask[q] == 0);
    }
    // points on the +-z axis lie inside the cone around I
    if (k.head<2>().norm() < 1e-12 && k.norm() > 1e-9) CHECK(g->mask[q] == 0);
    // a generic off-axis point is kept
    if ((k - Vec3(1, 1, 1)).norm() < 1e-12) CHECK(g->mask[q] == 1);
  }
  CHECK(origin_found);
  CHECK(g->masked_fraction > 0.0);
}

TEST_CASE("build_grid keeps every point of an off-axis box") {
  auto g = offaxis_grid();
  CHECK(g->masked_fraction == 0.0);
  for (std::size_t q = 0; q < g->size(); ++q) CHECK(g->mask[q] == 1);
}

TEST_CASE("build_grid on a box straddling the cone succeeds with a small "
          "masked fraction") {
  auto g = build_grid(Vec3(0, 0, 10), Vec3(0.5, 0.5, 0.5), {33, 33, 33},
                      Vec3(0, 0, 1));
  CHECK(g->masked_fraction > 0.0);
  CHECK(g->masked_fraction < 0.5);
  // every masked point is inside the cone: transverse radius < |k| tan(eps)
  for (std::size_t q = 0; q < g->size(); ++q) {
    const Vec3 k = g->point(q);
    const double r = k.head<2>().norm();
    if (!g->mask[q]) CHECK(r <= k.norm() * std::tan(g->eps_cone) * (1 + 1e-12));
  }
}

TEST_CASE("build_grid rejects invalid requests") {
  CHECK_THROWS_AS(build_grid(Vec3(10, 0, 0), Vec3(0.5, 0.5, 0.5), {6, 33, 33},
                             Vec3(0, 0, 1)),
                  GridError);
  CHECK_THROWS_AS(build_grid(Vec3(10, 0, 0), Vec3(0.5, 0.5, 0.5), {3, 5, 5},
                             Vec3(0, 0, 1)),
                  GridError);
  CHECK_THROWS_AS(build_grid(Vec3(10, 0, 0), Vec3(0.5, 0.5, 0.5), {9, 9, 9},
                             Vec3(0, 0, 2)),
                  GridError);
  // a box buried inside the singular cone: everything masked
  CHECK_THROWS_AS(build_grid(Vec3(0, 0, 10), Vec3(0.001, 0.001, 0.001),
                             {5, 5, 5}, Vec3(0, 0, 1)),
                  GridError);
}

TEST_CASE("gradient is exact on quadratics and annihilates constants") {
  auto g = offaxis_grid(17);
  ScalarField sq(g), cst(g);
  for (std::size_t q = 0; q < g->size(); ++q) {
    sq.v[q] = g->point(q).x() * g->point(q).x();
    cst.v[q] = 3.25;
  }
  for (int order : {2, 4, 6, 8}) {
    const ScalarField d = gradient(sq, 0, order);
    const ScalarField dc = gradient(cst, 0, order);
    for (std::size_t q = 0; q < g->size(); ++q) {
      const auto idx = g->unravel(q);
      if (idx[0] == 0 || idx[0] == 16) continue;  // one-sided layer
      CHECK(std::abs(d.v[q] - 2.0 * g->point(q).x()) < 1e-10);
    }
    for (std::size_t q = 0; q < g->size(); ++q)
      CHECK(std::abs(dc.v[q]) < 1e-12);
  }
}

TEST_CASE("gradient of a plane wave converges at 4th order") {
  const double a = 3.0;
  auto error_at = [&](int n) {
    auto g = offaxis_grid(n);
    ScalarField f(g);
    for (std::size_t q = 0; q < g->size(); ++q)
      f.v[q] = std::exp(Complex(0.0, a * g->point(q).x()));
    const ScalarField d = gradient(f, 0, 4);
    double worst = 0.0;
    for (std::size_t q = 0; q < g->size(); ++q) {
      if (g->on_boundary_shell(q, 2)) continue;
      worst = std::max(worst,
                       std::abs(d.v[q] - Complex(0.0, a) * f.v[q]) / a);
    }
    return worst;
  };
  const double e1 = error_at(17), e2 = error_at(33);
  const double h1 = 1.0 / 16.0, h2 = 1.0 / 32.0;
  const double slope = std::log(e1 / e2) / std::log(h1 / h2);
  CHECK(slope == doctest::Approx(4.0).epsilon(0.3 / 4.0));
}

TEST_CASE("gradient propagates the mask through stencils") {
  auto g = build_grid(Vec3::Zero(), Vec3(1, 1, 1), {9, 9, 9}, Vec3(0, 0, 1));
  ScalarField f(g);
  for (std::size_t q = 0; q < g->size(); ++q) f.v[q] = 1.0;
  // the masked points lie on the z-axis, so differentiate across it
  const ScalarField d = gradient(f, 0);
  for (std::size_t q = 0; q < g->size(); ++q)
    if (!g->mask[q]) CHECK(d.ok[q] == 0);
  bool some_invalidated = false, some_valid = false;
  for (std::size_t q = 0; q < g->size(); ++q) {
    if (g->mask[q] && !d.ok[q]) some_invalidated = true;
    if (d.ok[q]) some_valid = true;
  }
  CHECK(some_invalidated);
  CHECK(some_valid);
}

TEST_CASE("curl of a rigid rotation field is the rotation axis") {
  auto g = offaxis_grid(17);
  VectorField3 f(g);
  for (std::size_t q = 0; q < g->size(); ++q) {
    const Vec3 k = g->point(q);
    f.v[q] = CVec3(Complex(-k.y() / 2), Complex(k.x() / 2), Complex(0));
  }
  const VectorField3 c = curl(f);
  for (std::size_t q = 0; q < g->size(); ++q) {
    if (g->on_boundary_shell(q, 1)) continue;
    CHECK((c.v[q] - CVec3(0, 0, 1)).norm() < 1e-10);
  }
}

TEST_CASE("curl of a gradient vanishes within stencil tolerance") {
  auto g = offaxis_grid(33);
  ScalarField s(g);
  for (std::size_t q = 0; q < g->size(); ++q) {
    const Vec3 k = g->point(q);
    s.v[q] = std::sin(k.x()) * std::cos(0.7 * k.y()) + k.z() * k.z();
  }
  VectorField3 gr(g);
  for (int a = 0; a < 3; ++a) {
    const ScalarField d = gradient(s, a);
    for (std::size_t q = 0; q < g->size(); ++q) {
      if (!d.ok[q]) gr.ok[q] = 0;
      else gr.v[q][a] = d.v[q];
    }
  }
  const VectorField3 c = curl(gr);
  for (std::size_t q = 0; q < g->size(); ++q) {
    if (!c.ok[q] || g->on_boundary_shell(q, 8)) continue;
    CHECK(c.v[q].norm() < 1e-8);
  }
}

TEST_CASE("integrate: indicator, Gaussian, and zero fields") {
  auto g = offaxis_grid(33);
  ScalarField one(g), zero(g), gauss(g);
  const double s = 0.06;
  for (std::size_t q = 0; q < g->size(); ++q) {
    one.v[q] = 1.0;
    const double r2 = (g->point(q) - g->center).squaredNorm();
    gauss.v[q] = std::exp(-r2 / (2 * s * s)) /
                 std::pow(2 * M_PI * s * s, 1.5);
  }
  // uniform weights: the indicator integrates to weight * point count,
  // approximately the box volume
  CHECK(integrate(one).real() ==
        doctest::Approx(g->weight * double(g->size())));
  CHECK(integrate(one).real() == doctest::Approx(1.0).epsilon(0.1));
  CHECK(integrate(gauss).real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(integrate(zero)) == 0.0);

  // linearity and positivity
  ScalarField sum(g);
  for (std::size_t q = 0; q < g->size(); ++q)
    sum.v[q] = 2.0 * one.v[q] + 3.0 * gauss.v[q];
  CHECK(std::abs(integrate(sum) - (2.0 * integrate(one) + 3.0 * integrate(gauss)))
        < 1e-10);
}
