#include "photon/gauge.hpp"

#include <cmath>

#include "photon/errors.hpp"

namespace photon {

BerryGauge::BerryGauge(const Vec3& i) : I(i) {
  if (std::abs(I.norm() - 1.0) > 1e-12)
    throw ConfigError("gauge vector must be a unit vector");
}

namespace {

void check_regular(const Vec3& k, const BerryGauge& gauge, double eps_cone,
                   double eps_k) {
  const double kn = k.norm();
  if (kn < eps_k) throw ZeroWavevector("wavevector magnitude below eps_k");
  const double c = std::abs(k.dot(gauge.I)) / kn;
  if (c > std::cos(eps_cone))
    throw SingularGauge("wavevector inside the singular cone around +-I");
}

}  // namespace

Triad triad_at(const Vec3& k, const BerryGauge& gauge, double eps_cone,
               double eps_k) {
  check_regular(k, gauge, eps_cone, eps_k);
  Triad t;
  t.w = k.normalized();
  t.v = gauge.I.cross(k).normalized();
  t.u = t.v.cross(t.w);
  return t;
}

Mat32 varpi_at(const Vec3& k, const BerryGauge& gauge, double eps_cone,
               double eps_k) {
  const Triad t = triad_at(k, gauge, eps_cone, eps_k);
  Mat32 m;
  m.col(0) = t.u.cast<Complex>();
  m.col(1) = t.v.cast<Complex>();
  return m;
}

Vec3 berry_potential(const Vec3& k, const BerryGauge& gauge, double eps_cone,
                     double eps_k) {
  const Triad t = triad_at(k, gauge, eps_cone, eps_k);
  const double kn = k.norm();
  const double s = gauge.I.dot(k) / (kn * gauge.I.cross(k).norm());
  return s * t.v;
}

Vec3 berry_field_analytic(const Vec3& k, double eps_k) {
  const double kn = k.norm();
  if (kn < eps_k) throw ZeroWavevector("wavevector magnitude below eps_k");
  return -k / (kn * kn * kn);
}

double gauge_angle(const Vec3& k, const BerryGauge& gauge,
                   const BerryGauge& gauge_prime, double eps_cone,
                   double eps_k) {
  const Triad t = triad_at(k, gauge, eps_cone, eps_k);
  const Triad tp = triad_at(k, gauge_prime, eps_cone, eps_k);
  return std::atan2(tp.u.dot(t.v), tp.u.dot(t.u));
}

GaugeFrame::GaugeFrame(std::shared_ptr<const KGrid> g,
                       const BerryGauge& gauge_in)
    : grid(std::move(g)),
      gauge(gauge_in),
      u(grid->size()),
      v(grid->size()),
      w(grid->size()),
      A(grid->size()),
      ok(grid->mask) {
  for (std::size_t q = 0; q < grid->size(); ++q) {
    if (!ok[q]) continue;
    const Vec3 k = grid->point(q);
    try {
      const Triad t = triad_at(k, gauge, grid->eps_cone, grid->eps_k);
      u[q] = t.u;
      v[q] = t.v;
      w[q] = t.w;
      const double kn = k.norm();
      A[q] = (gauge.I.dot(k) / (kn * gauge.I.cross(k).norm())) * t.v;
    } catch (const std::runtime_error&) {
      ok[q] = 0;
    }
  }
}

ScalarField gauge_angle_field(const GaugeFrame& from, const GaugeFrame& to) {
  ScalarField phi(from.grid);
  for (std::size_t q = 0; q < from.grid->size(); ++q) {
    if (!from.ok[q] || !to.ok[q]) {
      phi.ok[q] = 0;
      continue;
    }
    phi.v[q] = std::atan2(to.u[q].dot(from.v[q]), to.u[q].dot(from.u[q]));
  }
  return phi;
}

ScalarField gradient_unwrapped(const ScalarField& phi, int axis) {
  const KGrid& g = *phi.grid;
  if (axis < 0 || axis > 2) throw GridError("axis out of range");
  const double h = g.spacing[axis];
  const std::size_t stride =
      axis == 0 ? static_cast<std::size_t>(g.n[1]) * g.n[2]
                : (axis == 1 ? static_cast<std::size_t>(g.n[2]) : 1);
  const int na = g.n[axis];

  ScalarField out(phi.grid);
  for (std::size_t q = 0; q < g.size(); ++q) {
    const int ia = g.unravel(q)[axis];
    const double p0 = phi.v[q].real();
    double acc = 0.0;
    bool valid = phi.ok[q] != 0;
    auto take = [&](int off, double c) {
      const std::size_t p = q + static_cast<std::ptrdiff_t>(off) * stride;
      if (!phi.ok[p]) {
        valid = false;
        return;
      }
      acc += c * (p0 + wrap_angle(phi.v[p].real() - p0));
    };
    if (ia >= 2 && ia <= na - 3) {
      take(-2, 1.0 / (12.0 * h));
      take(-1, -8.0 / (12.0 * h));
      take(1, 8.0 / (12.0 * h));
      take(2, -1.0 / (12.0 * h));
    } else if (ia < 2) {
      take(0, -3.0 / (2.0 * h));
      take(1, 4.0 / (2.0 * h));
      take(2, -1.0 / (2.0 * h));
    } else {
      take(0, 3.0 / (2.0 * h));
      take(-1, -4.0 / (2.0 * h));
      take(-2, 1.0 / (2.0 * h));
    }
    if (valid) out.v[q] = acc;
    else out.ok[q] = 0;
  }
  return out;
}

VectorField3 berry_potential_field(const GaugeFrame& frame) {
  VectorField3 out(frame.grid);
  out.ok = frame.ok;
  for (std::size_t q = 0; q < frame.grid->size(); ++q)
    if (out.ok[q]) out.v[q] = frame.A[q].cast<Complex>();
  return out;
}

}  // namespace photon
