#pragma once

#include "photon/kgrid.hpp"
#include "photon/linalg.hpp"

namespace photon {

struct BerryGauge {
  Vec3 I;
  explicit BerryGauge(const Vec3& i);
};

// Right-handed frame attached to a wavevector: w = k/k, v = I x k / |I x k|,
// u = v x w.
struct Triad {
  Vec3 u, v, w;
};

Triad triad_at(const Vec3& k, const BerryGauge& gauge, double eps_cone = 1e-2,
               double eps_k = 1e-12);

// 3x2 matrix with columns (u, v); maps spinors to transverse vectors.
Mat32 varpi_at(const Vec3& k, const BerryGauge& gauge, double eps_cone = 1e-2,
               double eps_k = 1e-12);

// A_B = (I.k)/(k |I x k|) v
Vec3 berry_potential(const Vec3& k, const BerryGauge& gauge,
                     double eps_cone = 1e-2, double eps_k = 1e-12);

// H_B = curl_k A_B = -w/k^2
Vec3 berry_field_analytic(const Vec3& k, double eps_k = 1e-12);

// Rotation angle between the (u, v) axes of two gauges at the same k,
// principal value in (-pi, pi]: u' = u cos(phi) + v sin(phi).
double gauge_angle(const Vec3& k, const BerryGauge& gauge,
                   const BerryGauge& gauge_prime, double eps_cone = 1e-2,
                   double eps_k = 1e-12);

// Per-grid cache of the triad, varpi, and Berry potential; points where the
// gauge is singular (or the grid mask is off) are flagged invalid.
struct GaugeFrame {
  std::shared_ptr<const KGrid> grid;
  BerryGauge gauge;
  std::vector<Vec3> u, v, w;
  std::vector<Vec3> A;
  std::vector<std::uint8_t> ok;

  GaugeFrame(std::shared_ptr<const KGrid> g, const BerryGauge& gauge_in);
  Mat32 varpi(std::size_t q) const {
    Mat32 m;
    m.col(0) = u[q].cast<Complex>();
    m.col(1) = v[q].cast<Complex>();
    return m;
  }
};

// phi(k) = gauge_angle per point, as a real scalar field.
ScalarField gauge_angle_field(const GaugeFrame& from, const GaugeFrame& to);

// Gradient of a wrapped angle field: neighbor values are shifted by
// multiples of 2*pi onto the branch of the center point before the stencil
// is applied.
ScalarField gradient_unwrapped(const ScalarField& phi, int axis);

VectorField3 berry_potential_field(const GaugeFrame& frame);

}  // namespace photon
