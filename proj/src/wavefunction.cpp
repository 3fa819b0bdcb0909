#include "photon/wavefunction.hpp"

#include <cmath>

#include "photon/errors.hpp"

namespace photon {

double max_transversality_violation(const VectorWavefunction& f,
                                    const GaugeFrame& frame) {
  double worst = 0.0, peak = 0.0;
  for (std::size_t q = 0; q < f.grid->size(); ++q) {
    if (!f.values.ok[q] || !frame.ok[q]) continue;
    peak = std::max(peak, f.values.v[q].norm());
    worst = std::max(
        worst, std::abs(frame.w[q].cast<Complex>().dot(f.values.v[q])));
  }
  return peak > 0.0 ? worst / peak : 0.0;
}

TwoComponentWavefunction project(const VectorWavefunction& f,
                                 const GaugeFrame& frame) {
  if (max_transversality_violation(f, frame) > 1e-10)
    throw TransversalityViolated("input vector wavefunction is not transverse");
  TwoComponentWavefunction out{f.grid, frame.gauge, SpinorField2(f.grid),
                               f.time};
  for (std::size_t q = 0; q < f.grid->size(); ++q) {
    if (!f.values.ok[q] || !frame.ok[q]) {
      out.values.ok[q] = 0;
      continue;
    }
    out.values.v[q] = frame.varpi(q).adjoint() * f.values.v[q];
  }
  return out;
}

VectorWavefunction embed(const TwoComponentWavefunction& ft,
                         const GaugeFrame& frame) {
  VectorWavefunction out{ft.grid, VectorField3(ft.grid), ft.time};
  for (std::size_t q = 0; q < ft.grid->size(); ++q) {
    if (!ft.values.ok[q] || !frame.ok[q]) {
      out.values.ok[q] = 0;
      continue;
    }
    out.values.v[q] = frame.varpi(q) * ft.values.v[q];
  }
  return out;
}

TwoComponentWavefunction gauge_transform(const TwoComponentWavefunction& ft,
                                         const GaugeFrame& from,
                                         const GaugeFrame& to) {
  TwoComponentWavefunction out{ft.grid, to.gauge, SpinorField2(ft.grid),
                               ft.time};
  for (std::size_t q = 0; q < ft.grid->size(); ++q) {
    if (!ft.values.ok[q] || !from.ok[q] || !to.ok[q]) {
      out.values.ok[q] = 0;
      continue;
    }
    const double phi =
        std::atan2(to.u[q].dot(from.v[q]), to.u[q].dot(from.u[q]));
    out.values.v[q] = exp_i_sigma3(phi) * ft.values.v[q];
  }
  return out;
}

namespace {

template <class State>
State evolve_impl(State s, double dt) {
  for (std::size_t q = 0; q < s.grid->size(); ++q) {
    if (!s.values.ok[q]) continue;
    const double w = s.grid->point(q).norm();  // omega = c|k|, c = 1
    s.values.v[q] *= std::exp(Complex(0.0, -w * dt));
  }
  s.time += dt;
  return s;
}

}  // namespace

VectorWavefunction evolve(const VectorWavefunction& f, double dt) {
  return evolve_impl(f, dt);
}
TwoComponentWavefunction evolve(const TwoComponentWavefunction& ft,
                                double dt) {
  return evolve_impl(ft, dt);
}

VectorWavefunction rotate_about_wavevector(const VectorWavefunction& f,
                                           const ScalarField& phi) {
  VectorWavefunction out{f.grid, VectorField3(f.grid), f.time};
  for (std::size_t q = 0; q < f.grid->size(); ++q) {
    if (!f.values.ok[q] || !phi.ok[q]) {
      out.values.ok[q] = 0;
      continue;
    }
    const Vec3 w = f.grid->point(q).normalized();
    out.values.v[q] =
        rotate_about<CVec3>(f.values.v[q], w, phi.v[q].real());
  }
  return out;
}

double norm(const TwoComponentWavefunction& ft) { return norm2(ft.values); }
double norm(const VectorWavefunction& f) { return norm2(f.values); }

TwoComponentWavefunction normalized(TwoComponentWavefunction ft) {
  const double n = norm(ft);
  if (n <= 0.0) throw ZeroIntensity("cannot normalize the zero state");
  for (auto& x : ft.values.v) x /= n;
  return ft;
}

TwoComponentWavefunction make_gaussian_packet(const GaussianPacketSpec& spec,
                                              const GaugeFrame& frame) {
  const auto& grid = *frame.grid;
  const Spinor alpha = helicity_eigenvector(spec.sigma);

  auto envelope = [&](const Vec3& k) {
    double e = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double d = (k[a] - spec.k0[a]) / spec.width[a];
      e += 0.5 * d * d;
    }
    return std::exp(-e);
  };

  // reject packets with appreciable amplitude at the box edge or at
  // singular points
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const double env = envelope(grid.point(q));
    if (!frame.ok[q]) {
      if (env > spec.boundary_tol)
        throw PacketTouchesSingularCone(
            "packet amplitude appreciable at a masked point");
      continue;
    }
    if (grid.on_boundary_shell(q, 1) && env > spec.boundary_tol)
      throw PacketTouchesBoundary(
          "packet amplitude appreciable at the box boundary");
  }

  TwoComponentWavefunction out{frame.grid, frame.gauge, SpinorField2(frame.grid),
                               0.0};
  out.values.ok = frame.ok;
  for (std::size_t q = 0; q < grid.size(); ++q)
    if (out.values.ok[q]) out.values.v[q] = alpha * envelope(grid.point(q));
  return normalized(std::move(out));
}

TwoComponentWavefunction random_packet(const GaugeFrame& frame,
                                       std::mt19937_64& rng) {
  const auto& grid = *frame.grid;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Vec3 c, s;
  for (int a = 0; a < 3; ++a) {
    const double box = 2.0 * grid.half_width[a];
    c[a] = grid.center[a] + (unit(rng) - 0.5) * 0.08 * box;
    // wide enough that interior stencils stay accurate, narrow enough that
    // the reduced-order boundary stencils see little amplitude
    s[a] = box * (0.14 + 0.01 * unit(rng));
  }
  // Haar-random polarization spinor
  std::normal_distribution<double> gauss(0.0, 1.0);
  Spinor pol(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
  pol.normalize();
  // low-order polynomial phase
  Vec3 lin;
  Eigen::Matrix3d quad;
  for (int a = 0; a < 3; ++a) {
    lin[a] = unit(rng) - 0.5;
    for (int b = 0; b < 3; ++b) quad(a, b) = (unit(rng) - 0.5) * 0.25;
  }
  quad = (0.5 * (quad + quad.transpose())).eval();

  TwoComponentWavefunction out{frame.grid, frame.gauge, SpinorField2(frame.grid),
                               0.0};
  out.values.ok = frame.ok;
  for (std::size_t q = 0; q < grid.size(); ++q) {
    if (!out.values.ok[q]) continue;
    const Vec3 k = grid.point(q);
    const Vec3 d = k - c;
    double e = 0.0;
    for (int a = 0; a < 3; ++a) e += 0.5 * d[a] * d[a] / (s[a] * s[a]);
    const double phase = lin.dot(d) / s.norm() + d.dot(quad * d) / s.squaredNorm();
    out.values.v[q] = pol * std::exp(Complex(-e, phase));
  }
  return normalized(std::move(out));
}

}  // namespace photon
