#include "photon/verify.hpp"

#include <cmath>

#include "photon/errors.hpp"

namespace photon {

namespace {

ReportEntry entry(std::string name, std::string eq, double residual,
                  double tol) {
  ReportEntry e;
  e.name = std::move(name);
  e.equation = std::move(eq);
  e.residual = residual;
  e.residual_median = residual;
  e.tolerance = tol;
  e.pass = residual <= tol;
  return e;
}

double rel_diff(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

}  // namespace

OperatorReport verify_quasi_unitarity(std::shared_ptr<const KGrid> grid,
                                      std::shared_ptr<const GaugeFrame> frame,
                                      int n_points, int n_states,
                                      std::mt19937_64& rng) {
  OperatorReport rep;
  rep.title = "quasi-unitarity";
  rep.grid_metadata = {{"n_points", n_points}, {"n_states", n_states}};

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double r2 = 0.0, r3 = 0.0;
  int accepted = 0;
  while (accepted < n_points) {
    Vec3 k;
    for (int a = 0; a < 3; ++a)
      k[a] = grid->center[a] + (2.0 * unit(rng) - 1.0) * grid->half_width[a];
    Mat32 vp;
    try {
      vp = varpi_at(k, frame->gauge, grid->eps_cone, grid->eps_k);
    } catch (const std::runtime_error&) {
      continue;  // masked point, resample
    }
    ++accepted;
    r2 = std::max(r2, (vp.adjoint() * vp - Mat2::Identity()).norm());
    const CVec3 w = k.normalized().cast<Complex>();
    const Mat3 proj = Mat3::Identity() - w * w.adjoint();
    r3 = std::max(r3, (vp * vp.adjoint() - proj).norm());
  }
  rep.entries.push_back(
      entry("varpi_left_unitarity", "varpi^dag varpi = I2", r2, 1e-12));
  rep.entries.push_back(entry("varpi_right_unitarity",
                              "varpi varpi^dag = I3 - w w^dag", r3, 1e-12));

  double rt_vec = 0.0, rt_spinor = 0.0, transversality = 0.0, norm_gap = 0.0;
  for (int t = 0; t < n_states; ++t) {
    const auto ft = random_packet(*frame, rng);
    const auto f = embed(ft, *frame);
    transversality =
        std::max(transversality, max_transversality_violation(f, *frame));
    norm_gap = std::max(norm_gap, std::abs(norm(f) - norm(ft)));

    const auto ft2 = project(f, *frame);
    const auto f2 = embed(ft2, *frame);
    double ds = 0.0, dv = 0.0;
    for (std::size_t q = 0; q < grid->size(); ++q) {
      if (ft.values.ok[q] && ft2.values.ok[q])
        ds = std::max(ds, (ft2.values.v[q] - ft.values.v[q]).norm());
      if (f.values.ok[q] && f2.values.ok[q])
        dv = std::max(dv, (f2.values.v[q] - f.values.v[q]).norm());
    }
    rt_spinor = std::max(rt_spinor, ds);
    rt_vec = std::max(rt_vec, dv);
  }
  rep.entries.push_back(entry("embed_transversality",
                              "f = varpi f~ satisfies f^dag w = 0",
                              transversality, 1e-12));
  rep.entries.push_back(
      entry("norm_identity", "f~^dag f~ = f^dag f", norm_gap, 1e-10));
  rep.entries.push_back(entry("project_embed_roundtrip",
                              "project(embed(f~)) = f~", rt_spinor, 1e-10));
  rep.entries.push_back(entry("embed_project_roundtrip",
                              "embed(project(f)) = f", rt_vec, 1e-10));
  return rep;
}

double monopole_flux(double k_radius, int n_theta, int n_phi) {
  const BerryGauge gz(Vec3(0, 0, 1)), gx(Vec3(1, 0, 0));
  const double h = 1e-4 * k_radius;
  double flux = 0.0;
  for (int it = 0; it < n_theta; ++it) {
    const double c = -1.0 + (it + 0.5) * 2.0 / n_theta;  // midpoint in cos
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = (ip + 0.5) * 2.0 * M_PI / n_phi;
      const Vec3 nhat(s * std::cos(phi), s * std::sin(phi), c);
      // patch the two gauges so the FD stencil never meets a singular line
      const BerryGauge& g = std::abs(c) < 0.7 ? gz : gx;
      const Vec3 k = k_radius * nhat;
      Vec3 curl = Vec3::Zero();
      std::array<std::array<Vec3, 2>, 3> Av;
      for (int a = 0; a < 3; ++a) {
        Vec3 kp = k, km = k;
        kp[a] += h;
        km[a] -= h;
        Av[a][0] = berry_potential(kp, g);
        Av[a][1] = berry_potential(km, g);
      }
      auto d = [&](int a, int comp) {
        return (Av[a][0][comp] - Av[a][1][comp]) / (2.0 * h);
      };
      curl[0] = d(1, 2) - d(2, 1);
      curl[1] = d(2, 0) - d(0, 2);
      curl[2] = d(0, 1) - d(1, 0);
      flux += curl.dot(nhat) * k_radius * k_radius;
    }
  }
  flux *= (2.0 / n_theta) * (2.0 * M_PI / n_phi);
  return flux;
}

OperatorReport verify_gauge_geometry(std::shared_ptr<const KGrid> grid,
                                     std::shared_ptr<const GaugeFrame> frame,
                                     std::shared_ptr<const GaugeFrame> frame2) {
  OperatorReport rep;
  rep.title = "berry-gauge geometry";
  rep.grid_metadata = {{"n", grid->n}};

  // numerical curl of A_B against the analytic monopole field
  {
    const VectorField3 A = berry_potential_field(*frame);
    const VectorField3 H = curl(A);
    double worst = 0.0;
    for (std::size_t q = 0; q < grid->size(); ++q) {
      if (!H.ok[q] || grid->on_boundary_shell(q, 2)) continue;
      const Vec3 exact = berry_field_analytic(grid->point(q), grid->eps_k);
      worst = std::max(worst,
                       (H.v[q].real() - exact).norm() / exact.norm());
    }
    rep.entries.push_back(
        entry("berry_curvature", "curl A_B = -w/k^2", worst, 1e-4));
  }

  // gauge transformation of the potential: A' - A = grad phi
  {
    const ScalarField phi = gauge_angle_field(*frame, *frame2);
    std::array<ScalarField, 3> dphi;
    for (int a = 0; a < 3; ++a) dphi[a] = gradient_unwrapped(phi, a);
    double worst = 0.0, amax = 0.0;
    for (std::size_t q = 0; q < grid->size(); ++q) {
      if (!frame->ok[q] || !frame2->ok[q]) continue;
      if (grid->on_boundary_shell(q, 2)) continue;
      amax = std::max(amax, frame->A[q].norm());
      bool valid = true;
      Vec3 g;
      for (int a = 0; a < 3; ++a) {
        if (!dphi[a].ok[q]) valid = false;
        else g[a] = dphi[a].v[q].real();
      }
      if (!valid) continue;
      worst = std::max(worst, (frame2->A[q] - frame->A[q] - g).norm());
    }
    rep.entries.push_back(entry("potential_gauge_transform",
                                "A'_B - A_B = grad phi",
                                amax > 0 ? worst / amax : worst, 1e-4));
  }

  // monopole flux through a k-space sphere
  {
    const double radius = std::max(grid->center.norm(), 1.0);
    const double flux = monopole_flux(radius);
    rep.entries.push_back(entry("monopole_flux",
                                "flux(curl A_B) over sphere = -4 pi",
                                std::abs(flux / (-4.0 * M_PI) - 1.0), 0.01));
  }
  return rep;
}

OperatorReport verify_gauge_covariance(std::shared_ptr<const KGrid> grid,
                                       std::shared_ptr<const GaugeFrame> frame,
                                       int n_states, int n_gauge_pairs,
                                       std::mt19937_64& rng) {
  OperatorReport rep;
  rep.title = "gauge covariance";
  rep.grid_metadata = {{"n_states", n_states}, {"pairs", n_gauge_pairs}};

  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_frame = [&]() {
    for (;;) {
      Vec3 I(gauss(rng), gauss(rng), gauss(rng));
      if (I.norm() < 1e-3) continue;
      I.normalize();
      // keep the singular axis well away from the box, not just outside it,
      // so the gauge angle stays smooth at stencil scale
      double min_sin = 1.0;
      for (std::size_t q = 0; q < grid->size(); ++q)
        min_sin = std::min(min_sin, I.cross(grid->point(q).normalized()).norm());
      if (min_sin < std::sin(10.0 * grid->eps_cone)) continue;
      auto f = std::make_shared<GaugeFrame>(grid, BerryGauge(I));
      if (f->ok == grid->mask) return f;  // cone misses the sampled box
    }
  };

  double d_norm = 0.0, d_p = 0.0, d_s = 0.0, d_w = 0.0, d_x = 0.0;
  double d_embed = 0.0, d_stokes = 0.0, d_phase = 0.0, d_mod = 0.0;

  for (int pair = 0; pair < n_gauge_pairs; ++pair) {
    auto fa = random_frame();
    auto fb = random_frame();
    const auto pa = op_momentum(grid);
    const auto sa = op_spin(fa);
    const auto sb = op_spin(fb);
    const auto oma = op_omega(grid);
    const auto xa = op_position(fa);
    const auto xb = op_position(fb);

    for (int t = 0; t < n_states; ++t) {
      auto ft_a = random_packet(*fa, rng);
      auto ft_b = gauge_transform(ft_a, *fa, *fb);

      d_norm = std::max(d_norm, std::abs(norm(ft_a) - norm(ft_b)));
      d_p = std::max(d_p, rel_diff(expectation(pa, ft_a), expectation(pa, ft_b)));
      d_s = std::max(d_s, rel_diff(expectation(sa, ft_a), expectation(sb, ft_b)));
      d_w = std::max(d_w,
                     std::abs(expectation_component(oma, ft_a, 0).real() -
                              expectation_component(oma, ft_b, 0).real()));
      d_x = std::max(d_x, rel_diff(expectation(xa, ft_a), expectation(xb, ft_b)));

      const auto va = embed(ft_a, *fa);
      const auto vb = embed(ft_b, *fb);
      double de = 0.0;
      for (std::size_t q = 0; q < grid->size(); ++q)
        if (va.values.ok[q] && vb.values.ok[q])
          de = std::max(de, (va.values.v[q] - vb.values.v[q]).norm());
      d_embed = std::max(d_embed, de);

      // Stokes rotation by 2 phi with invariant third component
      const auto st_a = stokes_parameters(ft_a);
      const auto st_b = stokes_parameters(ft_b);
      for (std::size_t q = 0; q < grid->size(); ++q) {
        if (!st_a.ok[q] || !st_b.ok[q]) continue;
        const double phi =
            std::atan2(fb->u[q].dot(fa->v[q]), fb->u[q].dot(fa->u[q]));
        const Vec3& s0 = st_a.stokes[q];
        const Vec3& s1 = st_b.stokes[q];
        const double c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
        d_stokes = std::max(
            d_stokes,
            std::abs(s1[0] - (s0[0] * c2 + s0[1] * s2)) +
                std::abs(s1[1] - (-s0[0] * s2 + s0[1] * c2)) +
                std::abs(s1[2] - s0[2]));
      }
    }

    // Berry phase of a helicity eigenpacket under the gauge change
    for (int sigma : {+1, -1}) {
      GaussianPacketSpec spec;
      spec.k0 = grid->center;
      spec.width = 0.15 * grid->half_width;
      spec.sigma = sigma;
      const auto packet = make_gaussian_packet(spec, *fa);
      const auto fit = berry_phase_check(packet, sigma, *fa, *fb);
      d_phase = std::max(d_phase, fit.max_phase_deviation);
      d_mod = std::max(d_mod, fit.max_modulus_deviation);
    }
  }

  rep.entries.push_back(entry("norm_invariance", "norm(f~') = norm(f~)",
                              d_norm, 1e-6));
  rep.entries.push_back(entry("momentum_invariance", "<p> gauge invariant",
                              d_p, 1e-6));
  rep.entries.push_back(entry("spin_invariance", "<s> gauge invariant", d_s,
                              1e-6));
  rep.entries.push_back(entry("energy_invariance", "<omega> gauge invariant",
                              d_w, 1e-6));
  rep.entries.push_back(entry("position_invariance", "<x> gauge invariant",
                              d_x, 1e-6));
  rep.entries.push_back(entry("embed_covariance", "varpi' f~' = varpi f~",
                              d_embed, 1e-10));
  rep.entries.push_back(entry("stokes_rotation",
                              "Stokes components rotate by 2 phi", d_stokes,
                              1e-12));
  rep.entries.push_back(entry("berry_phase_modulus",
                              "helicity re-gauge preserves |f|", d_mod, 1e-10));
  rep.entries.push_back(entry("berry_phase_fit",
                              "f'_sigma = exp(-i sigma phi) f_sigma", d_phase,
                              1e-10));
  return rep;
}

}  // namespace photon
