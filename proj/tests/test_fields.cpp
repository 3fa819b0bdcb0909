#include <doctest.h>

#include <cmath>
#include <random>

#include "photon/fields.hpp"
#include "photon/kgrid.hpp"
#include "photon/operators.hpp"

using namespace photon;

namespace {

struct Fixture {
  std::shared_ptr<const KGrid> grid;
  std::shared_ptr<GaugeFrame> frame;
  TwoComponentWavefunction ft;
  VectorWavefunction f;
  double k0n;
  Fixture(int n = 21, double width = 0.08)
      : grid(build_grid(10.0 * Vec3(1, 1, 1).normalized(),
                        Vec3(0.5, 0.5, 0.5), {n, n, n}, Vec3(0, 0, 1))),
        frame(std::make_shared<GaugeFrame>(grid, BerryGauge(Vec3(0, 0, 1)))),
        ft([&] {
          GaussianPacketSpec spec;
          spec.k0 = grid->center;
          spec.width = Vec3::Constant(width);
          spec.sigma = +1;
          return make_gaussian_packet(spec, *frame);
        }()),
        f(embed(ft, *frame)),
        k0n(grid->center.norm()) {}
};

double peak(const std::vector<Vec3>& field) {
  double m = 0.0;
  for (const auto& x : field) m = std::max(m, x.norm());
  return m;
}

}  // namespace

TEST_CASE("H is the E-synthesis of w x f") {
  Fixture fx;
  std::vector<Vec3> pts;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 12; ++t)
    pts.push_back(Vec3(unit(rng), unit(rng), unit(rng)));

  const auto eh = synthesize_EH(fx.f, pts);

  VectorWavefunction g = fx.f;
  for (std::size_t q = 0; q < fx.grid->size(); ++q)
    g.values.v[q] = fx.frame->w[q].cast<Complex>().cross(fx.f.values.v[q]);
  const auto eh2 = synthesize_EH(g, pts);

  const double scale = peak(eh.E);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK((eh.H[i] - eh2.E[i]).norm() < 1e-10 * scale);
}

TEST_CASE("zero amplitude synthesizes zero fields") {
  Fixture fx(9);
  VectorWavefunction z = fx.f;
  for (auto& v : z.values.v) v.setZero();
  const std::vector<Vec3> pts{Vec3(0, 0, 0), Vec3(0.3, -0.2, 1.0)};
  const auto eh = synthesize_EH(z, pts);
  const auto a = synthesize_A(z, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(eh.E[i].norm() == 0.0);
    CHECK(eh.H[i].norm() == 0.0);
    CHECK(a[i].norm() == 0.0);
  }
}

TEST_CASE("A carries a 1/omega weight relative to E") {
  // For a packet narrow in |k| around k0, peak |A| ~ peak |E| / k0.
  Fixture fx(33, 0.05);
  const auto X = SpatialGrid::centered(Vec3::Zero(), Vec3(1.5, 0, 1.5),
                                       {41, 1, 41});
  const auto pts = X.points();
  const auto eh = synthesize_EH(fx.f, pts);
  const auto a = synthesize_A(fx.f, pts);
  CHECK(peak(a) * fx.k0n == doctest::Approx(peak(eh.E)).epsilon(0.05));
}

TEST_CASE("separable fast path matches the direct quadrature") {
  Fixture fx(13);
  const auto X = SpatialGrid::centered(Vec3(0.1, -0.2, 0.3),
                                       Vec3(1.0, 0.8, 1.2), {7, 6, 5});
  const auto pts = X.points();

  const auto direct_s = position_amplitude(fx.ft, pts);
  const auto fast_s = position_amplitude(fx.ft, X);
  const auto direct_v = vector_F(fx.f, pts);
  const auto fast_v = vector_F(fx.f, X);

  double scale = 0.0;
  for (const auto& s : direct_s) scale = std::max(scale, s.norm());
  REQUIRE(scale > 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK((direct_s[i] - fast_s[i]).norm() < 1e-10 * scale);
    CHECK((direct_v[i] - fast_v[i]).norm() < 1e-10 * scale);
  }
}

TEST_CASE("Parseval: the position amplitude has the momentum-space norm") {
  // The k-support is ~0.4 wide per axis, so xi-aliasing is negligible for
  // a sampling pitch of 3 (Nyquist at pi/3 ~ 1); the envelope width in xi
  // is ~1/0.08 = 12.5, so +-60 captures the packet.
  Fixture fx(21);
  const int m = 41;
  const auto X = SpatialGrid::centered(Vec3::Zero(), Vec3(60, 60, 60),
                                       {m, m, m});
  const auto amp = position_amplitude(fx.ft, X);
  double sum = 0.0;
  for (const auto& s : amp) sum += s.squaredNorm();
  sum *= X.cell_volume();
  CHECK(sum == doctest::Approx(norm(fx.ft) * norm(fx.ft)).epsilon(1e-3));
}

TEST_CASE("position amplitude inverts on the grid points") {
  // With xi sampled at the DFT-conjugate pitch 2 pi / (N dk), the inverse
  // quadrature B(k) = (2 pi)^{-3/2} sum_xi F(xi) exp(-i k.xi) dV recovers
  // f~ exactly: the cross terms are geometric sums that vanish.  This
  // checks the quadrature weights and phase conventions independently.
  auto grid = build_grid(10.0 * Vec3(1, 1, 1).normalized(),
                         Vec3(0.4, 0.4, 0.4), {9, 9, 9}, Vec3(0, 0, 1));
  auto frame = std::make_shared<GaugeFrame>(grid, BerryGauge(Vec3(0, 0, 1)));
  GaussianPacketSpec spec;
  spec.k0 = grid->center;
  spec.width = Vec3::Constant(0.12);
  spec.boundary_tol = 1.0;  // the identity is exact regardless of tails
  const auto ft = make_gaussian_packet(spec, *frame);

  const int m = 9;  // per axis, matching the k-grid
  const double pitch = 2.0 * M_PI / (m * grid->spacing.x());
  const auto X = SpatialGrid::centered(Vec3::Zero(),
                                       Vec3::Constant(0.5 * (m - 1) * pitch),
                                       {m, m, m});
  const auto amp = position_amplitude(ft, X);

  const double c = std::pow(2.0 * M_PI, -1.5) * X.cell_volume();
  double worst = 0.0;
  for (std::size_t q : {grid->index(4, 4, 4), grid->index(3, 5, 4),
                        grid->index(5, 4, 3), grid->index(0, 8, 1)}) {
    const Vec3 k = grid->point(q);
    Spinor acc = Spinor::Zero();
    for (std::size_t i = 0; i < X.size(); ++i)
      acc += amp[i] * std::exp(Complex(0.0, -k.dot(X.point(i))));
    acc *= c;
    worst = std::max(worst, (acc - ft.values.v[q]).norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("E = -dA/dt at fixed points") {
  Fixture fx;
  const std::vector<Vec3> pts{Vec3(0, 0, 0), Vec3(0.5, 0.1, -0.4),
                              Vec3(-0.2, 0.6, 0.9)};
  const double dt = 1e-3;
  const auto ap = synthesize_A(evolve(fx.f, dt), pts);
  const auto am = synthesize_A(evolve(fx.f, -dt), pts);
  const auto eh = synthesize_EH(fx.f, pts);
  const double scale = peak(eh.E);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 dadt = (ap[i] - am[i]) / (2.0 * dt);
    CHECK((eh.E[i] + dadt).norm() < 1e-3 * scale);
  }
}

TEST_CASE("the envelope travels at c along k0") {
  // In vacuum the packet is dispersionless, so the intensity barycenter
  // along the propagation axis advances by exactly c * t.
  Fixture fx(21, 0.06);
  const Vec3 khat = fx.grid->center.normalized();
  const auto barycenter = [&](const VectorWavefunction& f) {
    // 1D line of samples along khat
    std::vector<Vec3> pts;
    const int m = 401;
    for (int i = 0; i < m; ++i)
      pts.push_back(khat * (-40.0 + 80.0 * i / (m - 1)));
    const auto F = vector_F(f, pts);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double w = F[i].squaredNorm();
      num += w * pts[i].dot(khat);
      den += w;
    }
    return num / den;
  };
  const double t = 7.5;
  const double moved = barycenter(evolve(fx.f, t)) - barycenter(fx.f);
  CHECK(moved == doctest::Approx(t).epsilon(0.02));
}

TEST_CASE("synthesized A and E are divergence-free") {
  Fixture fx(33);
  const std::vector<Vec3> pts{Vec3::Zero()};
  const double a_scale = std::max(peak(synthesize_A(fx.f, pts)), 1e-300);
  const double e_scale = std::max(peak(synthesize_EH(fx.f, pts).E), 1e-300);
  CHECK(std::abs(divergence_A(fx.f, Vec3::Zero(), 1e-3)) <
        1e-4 * fx.k0n * a_scale);
  CHECK(std::abs(divergence_E(fx.f, Vec3::Zero(), 1e-3)) <
        1e-3 * fx.k0n * e_scale);
}
