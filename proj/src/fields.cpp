#include "photon/fields.hpp"

#include <cmath>
#include <thread>

#include "photon/cli.hpp"
#include "photon/errors.hpp"

namespace photon {

namespace {

constexpr double kTwoPiPow = 15.749609945722419;  // (2 pi)^{3/2}

// direct quadrature of (2 pi)^{-3/2} sum_q w * g(q) * exp(i k_q . X);
// parallel over disjoint point ranges, so each out[p] is accumulated in
// the same serial k-order regardless of the thread count (bit-identical
// results, PHOTON_THREADS only changes wall time)
template <class T, class G>
std::vector<T> synth_direct(const KGrid& grid,
                            const std::vector<std::uint8_t>& ok,
                            const std::vector<Vec3>& points, G&& g) {
  std::vector<T> out(points.size(), T::Zero());
  const auto run = [&](std::size_t p0, std::size_t p1) {
    for (std::size_t q = 0; q < grid.size(); ++q) {
      if (!ok[q]) continue;
      const Vec3 k = grid.point(q);
      const T val = g(q);
      for (std::size_t p = p0; p < p1; ++p) {
        const double ph = k.dot(points[p]);
        out[p] += val * Complex(std::cos(ph), std::sin(ph));
      }
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(
      std::max(thread_budget(), 1), std::max<std::size_t>(points.size(), 1));
  if (nthreads <= 1 || points.size() < 64) {
    run(0, points.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (points.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t p0 = t * chunk;
      const std::size_t p1 = std::min(points.size(), p0 + chunk);
      if (p0 >= p1) break;
      pool.emplace_back(run, p0, p1);
    }
    for (auto& th : pool) th.join();
  }
  const double scale = grid.weight / kTwoPiPow;
  for (auto& x : out) x *= scale;
  return out;
}

// separable chained partial transforms over a Cartesian product sampling;
// algebraically identical to synth_direct
template <class T, class G>
std::vector<T> synth_grid(const KGrid& grid,
                          const std::vector<std::uint8_t>& ok,
                          const SpatialGrid& sg, G&& g) {
  const int nx = grid.n[0], ny = grid.n[1], nz = grid.n[2];
  const auto& ax = sg.axes;
  const std::size_t px = ax[0].size(), py = ax[1].size(), pz = ax[2].size();

  auto kcoord = [&](int a, int i) {
    return grid.center[a] - grid.half_width[a] + i * grid.spacing[a];
  };

  // stage 1: contract k_x
  std::vector<T> t1(px * ny * nz, T::Zero());
  for (int i = 0; i < nx; ++i) {
    std::vector<Complex> ph(px);
    for (std::size_t p = 0; p < px; ++p) {
      const double a = kcoord(0, i) * ax[0][p];
      ph[p] = Complex(std::cos(a), std::sin(a));
    }
    for (int j = 0; j < ny; ++j)
      for (int l = 0; l < nz; ++l) {
        const std::size_t q = grid.index(i, j, l);
        if (!ok[q]) continue;
        const T val = g(q);
        for (std::size_t p = 0; p < px; ++p)
          t1[(p * ny + j) * nz + l] += val * ph[p];
      }
  }
  // stage 2: contract k_y
  std::vector<T> t2(px * py * nz, T::Zero());
  for (int j = 0; j < ny; ++j) {
    std::vector<Complex> ph(py);
    for (std::size_t p = 0; p < py; ++p) {
      const double a = kcoord(1, j) * ax[1][p];
      ph[p] = Complex(std::cos(a), std::sin(a));
    }
    for (std::size_t p0 = 0; p0 < px; ++p0)
      for (int l = 0; l < nz; ++l) {
        const T& val = t1[(p0 * ny + j) * nz + l];
        for (std::size_t p = 0; p < py; ++p)
          t2[(p0 * py + p) * nz + l] += val * ph[p];
      }
  }
  // stage 3: contract k_z
  std::vector<T> out(px * py * pz, T::Zero());
  for (int l = 0; l < nz; ++l) {
    std::vector<Complex> ph(pz);
    for (std::size_t p = 0; p < pz; ++p) {
      const double a = kcoord(2, l) * ax[2][p];
      ph[p] = Complex(std::cos(a), std::sin(a));
    }
    for (std::size_t p01 = 0; p01 < px * py; ++p01) {
      const T& val = t2[p01 * nz + l];
      for (std::size_t p = 0; p < pz; ++p) out[p01 * pz + p] += val * ph[p];
    }
  }
  const double scale = grid.weight / kTwoPiPow;
  for (auto& x : out) x *= scale;
  return out;
}

}  // namespace

double SpatialGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (axes[a].size() < 2) continue;
    v *= axes[a][1] - axes[a][0];
  }
  return v;
}

std::vector<Vec3> SpatialGrid::points() const {
  std::vector<Vec3> out(size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = point(p);
  return out;
}

SpatialGrid SpatialGrid::centered(const Vec3& center, const Vec3& half_extent,
                                  const std::array<int, 3>& n) {
  SpatialGrid sg;
  for (int a = 0; a < 3; ++a) {
    sg.axes[a].resize(n[a]);
    const double d = n[a] > 1 ? 2.0 * half_extent[a] / (n[a] - 1) : 0.0;
    for (int i = 0; i < n[a]; ++i)
      sg.axes[a][i] = center[a] - half_extent[a] + i * d;
  }
  return sg;
}

EHSnapshot synthesize_EH(const VectorWavefunction& f,
                         const std::vector<Vec3>& points) {
  const KGrid& g = *f.grid;
  auto e_part = synth_direct<CVec3>(g, f.values.ok, points, [&](std::size_t q) {
    const double w = std::sqrt(0.5 * g.point(q).norm());
    return (w * f.values.v[q]).eval();
  });
  auto h_part = synth_direct<CVec3>(g, f.values.ok, points, [&](std::size_t q) {
    const Vec3 k = g.point(q);
    const double w = std::sqrt(0.5 * k.norm());
    return (w * k.normalized().cast<Complex>().cross(f.values.v[q])).eval();
  });
  EHSnapshot snap;
  snap.E.resize(points.size());
  snap.H.resize(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    snap.E[p] = 2.0 * e_part[p].real();
    snap.H[p] = 2.0 * h_part[p].real();
  }
  return snap;
}

std::vector<Vec3> synthesize_A(const VectorWavefunction& f,
                               const std::vector<Vec3>& points) {
  const KGrid& g = *f.grid;
  auto a_part = synth_direct<CVec3>(g, f.values.ok, points, [&](std::size_t q) {
    const double w = std::sqrt(0.5 / g.point(q).norm());
    return (w * f.values.v[q]).eval();
  });
  std::vector<Vec3> A(points.size());
  // the 1/i prefactor turns the real part into the imaginary one
  for (std::size_t p = 0; p < points.size(); ++p) A[p] = 2.0 * a_part[p].imag();
  return A;
}

std::vector<CVec3> vector_F(const VectorWavefunction& f,
                            const std::vector<Vec3>& points) {
  return synth_direct<CVec3>(*f.grid, f.values.ok, points,
                             [&](std::size_t q) { return f.values.v[q]; });
}

std::vector<Spinor> position_amplitude(const TwoComponentWavefunction& ft,
                                       const std::vector<Vec3>& points) {
  return synth_direct<Spinor>(*ft.grid, ft.values.ok, points,
                              [&](std::size_t q) { return ft.values.v[q]; });
}

std::vector<Spinor> position_amplitude(const TwoComponentWavefunction& ft,
                                       const SpatialGrid& grid) {
  return synth_grid<Spinor>(*ft.grid, ft.values.ok, grid,
                            [&](std::size_t q) { return ft.values.v[q]; });
}

std::vector<CVec3> vector_F(const VectorWavefunction& f,
                            const SpatialGrid& grid) {
  return synth_grid<CVec3>(*f.grid, f.values.ok, grid,
                           [&](std::size_t q) { return f.values.v[q]; });
}

namespace {

template <class Synth>
double divergence_fd(const Vec3& X, double h, Synth&& synth) {
  std::vector<Vec3> pts;
  pts.reserve(6);
  for (int a = 0; a < 3; ++a) {
    Vec3 xp = X, xm = X;
    xp[a] += h;
    xm[a] -= h;
    pts.push_back(xp);
    pts.push_back(xm);
  }
  const std::vector<Vec3> vals = synth(pts);
  double div = 0.0;
  for (int a = 0; a < 3; ++a)
    div += (vals[2 * a][a] - vals[2 * a + 1][a]) / (2.0 * h);
  return div;
}

}  // namespace

double divergence_A(const VectorWavefunction& f, const Vec3& X, double h) {
  return divergence_fd(X, h, [&](const std::vector<Vec3>& pts) {
    return synthesize_A(f, pts);
  });
}

double divergence_E(const VectorWavefunction& f, const Vec3& X, double h) {
  return divergence_fd(X, h, [&](const std::vector<Vec3>& pts) {
    return synthesize_EH(f, pts).E;
  });
}

}  // namespace photon
