#pragma once

#include <vector>

#include "photon/wavefunction.hpp"

namespace photon {

// Arbitrary set of laboratory-frame sample points.
struct SpatialSampling {
  std::vector<Vec3> points;
};

// Regular Cartesian product sampling; enables the separable fast path.
struct SpatialGrid {
  std::array<std::vector<double>, 3> axes;

  std::size_t size() const {
    return axes[0].size() * axes[1].size() * axes[2].size();
  }
  Vec3 point(std::size_t idx) const {
    const std::size_t nz = axes[2].size(), ny = axes[1].size();
    return {axes[0][idx / (ny * nz)], axes[1][(idx / nz) % ny],
            axes[2][idx % nz]};
  }
  double cell_volume() const;  // product of (uniform) spacings
  std::vector<Vec3> points() const;

  static SpatialGrid centered(const Vec3& center, const Vec3& half_extent,
                              const std::array<int, 3>& n);
};

struct EHSnapshot {
  std::vector<Vec3> E, H;
};

// E, H by plane-wave synthesis, natural units
// (hbar = c = eps0 = mu0 = 1); the conjugate term makes them real.
EHSnapshot synthesize_EH(const VectorWavefunction& f,
                         const std::vector<Vec3>& points);

// Coulomb-gauge vector potential
std::vector<Vec3> synthesize_A(const VectorWavefunction& f,
                               const std::vector<Vec3>& points);

// F(X, t) = (2 pi)^{-3/2} integral f exp(i k.X) d3k
std::vector<CVec3> vector_F(const VectorWavefunction& f,
                            const std::vector<Vec3>& points);

// F~(xi, t) = (2 pi)^{-3/2} integral f~ exp(i k.xi) d3k
std::vector<Spinor> position_amplitude(const TwoComponentWavefunction& ft,
                                       const std::vector<Vec3>& points);

// Separable chained-
// transform fast path over a Cartesian product sampling; identical to the
// direct quadrature within rounding.
std::vector<Spinor> position_amplitude(const TwoComponentWavefunction& ft,
                                       const SpatialGrid& grid);
std::vector<CVec3> vector_F(const VectorWavefunction& f,
                            const SpatialGrid& grid);

// Finite-difference divergence of a synthesized real field at a point.
double divergence_A(const VectorWavefunction& f, const Vec3& X, double h);
double divergence_E(const VectorWavefunction& f, const Vec3& X, double h);

}  // namespace photon
