#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "photon/linalg.hpp"

namespace photon {

// Uniform Cartesian box in k-space with quadrature weight and a validity
// mask excluding the neighborhood of k = 0 and the singular cone around
// the gauge vector +-I.
struct KGrid {
  Vec3 center;
  Vec3 half_width;
  std::array<int, 3> n{};
  Vec3 gauge_I;  // gauge vector the mask was computed against
  double eps_cone = 1e-2;
  double eps_k = 1e-6;

  Vec3 spacing;            // dk per axis
  double weight = 0.0;     // dkx*dky*dkz
  std::vector<std::uint8_t> mask;  // 1 = usable point
  double masked_fraction = 0.0;

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }
  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n[1] + j) * n[2] + l;
  }
  std::array<int, 3> unravel(std::size_t idx) const {
    const int l = static_cast<int>(idx % n[2]);
    const int j = static_cast<int>((idx / n[2]) % n[1]);
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(n[1]) * n[2]));
    return {i, j, l};
  }
  Vec3 point(int i, int j, int l) const {
    return {center.x() - half_width.x() + i * spacing.x(),
            center.y() - half_width.y() + j * spacing.y(),
            center.z() - half_width.z() + l * spacing.z()};
  }
  Vec3 point(std::size_t idx) const {
    const auto ijl = unravel(idx);
    return point(ijl[0], ijl[1], ijl[2]);
  }
  // true if the index lies within `ply` layers of the box boundary
  bool on_boundary_shell(std::size_t idx, int ply) const {
    const auto ijl = unravel(idx);
    for (int a = 0; a < 3; ++a)
      if (ijl[a] < ply || ijl[a] >= n[a] - ply) return true;
    return false;
  }
};

// Per-point field values plus a validity flag; invalid points are treated
// as zero by every reduction.
template <class T>
struct Field {
  std::shared_ptr<const KGrid> grid;
  std::vector<T> v;
  std::vector<std::uint8_t> ok;

  explicit Field(std::shared_ptr<const KGrid> g)
      : grid(std::move(g)), v(grid->size(), T{}), ok(grid->mask) {}
  Field() = default;
};

using ScalarField = Field<Complex>;
using VectorField3 = Field<CVec3>;
using SpinorField2 = Field<Spinor>;

std::shared_ptr<const KGrid> build_grid(const Vec3& center,
                                        const Vec3& half_width,
                                        const std::array<int, 3>& n,
                                        const Vec3& gauge_I,
                                        double eps_cone = 1e-2,
                                        double eps_k = -1.0);

// Process-wide default interior stencil order (8 unless overridden; the
// PHOTON_STENCIL_ORDER environment variable, if set, seeds it at startup).
int default_stencil_order();
void set_default_stencil_order(int order);

// d/dk_axis: central stencil of the given order in the interior, shrinking
// to the widest centered stencil that fits near the boundary, 2nd-order
// one-sided on the outermost layer.  A point whose stencil touches an
// invalid point is itself marked invalid; no extrapolation.
// order = 0 means "use default_stencil_order()".
ScalarField gradient(const ScalarField& field, int axis, int order = 0);
VectorField3 gradient(const VectorField3& field, int axis, int order = 0);
SpinorField2 gradient(const SpinorField2& field, int axis, int order = 0);

VectorField3 curl(const VectorField3& field, int order = 0);

// weight * sum over valid points (compensated summation)
Complex integrate(const ScalarField& field);

double norm2(const ScalarField& field);
double norm2(const VectorField3& field);
double norm2(const SpinorField2& field);

// L2 norm over the valid points that are also >= `exclude_ply` layers away
// from the box boundary; the same point set on every operand of a residual.
double norm2_interior(const SpinorField2& field, int exclude_ply);

}  // namespace photon
