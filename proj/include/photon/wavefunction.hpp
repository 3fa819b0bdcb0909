#pragma once

#include <random>

#include "photon/gauge.hpp"
#include "photon/kgrid.hpp"

namespace photon {

// 3-component k-space amplitude obeying f.w = 0 at every valid point.
struct VectorWavefunction {
  std::shared_ptr<const KGrid> grid;
  VectorField3 values;
  double time = 0.0;
};

// Unconstrained 2-component amplitude in a declared Berry gauge.
struct TwoComponentWavefunction {
  std::shared_ptr<const KGrid> grid;
  BerryGauge gauge;
  SpinorField2 values;
  double time = 0.0;
};

inline Spinor helicity_eigenvector(int sigma) {
  return Spinor(1.0 / std::sqrt(2.0), Complex(0.0, sigma / std::sqrt(2.0)));
}

double max_transversality_violation(const VectorWavefunction& f,
                                    const GaugeFrame& frame);

// f~ = varpi^dag f
TwoComponentWavefunction project(const VectorWavefunction& f,
                                 const GaugeFrame& frame);

// f = varpi f~ ; transversal by construction
VectorWavefunction embed(const TwoComponentWavefunction& ft,
                         const GaugeFrame& frame);

// f~' = exp(i sigma3 phi(k)) f~ with phi the gauge rotation angle
TwoComponentWavefunction gauge_transform(const TwoComponentWavefunction& ft,
                                         const GaugeFrame& from,
                                         const GaugeFrame& to);

VectorWavefunction evolve(const VectorWavefunction& f, double dt);
TwoComponentWavefunction evolve(const TwoComponentWavefunction& ft, double dt);

// f' = exp(-i (Sigma.w) phi) f : rotation of the amplitude about k
VectorWavefunction rotate_about_wavevector(const VectorWavefunction& f,
                                           const ScalarField& phi);

struct GaussianPacketSpec {
  Vec3 k0;
  Vec3 width;     // Gaussian sigma per axis (rad/length)
  int sigma = 1;  // helicity
  double boundary_tol = 1e-8;  // max allowed envelope at box edge / mask
};

// Unit-norm helicity eigenpacket alpha_sigma * N exp(-|k-k0|^2/(2 s^2)).
TwoComponentWavefunction make_gaussian_packet(const GaussianPacketSpec& spec,
                                              const GaugeFrame& frame);

// Generic smooth state for randomized identity trials: Gaussian with random
// center and width, Haar-random polarization spinor, low-order polynomial
// phase.
TwoComponentWavefunction random_packet(const GaugeFrame& frame,
                                       std::mt19937_64& rng);

double norm(const TwoComponentWavefunction& ft);
double norm(const VectorWavefunction& f);

TwoComponentWavefunction normalized(TwoComponentWavefunction ft);

}  // namespace photon
