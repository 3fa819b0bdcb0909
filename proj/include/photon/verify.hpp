#pragma once

#include <random>

#include "photon/operators.hpp"
#include "photon/report.hpp"
#include "photon/spinhall.hpp"

namespace photon {

// varpi^dag varpi = I2, varpi varpi^dag = I3 - w w^dag on random unmasked
// k-points; embed/project round trips on random transverse states.
OperatorReport verify_quasi_unitarity(std::shared_ptr<const KGrid> grid,
                                      std::shared_ptr<const GaugeFrame> frame,
                                      int n_points, int n_states,
                                      std::mt19937_64& rng);

// Numerical curl of A_B against -w/k^2, the gauge transformation of the
// potential, and the monopole flux through a k-space sphere.
OperatorReport verify_gauge_geometry(std::shared_ptr<const KGrid> grid,
                                     std::shared_ptr<const GaugeFrame> frame,
                                     std::shared_ptr<const GaugeFrame> frame2);

// Invariance of <x>, <p>, <s>, norm, <omega> under random gauge changes;
// Stokes rotation by 2 phi; Berry-phase fit for helicity eigenstates.
OperatorReport verify_gauge_covariance(std::shared_ptr<const KGrid> grid,
                                       std::shared_ptr<const GaugeFrame> frame,
                                       int n_states, int n_gauge_pairs,
                                       std::mt19937_64& rng);

// Monopole flux through a sphere of radius k, by direction quadrature of a
// locally finite-differenced curl of the analytic potential.
double monopole_flux(double k_radius, int n_theta = 64, int n_phi = 128);

}  // namespace photon
