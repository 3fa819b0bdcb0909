#pragma once

#include <optional>
#include <vector>

#include "photon/operators.hpp"
#include "photon/wavefunction.hpp"

namespace photon {

// One barycenter-shift experiment: helicity eigenpacket along k0, gauge
// vector I tilted by theta from the propagation direction.
struct SpinHallScenario {
  double k0 = 10.0;          // |k0| (rad/length)
  double theta = M_PI / 4;   // angle between I and k0, in (0, pi)
  int sigma = 1;             // helicity
  double divergence = 0.01;  // packet angular width (radians)
  int n = 33;                // per-axis grid resolution
};

struct ShiftResult {
  double theta = 0.0;
  int sigma = 0;
  double k0 = 0.0;
  Vec3 measured = Vec3::Zero();
  Vec3 predicted = Vec3::Zero();   // (sigma/k0) cot(theta) v0
  double predicted_magnitude = 0.0;
  double relative_error = 0.0;     // |measured - predicted| / |predicted|
  double barycenter_residual = 0.0;  // |<x> - <b>| for the centered packet
  bool feasible = true;
};

// Builds the eigenpacket, measures <b> through the analytic b = sigma3 A_B
// expectation, and compares with the closed-form plane-wave eigenvalue.
// Also checks <x> = <b> for the canonically centered packet.
ShiftResult run_scenario(const SpinHallScenario& s);

std::vector<ShiftResult> scan_theta(int sigma, double k0,
                                    const std::vector<double>& thetas,
                                    double divergence, int n = 33);

struct BerryPhaseFit {
  double max_modulus_deviation = 0.0;  // | |f'| - |f| | / peak
  double max_phase_deviation = 0.0;    // max |arg(f'/f) + sigma*phi| (rad)
  std::size_t points_used = 0;
};

// Re-embeds the two-component state in another gauge and fits the pointwise
// phase of f'/f against exp(-i sigma phi(k)).
BerryPhaseFit berry_phase_check(const TwoComponentWavefunction& ft, int sigma,
                                const GaugeFrame& from, const GaugeFrame& to,
                                double amplitude_floor = 1e-12);

}  // namespace photon
