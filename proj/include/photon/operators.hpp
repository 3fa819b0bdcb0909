#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "photon/gauge.hpp"
#include "photon/report.hpp"
#include "photon/wavefunction.hpp"

namespace photon {

// A linear operator acting on two-component wavefunctions, one application
// per Cartesian index.  Scalar operators ignore the index.
struct VectorOperator {
  std::string name;
  bool gauge_dependent = false;
  Vec3 gauge_I = Vec3::Zero();  // meaningful only when gauge_dependent
  int ncomp = 3;
  std::function<SpinorField2(const SpinorField2&, int axis)> comp;

  SpinorField2 operator()(const SpinorField2& f, int axis) const {
    return comp(f, axis);
  }
};

// s = hbar sigma3 w
VectorOperator op_spin(std::shared_ptr<const GaugeFrame> frame);
// p = hbar k
VectorOperator op_momentum(std::shared_ptr<const KGrid> grid);
// xi = i grad_k
VectorOperator op_canonical_position(std::shared_ptr<const KGrid> grid);
// b = i varpi^dag (grad_k varpi), by finite differences of the varpi columns
VectorOperator op_b_numeric(std::shared_ptr<const GaugeFrame> frame);
// b = sigma3 A_B, closed form
VectorOperator op_b_analytic(std::shared_ptr<const GaugeFrame> frame);
// x = xi + b
VectorOperator op_position(std::shared_ptr<const GaugeFrame> frame);
// lambda = -p x xi
VectorOperator op_canonical_oam(std::shared_ptr<const KGrid> grid);
// m = b x p = hbar sigma3 (I.k)/|I x k| u
VectorOperator op_m(std::shared_ptr<const GaugeFrame> frame);
// l = lambda + m
VectorOperator op_oam(std::shared_ptr<const GaugeFrame> frame);
// j = s + l
VectorOperator op_total_j(std::shared_ptr<const GaugeFrame> frame);
// j = lambda + hbar sigma3 (I x v)/(I.u), closed form
VectorOperator op_total_j_closed(std::shared_ptr<const GaugeFrame> frame);
// omega = c|k| (scalar; ncomp = 1)
VectorOperator op_omega(std::shared_ptr<const KGrid> grid);

// <A_i> = integral f~^dag A_i f~ / integral f~^dag f~ per component
Complex expectation_component(const VectorOperator& A,
                              const TwoComponentWavefunction& ft, int axis);
Vec3 expectation(const VectorOperator& A, const TwoComponentWavefunction& ft);

// Poincare vector sigma = f~^dag (s1 u + s2 v + s3 w) f~ / f~^dag f~
Vec3 poincare_vector_at(const TwoComponentWavefunction& ft,
                        const GaugeFrame& frame, std::size_t q);
// Stokes components relative to the triad, pointwise
struct StokesField {
  std::vector<Vec3> stokes;          // (s1, s2, s3) per point
  std::vector<std::uint8_t> ok;      // false at dark / masked points
};
StokesField stokes_parameters(const TwoComponentWavefunction& ft,
                              double dark_threshold = 0.0);
// Intensity-weighted Poincare vector in laboratory components
Vec3 poincare_vector_integrated(const TwoComponentWavefunction& ft,
                                const GaugeFrame& frame);

// Residual of AB - BA - expected over a set of trial states.
struct CommutatorCheck {
  std::string name;
  std::string equation;
  VectorOperator A, B;
  // expected(f, i, j) = the closed-form right-hand side applied to f
  std::function<SpinorField2(const SpinorField2&, int i, int j)> expected;
  std::vector<std::pair<int, int>> index_pairs;
  double tolerance = 0.0;
  bool relative = true;  // normalize by the scale of AB f, BA f, expected f
};

ReportEntry run_commutator_check(const CommutatorCheck& check,
                                 const std::vector<SpinorField2>& states,
                                 int exclude_ply = 2);

// Expected-side builders
std::function<SpinorField2(const SpinorField2&, int, int)> expected_zero();
std::function<SpinorField2(const SpinorField2&, int, int)>
expected_i_delta();
std::function<SpinorField2(const SpinorField2&, int, int)>
expected_i_epsilon(const VectorOperator& op, double scale = 1.0);
// i sigma3 eps_ijk (H_B)_k with H_B = -w/k^2
std::function<SpinorField2(const SpinorField2&, int, int)>
expected_position_curvature(std::shared_ptr<const KGrid> grid);

// The full commutator table of the calculus at the stated tolerances.
OperatorReport verify_commutator_table(std::shared_ptr<const KGrid> grid,
                                       std::shared_ptr<const GaugeFrame> frame,
                                       int trials, std::mt19937_64& rng);

std::vector<std::pair<int, int>> all_pairs();        // 3x3 i != j plus diag
std::vector<std::pair<int, int>> offdiag_pairs();    // i != j

}  // namespace photon
