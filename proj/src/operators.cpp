#include "photon/operators.hpp"

#include <algorithm>
#include <cmath>

#include "photon/errors.hpp"

namespace photon {

namespace {

const Mat2 kSigma3 = pauli3();

// pointwise multiplication by a real scalar field times sigma3
VectorOperator make_sigma3_multiplier(
    std::string name, std::shared_ptr<const GaugeFrame> frame,
    std::function<double(const GaugeFrame&, std::size_t, int)> coeff) {
  VectorOperator op;
  op.name = std::move(name);
  op.gauge_dependent = true;
  op.gauge_I = frame->gauge.I;
  op.comp = [frame, coeff = std::move(coeff)](const SpinorField2& f,
                                              int axis) {
    SpinorField2 out(f.grid);
    for (std::size_t q = 0; q < f.grid->size(); ++q) {
      if (!f.ok[q] || !frame->ok[q]) {
        out.ok[q] = 0;
        continue;
      }
      out.v[q] = coeff(*frame, q, axis) * (kSigma3 * f.v[q]);
    }
    return out;
  };
  return op;
}

}  // namespace

VectorOperator op_spin(std::shared_ptr<const GaugeFrame> frame) {
  // hbar sigma3 w ; gauge-independent (w = k/k), frame only caches w
  auto op = make_sigma3_multiplier(
      "spin", std::move(frame),
      [](const GaugeFrame& fr, std::size_t q, int axis) {
        return fr.w[q][axis];
      });
  op.gauge_dependent = false;
  return op;
}

VectorOperator op_momentum(std::shared_ptr<const KGrid> grid) {
  VectorOperator op;
  op.name = "momentum";
  op.comp = [grid](const SpinorField2& f, int axis) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    for (std::size_t q = 0; q < f.grid->size(); ++q)
      if (out.ok[q]) out.v[q] = f.grid->point(q)[axis] * f.v[q];
    return out;
  };
  return op;
}

VectorOperator op_omega(std::shared_ptr<const KGrid> grid) {
  VectorOperator op;
  op.name = "omega";
  op.ncomp = 1;
  op.comp = [grid](const SpinorField2& f, int) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    for (std::size_t q = 0; q < f.grid->size(); ++q)
      if (out.ok[q]) out.v[q] = f.grid->point(q).norm() * f.v[q];
    return out;
  };
  return op;
}

VectorOperator op_canonical_position(std::shared_ptr<const KGrid> grid) {
  VectorOperator op;
  op.name = "canonical_position";
  op.comp = [](const SpinorField2& f, int axis) {
    SpinorField2 out = gradient(f, axis);
    for (std::size_t q = 0; q < f.grid->size(); ++q)
      if (out.ok[q]) out.v[q] *= I1;
    return out;
  };
  (void)grid;
  return op;
}

VectorOperator op_b_numeric(std::shared_ptr<const GaugeFrame> frame) {
  // i varpi^dag (d varpi / dk_a) per point, from stencil derivatives of the
  // real triad columns
  auto B = std::make_shared<std::array<std::vector<Mat2>, 3>>();
  auto okB = std::make_shared<std::vector<std::uint8_t>>(frame->ok);

  const auto grid = frame->grid;
  std::array<ScalarField, 6> cols{ScalarField(grid), ScalarField(grid),
                                  ScalarField(grid), ScalarField(grid),
                                  ScalarField(grid), ScalarField(grid)};
  for (int c = 0; c < 6; ++c) cols[c].ok = frame->ok;
  for (std::size_t q = 0; q < grid->size(); ++q) {
    if (!frame->ok[q]) continue;
    for (int c = 0; c < 3; ++c) {
      cols[c].v[q] = frame->u[q][c];
      cols[3 + c].v[q] = frame->v[q][c];
    }
  }
  for (int a = 0; a < 3; ++a) {
    (*B)[a].assign(grid->size(), Mat2::Zero());
    std::array<ScalarField, 6> d;
    for (int c = 0; c < 6; ++c) d[c] = gradient(cols[c], a);
    for (std::size_t q = 0; q < grid->size(); ++q) {
      bool valid = frame->ok[q] != 0;
      for (int c = 0; c < 6 && valid; ++c) valid = d[c].ok[q] != 0;
      if (!valid) {
        (*okB)[q] = 0;
        continue;
      }
      Vec3 du, dv;
      for (int c = 0; c < 3; ++c) {
        du[c] = d[c].v[q].real();
        dv[c] = d[3 + c].v[q].real();
      }
      Mat2 m;
      m(0, 0) = frame->u[q].dot(du);
      m(0, 1) = frame->u[q].dot(dv);
      m(1, 0) = frame->v[q].dot(du);
      m(1, 1) = frame->v[q].dot(dv);
      (*B)[a][q] = I1 * m;
    }
  }

  VectorOperator op;
  op.name = "b_numeric";
  op.gauge_dependent = true;
  op.gauge_I = frame->gauge.I;
  op.comp = [B, okB](const SpinorField2& f, int axis) {
    SpinorField2 out(f.grid);
    for (std::size_t q = 0; q < f.grid->size(); ++q) {
      if (!f.ok[q] || !(*okB)[q]) {
        out.ok[q] = 0;
        continue;
      }
      out.v[q] = (*B)[axis][q] * f.v[q];
    }
    return out;
  };
  return op;
}

VectorOperator op_b_analytic(std::shared_ptr<const GaugeFrame> frame) {
  auto op = make_sigma3_multiplier(
      "b", std::move(frame),
      [](const GaugeFrame& fr, std::size_t q, int axis) {
        return fr.A[q][axis];
      });
  return op;
}

namespace {

VectorOperator op_sum(std::string name, VectorOperator A, VectorOperator B) {
  VectorOperator op;
  op.name = std::move(name);
  op.gauge_dependent = A.gauge_dependent || B.gauge_dependent;
  op.gauge_I = A.gauge_dependent ? A.gauge_I : B.gauge_I;
  op.comp = [A = std::move(A), B = std::move(B)](const SpinorField2& f,
                                                 int axis) {
    SpinorField2 a = A(f, axis);
    SpinorField2 b = B(f, axis);
    SpinorField2 out(f.grid);
    for (std::size_t q = 0; q < f.grid->size(); ++q) {
      if (!a.ok[q] || !b.ok[q]) {
        out.ok[q] = 0;
        continue;
      }
      out.v[q] = a.v[q] + b.v[q];
    }
    return out;
  };
  return op;
}

}  // namespace

VectorOperator op_position(std::shared_ptr<const GaugeFrame> frame) {
  auto op = op_sum("position", op_canonical_position(frame->grid),
                   op_b_analytic(frame));
  return op;
}

VectorOperator op_canonical_oam(std::shared_ptr<const KGrid> grid) {
  // lambda_i = -eps_ijk k_j (i d/dk_k)
  VectorOperator op;
  op.name = "canonical_oam";
  op.comp = [grid](const SpinorField2& f, int axis) {
    const int j = (axis + 1) % 3, k = (axis + 2) % 3;
    SpinorField2 dk = gradient(f, k);
    SpinorField2 dj = gradient(f, j);
    SpinorField2 out(f.grid);
    for (std::size_t q = 0; q < f.grid->size(); ++q) {
      if (!dk.ok[q] || !dj.ok[q]) {
        out.ok[q] = 0;
        continue;
      }
      const Vec3 kv = f.grid->point(q);
      out.v[q] = -I1 * (kv[j] * dk.v[q] - kv[k] * dj.v[q]);
    }
    return out;
  };
  return op;
}

VectorOperator op_m(std::shared_ptr<const GaugeFrame> frame) {
  auto gauge_I = frame->gauge.I;
  auto op = make_sigma3_multiplier(
      "m", std::move(frame),
      [gauge_I](const GaugeFrame& fr, std::size_t q, int axis) {
        const Vec3 k = fr.grid->point(q);
        return gauge_I.dot(k) / gauge_I.cross(k).norm() * fr.u[q][axis];
      });
  return op;
}

VectorOperator op_oam(std::shared_ptr<const GaugeFrame> frame) {
  return op_sum("oam", op_canonical_oam(frame->grid), op_m(frame));
}

VectorOperator op_total_j(std::shared_ptr<const GaugeFrame> frame) {
  return op_sum("total_j", op_spin(frame), op_oam(frame));
}

VectorOperator op_total_j_closed(std::shared_ptr<const GaugeFrame> frame) {
  auto gauge_I = frame->gauge.I;
  auto closed = make_sigma3_multiplier(
      "j_intrinsic", frame,
      [gauge_I](const GaugeFrame& fr, std::size_t q, int axis) {
        return gauge_I.cross(fr.v[q])[axis] / gauge_I.dot(fr.u[q]);
      });
  return op_sum("total_j_closed", op_canonical_oam(frame->grid),
                std::move(closed));
}

Complex expectation_component(const VectorOperator& A,
                              const TwoComponentWavefunction& ft, int axis) {
  const SpinorField2 Af = A(ft.values, axis);
  ScalarField integrand(ft.grid);
  for (std::size_t q = 0; q < ft.grid->size(); ++q) {
    if (!Af.ok[q] || !ft.values.ok[q]) {
      integrand.ok[q] = 0;
      continue;
    }
    integrand.v[q] = ft.values.v[q].dot(Af.v[q]);
  }
  const double n = norm2(ft.values);
  if (n <= 0.0) throw ZeroIntensity("expectation of the zero state");
  return integrate(integrand) / (n * n);
}

Vec3 expectation(const VectorOperator& A, const TwoComponentWavefunction& ft) {
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = expectation_component(A, ft, a).real();
  return out;
}

Vec3 poincare_vector_at(const TwoComponentWavefunction& ft,
                        const GaugeFrame& frame, std::size_t q) {
  if (!ft.values.ok[q] || !frame.ok[q])
    throw ZeroIntensity("point is masked");
  const Spinor& f = ft.values.v[q];
  const double n = f.squaredNorm();
  if (n <= 0.0) throw ZeroIntensity("zero amplitude at the requested point");
  const double s1 = (f.dot(pauli1() * f)).real() / n;
  const double s2 = (f.dot(pauli2() * f)).real() / n;
  const double s3 = (f.dot(kSigma3 * f)).real() / n;
  return s1 * frame.u[q] + s2 * frame.v[q] + s3 * frame.w[q];
}

StokesField stokes_parameters(const TwoComponentWavefunction& ft,
                              double dark_threshold) {
  StokesField out;
  out.stokes.assign(ft.grid->size(), Vec3::Zero());
  out.ok.assign(ft.grid->size(), 0);
  const Mat2 s1 = pauli1(), s2 = pauli2();
  for (std::size_t q = 0; q < ft.grid->size(); ++q) {
    if (!ft.values.ok[q]) continue;
    const Spinor& f = ft.values.v[q];
    const double n = f.squaredNorm();
    if (n <= dark_threshold) continue;
    out.ok[q] = 1;
    out.stokes[q] = Vec3((f.dot(s1 * f)).real() / n, (f.dot(s2 * f)).real() / n,
                         (f.dot(kSigma3 * f)).real() / n);
  }
  return out;
}

Vec3 poincare_vector_integrated(const TwoComponentWavefunction& ft,
                                const GaugeFrame& frame) {
  Vec3 acc = Vec3::Zero();
  double wsum = 0.0;
  for (std::size_t q = 0; q < ft.grid->size(); ++q) {
    if (!ft.values.ok[q] || !frame.ok[q]) continue;
    const Spinor& f = ft.values.v[q];
    const double n = f.squaredNorm();
    if (n <= 0.0) continue;
    acc += n * poincare_vector_at(ft, frame, q);
    wsum += n;
  }
  if (wsum <= 0.0) throw ZeroIntensity("zero state");
  return acc / wsum;
}

namespace {

double norm_on(const SpinorField2& f, const std::vector<std::uint8_t>& okset) {
  double s = 0.0, c = 0.0;
  for (std::size_t q = 0; q < f.v.size(); ++q) {
    if (!okset[q]) continue;
    const double x = f.v[q].squaredNorm();
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return std::sqrt(f.grid->weight * s);
}

double diff_norm_on(const SpinorField2& a, const SpinorField2& b,
                    const SpinorField2& e,
                    const std::vector<std::uint8_t>& okset) {
  double s = 0.0, c = 0.0;
  for (std::size_t q = 0; q < a.v.size(); ++q) {
    if (!okset[q]) continue;
    const double x = (a.v[q] - b.v[q] - e.v[q]).squaredNorm();
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return std::sqrt(a.grid->weight * s);
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace

ReportEntry run_commutator_check(const CommutatorCheck& check,
                                 const std::vector<SpinorField2>& states,
                                 int exclude_ply) {
  if (check.A.gauge_dependent && check.B.gauge_dependent &&
      (check.A.gauge_I - check.B.gauge_I).norm() > 1e-12)
    throw IncompatibleGauge("operators declared with different gauges");

  std::vector<double> residuals;
  for (const auto& f : states) {
    for (const auto& [i, j] : check.index_pairs) {
      const SpinorField2 Bf = check.B(f, j);
      const SpinorField2 ABf = check.A(Bf, i);
      const SpinorField2 Af = check.A(f, i);
      const SpinorField2 BAf = check.B(Af, j);
      const SpinorField2 Ef = check.expected(f, i, j);

      const KGrid& g = *f.grid;
      std::vector<std::uint8_t> okset(g.size(), 0);
      for (std::size_t q = 0; q < g.size(); ++q) {
        if (!ABf.ok[q] || !BAf.ok[q] || !Ef.ok[q] || !f.ok[q]) continue;
        if (g.on_boundary_shell(q, exclude_ply)) continue;
        okset[q] = 1;
      }
      const double r = diff_norm_on(ABf, BAf, Ef, okset);
      double scale = norm_on(f, okset);
      if (check.relative) {
        scale = std::max({scale, norm_on(ABf, okset), norm_on(BAf, okset),
                          norm_on(Ef, okset)});
      }
      residuals.push_back(scale > 0.0 ? r / scale : r);
    }
  }

  ReportEntry e;
  e.name = check.name;
  e.equation = check.equation;
  e.residual = residuals.empty()
                   ? 0.0
                   : *std::max_element(residuals.begin(), residuals.end());
  e.residual_median = median(residuals);
  e.tolerance = check.tolerance;
  e.pass = e.residual <= check.tolerance;
  return e;
}

std::function<SpinorField2(const SpinorField2&, int, int)> expected_zero() {
  return [](const SpinorField2& f, int, int) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    return out;
  };
}

std::function<SpinorField2(const SpinorField2&, int, int)> expected_i_delta() {
  return [](const SpinorField2& f, int i, int j) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    if (i == j)
      for (std::size_t q = 0; q < f.grid->size(); ++q)
        if (out.ok[q]) out.v[q] = I1 * f.v[q];
    return out;
  };
}

namespace {

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

std::function<SpinorField2(const SpinorField2&, int, int)> expected_i_epsilon(
    const VectorOperator& op, double scale) {
  return [op, scale](const SpinorField2& f, int i, int j) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    for (int k = 0; k < 3; ++k) {
      const int e = levi_civita(i, j, k);
      if (e == 0) continue;
      const SpinorField2 g = op(f, k);
      for (std::size_t q = 0; q < f.grid->size(); ++q) {
        if (!g.ok[q]) {
          out.ok[q] = 0;
          continue;
        }
        if (out.ok[q]) out.v[q] += I1 * (scale * e) * g.v[q];
      }
    }
    return out;
  };
}

std::function<SpinorField2(const SpinorField2&, int, int)>
expected_position_curvature(std::shared_ptr<const KGrid> grid) {
  return [grid](const SpinorField2& f, int i, int j) {
    SpinorField2 out(f.grid);
    out.ok = f.ok;
    for (std::size_t q = 0; q < f.grid->size(); ++q) {
      if (!out.ok[q]) continue;
      const Vec3 H = berry_field_analytic(f.grid->point(q), grid->eps_k);
      Complex c = 0.0;
      for (int k = 0; k < 3; ++k) c += I1 * double(levi_civita(i, j, k)) * H[k];
      out.v[q] = c * (kSigma3 * f.v[q]);
    }
    return out;
  };
}

std::vector<std::pair<int, int>> all_pairs() {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.emplace_back(i, j);
  return p;
}

std::vector<std::pair<int, int>> offdiag_pairs() {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) p.emplace_back(i, j);
  return p;
}

OperatorReport verify_commutator_table(std::shared_ptr<const KGrid> grid,
                                       std::shared_ptr<const GaugeFrame> frame,
                                       int trials, std::mt19937_64& rng) {
  std::vector<SpinorField2> states;
  states.reserve(trials);
  for (int t = 0; t < trials; ++t)
    states.push_back(random_packet(*frame, rng).values);

  const auto s = op_spin(frame);
  const auto p = op_momentum(grid);
  const auto xi = op_canonical_position(grid);
  const auto b = op_b_analytic(frame);
  const auto x = op_position(frame);
  const auto lam = op_canonical_oam(grid);
  const auto m = op_m(frame);
  const auto l = op_oam(frame);
  const auto jj = op_total_j(frame);
  const auto om = op_omega(grid);

  const auto omega_pairs = std::vector<std::pair<int, int>>{
      {0, 0}, {1, 0}, {2, 0}};

  OperatorReport rep;
  rep.title = "commutator table";
  rep.grid_metadata = {{"n", grid->n},
                       {"center", {grid->center.x(), grid->center.y(), grid->center.z()}},
                       {"half_width", {grid->half_width.x(), grid->half_width.y(), grid->half_width.z()}},
                       {"trials", trials}};

  // algebraic Pauli relation, matrix arithmetic only
  {
    const Mat2 sig[3] = {pauli1(), pauli2(), kSigma3};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Mat2 lhs = sig[i] * sig[j] - sig[j] * sig[i];
        for (int k = 0; k < 3; ++k)
          lhs -= 2.0 * I1 * double(levi_civita(i, j, k)) * sig[k];
        worst = std::max(worst, lhs.norm());
      }
    ReportEntry e;
    e.name = "pauli_algebra";
    e.equation = "[sigma_i, sigma_j] = 2 i eps_ijk sigma_k";
    e.residual = worst;
    e.residual_median = worst;
    e.tolerance = 1e-12;
    e.pass = worst <= e.tolerance;
    rep.entries.push_back(e);
  }

  // Two chained derivatives propagate the reduced-order boundary stencils
  // inward by the full stencil reach, so exclude that many layers.
  const int exclude_ply = std::max(2, default_stencil_order());
  auto add = [&](CommutatorCheck c) {
    rep.entries.push_back(run_commutator_check(c, states, exclude_ply));
  };

  add({"spin_commute", "[s_i, s_j] = 0", s, s, expected_zero(),
       offdiag_pairs(), 1e-12, true});
  add({"momentum_commute", "[p_i, p_j] = 0", p, p, expected_zero(),
       offdiag_pairs(), 1e-12, true});
  add({"momentum_omega", "[p, omega] = 0", p, om, expected_zero(), omega_pairs,
       1e-12, true});
  add({"spin_omega", "[s, omega] = 0", s, om, expected_zero(), omega_pairs,
       1e-12, true});
  add({"canonical_conjugacy", "[xi_i, p_j] = i delta_ij", xi, p,
       expected_i_delta(), all_pairs(), 1e-6, true});
  add({"canonical_position_commute", "[xi_i, xi_j] = 0", xi, xi,
       expected_zero(), offdiag_pairs(), 1e-8, true});
  add({"b_commute", "[b_i, b_j] = 0", b, b, expected_zero(), offdiag_pairs(),
       1e-12, true});
  add({"b_omega", "[b, omega] = 0", b, om, expected_zero(), omega_pairs, 1e-12,
       true});
  add({"canonical_oam_algebra", "[lambda_i, lambda_j] = i eps_ijk lambda_k",
       lam, lam, expected_i_epsilon(lam), offdiag_pairs(), 1e-5, true});
  add({"canonical_oam_omega", "[lambda, omega] = 0", lam, om, expected_zero(),
       omega_pairs, 1e-5, true});
  add({"m_commute", "[m_i, m_j] = 0", m, m, expected_zero(), offdiag_pairs(),
       1e-12, true});
  add({"m_omega", "[m, omega] = 0", m, om, expected_zero(), omega_pairs, 1e-12,
       true});
  add({"oam_spin", "[l_i, s_j] = i eps_ijk s_k", l, s, expected_i_epsilon(s),
       all_pairs(), 1e-4, true});
  add({"oam_algebra", "[l_i, l_j] = i eps_ijk (l_k - s_k)", l, l,
       [l, s](const SpinorField2& f, int i, int j) {
         auto el = expected_i_epsilon(l)(f, i, j);
         auto es = expected_i_epsilon(s)(f, i, j);
         SpinorField2 out(f.grid);
         for (std::size_t q = 0; q < f.grid->size(); ++q) {
           if (!el.ok[q] || !es.ok[q]) {
             out.ok[q] = 0;
             continue;
           }
           out.v[q] = el.v[q] - es.v[q];
         }
         return out;
       },
       offdiag_pairs(), 1e-4, true});
  add({"oam_omega", "[l, omega] = 0", l, om, expected_zero(), omega_pairs,
       1e-5, true});
  add({"total_j_algebra", "[j_i, j_j] = i eps_ijk j_k", jj, jj,
       expected_i_epsilon(jj), offdiag_pairs(), 1e-4, true});
  add({"total_j_omega", "[j, omega] = 0", jj, om, expected_zero(), omega_pairs,
       1e-5, true});
  add({"position_curvature", "x cross x = i sigma3 H_B", x, x,
       expected_position_curvature(grid), offdiag_pairs(), 1e-3, true});

  return rep;
}

}  // namespace photon
