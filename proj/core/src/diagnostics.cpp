#include "sylvbq/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "sylvbq/problems.hpp"
#include "sylvbq/scheme_matrices.hpp"
#include "sylvbq/stepper.hpp"

namespace sylvbq {

StabilityDiagnostics discriminant_diagnostics(double l, double h, double norm_phi,
                                              double epsilon, const CoefficientSet& coeffs) {
  if (!(l >= 0.0) || !(h > 0.0) || !(norm_phi >= 0.0)) {
    throw std::invalid_argument("discriminant_diagnostics: inputs must be positive");
  }
  StabilityDiagnostics d;
  d.l = l;
  d.h = h;
  d.norm_phi = norm_phi;
  d.epsilon = epsilon;

  const double lphi = l * norm_phi;
  const double lin = 19.0 + 8.0 * lphi;
  d.Delta1 = lin * lin - 32.0 * (3.0 * lphi + 4.0 * lphi * lphi - epsilon);
  d.has_real_root = d.Delta1 >= 0.0;
  d.eta1 = d.has_real_root ? (std::sqrt(d.Delta1) - lin) / 16.0 : 0.0;

  const double ac1 = std::abs(coeffs.c1);
  const double ac2 = std::abs(coeffs.c2);
  const double inv_h2 = 1.0 / (h * h);
  d.Acoef = 3.0 + 32.0 * ac2;
  d.Bcoef = 4.0 * (ac1 + 8.0 * ac2 * (2.0 + lphi) + lphi + inv_h2);
  d.Ccoef = 2.0 * (1.0 + 8.0 * ac2) * lphi * lphi + 4.0 * l * (4.0 * ac2 + inv_h2) * norm_phi;
  d.Delta2_asymptotic = 676.0 * inv_h2 * inv_h2 + 8.0 * epsilon * inv_h2;
  return d;
}

StabilityProbeResult stability_probe(double eta, int steps, int J, double l,
                                     const SchemeParams& params, double epsilon) {
  if (!(eta >= 0.0)) throw std::invalid_argument("stability_probe: eta must be >= 0");
  if (steps < 0) throw std::invalid_argument("stability_probe: negative step count");

  StabilityProbeResult out;
  out.eta = eta;
  out.epsilon = epsilon;
  out.steps = steps;

  const ManufacturedCase<double> mc = example1(params.q);
  const GridSpec grid = build_grid(mc.L0, mc.L1, J, 0.0, l, steps);
  const CoefficientSet c = compute_coefficients(grid, params);
  const SchemeMatrices mats = build_scheme_matrices(c, grid.order());
  const SylvesterSolver solver(mats.W, mats.A);

  RealField U_raw = sample_field<double>(grid, mc.exact_u, 0.0);
  RealField phi_raw = sample_field<double>(
      grid, [&](double x, double y, double) { return mc.phi(x, y); }, 0.0);
  RealField V_raw = discrete_v(U_raw, mats.R, c);
  const double raw_norm = std::sqrt(U_raw.squaredNorm() + V_raw.squaredNorm());
  const double s = (raw_norm > 0.0) ? eta / raw_norm : 0.0;

  StepState<double> st;
  st.n = 1;
  st.U_prev = s * U_raw;
  st.V_prev = s * V_raw;
  const RealField phi0 = s * phi_raw;
  // homogeneous Taylor start: u^1 = u^0 + l phi + l^2/2 (lap u^0 + d2x v^0)
  st.U_curr = st.U_prev + l * phi0 +
              (0.5 * l * l) *
                  (d2x(mats.R, st.U_prev, grid.h) + d2y(mats.R, st.U_prev, grid.h) +
                   d2x(mats.R, st.V_prev, grid.h));
  st.V_curr = discrete_v(st.U_curr, mats.R, c);
  st.F_prev = st.U_prev.cwiseProduct(st.U_prev);
  st.F_curr = st.U_curr.cwiseProduct(st.U_curr);

  const auto pair_norm = [](const RealField& U, const RealField& V) {
    return std::sqrt(U.squaredNorm() + V.squaredNorm());
  };
  out.max_pair_norm = pair_norm(st.U_prev, st.V_prev);
  out.arg_n = 0;
  const double n1 = pair_norm(st.U_curr, st.V_curr);
  if (n1 > out.max_pair_norm) {
    out.max_pair_norm = n1;
    out.arg_n = 1;
  }

  try {
    while (st.n < steps) {
      advance<double>(st, mats, c, solver, nullptr);
      const double pn = pair_norm(st.U_curr, st.V_curr);
      if (pn > out.max_pair_norm) {
        out.max_pair_norm = pn;
        out.arg_n = st.n;
      }
    }
  } catch (const BlowupError& e) {
    out.blew_up = true;
    out.blowup_step = e.step;
    out.bounded = false;
    return out;
  }
  out.bounded = out.max_pair_norm <= epsilon;
  return out;
}

}  // namespace sylvbq
