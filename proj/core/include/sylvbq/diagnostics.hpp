#ifndef SYLVBQ_DIAGNOSTICS_HPP
#define SYLVBQ_DIAGNOSTICS_HPP

#include "sylvbq/coefficients.hpp"
#include "sylvbq/grid.hpp"

namespace sylvbq {

/// Small-data solvability diagnostics for the first step of the recursion.
struct StabilityDiagnostics {
  double l = 0.0, h = 0.0;
  double norm_phi = 0.0;  // sup norm of the initial velocity
  double epsilon = 0.0;   // target bound
  double Delta1 = 0.0;    // (19+8l|phi|)^2 - 32(3l|phi| + 4l^2|phi|^2 - eps)
  bool has_real_root = false;
  double eta1 = 0.0;      // (sqrt(Delta1) - (19+8l|phi|))/16, positive root
  double Acoef = 0.0;     // 3 + 32|c2|
  double Bcoef = 0.0;     // 4(|c1| + 8|c2|(2+l|phi|) + l|phi| + 1/h^2)
  double Ccoef = 0.0;     // 2(1+8|c2|) l^2|phi|^2 + 4l(4|c2| + 1/h^2)|phi|
  double Delta2_asymptotic = 0.0;  // 676/h^4 + 8 eps/h^2
};

StabilityDiagnostics discriminant_diagnostics(double l, double h, double norm_phi,
                                              double epsilon, const CoefficientSet& coeffs);

struct StabilityProbeResult {
  double eta = 0.0;
  double epsilon = 1.0;
  int steps = 0;
  double max_pair_norm = 0.0;  // max_n sqrt(||U^n||_F^2 + ||V^n||_F^2)
  int arg_n = 0;
  bool bounded = false;  // max_pair_norm <= epsilon
  bool blew_up = false;
  int blowup_step = -1;
};

/// Homogeneous run with the polynomial-exponential initial profile scaled so
/// that the initial pair norm equals eta exactly; reports the max pair norm
/// over the march.
StabilityProbeResult stability_probe(double eta, int steps, int J, double l,
                                     const SchemeParams& params, double epsilon);

}  // namespace sylvbq

#endif
