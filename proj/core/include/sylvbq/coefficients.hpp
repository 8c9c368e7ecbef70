#ifndef SYLVBQ_COEFFICIENTS_HPP
#define SYLVBQ_COEFFICIENTS_HPP

#include "sylvbq/grid.hpp"

namespace sylvbq {

/// All scalar coefficients of the scheme. Identities that hold by
/// construction: a1 + 2 a2 = 1/2, b1 + 2 b2 = 1.
struct CoefficientSet {
  double sigma = 0.0;  // l^2 / h^2
  double delta = 0.0;  // q / h^2
  double a1 = 0.5;
  double a2 = 0.0;
  double b1 = 1.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double omega = 0.0;      // 2 a2 c2
  double omega1 = 0.5;     // a1 + 6 omega
  double omega1bar = 0.5;  // omega1 + omega
  double omega2 = 0.0;     // a2 - 4 omega

  // inputs kept for provenance
  double alpha = 0.0;
  double q = 0.0;
  double l = 0.0;
  double h = 0.0;
};

CoefficientSet compute_coefficients(const GridSpec& grid, const SchemeParams& params);

/// Same computation from raw (alpha, q, l, h); used by operator-level
/// diagnostics that sweep h without a grid.
CoefficientSet compute_coefficients(double alpha, double q, double l, double h);

}  // namespace sylvbq

#endif
