#include "sylvbq/scheme_matrices.hpp"

namespace sylvbq {

BandedMatrix build_banded(double diag, double off, int order) {
  return BandedMatrix::corner_doubled_tridiagonal(diag, off, order);
}

SchemeMatrices build_scheme_matrices(const CoefficientSet& coeffs, int order) {
  SchemeMatrices m;
  m.A = build_banded(coeffs.a1, coeffs.a2, order);
  m.B = build_banded(coeffs.b1, coeffs.b2, order);
  m.R = build_banded(-2.0, 1.0, order);
  const BandedMatrix R2 = m.R.times(m.R);
  m.W = m.A.plus_scaled(R2, 2.0 * coeffs.a2 * coeffs.c2);
  m.Btilde = m.B.plus_scaled(R2, -2.0 * coeffs.a2 * coeffs.c1);
  return m;
}

double operator_identity_gap(const CoefficientSet& coeffs, int order) {
  const SchemeMatrices m = build_scheme_matrices(coeffs, order);
  return m.W.frobenius_distance_to_identity_multiple(0.5) +
         m.A.frobenius_distance_to_identity_multiple(0.5);
}

}  // namespace sylvbq
