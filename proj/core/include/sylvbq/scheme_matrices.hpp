#ifndef SYLVBQ_SCHEME_MATRICES_HPP
#define SYLVBQ_SCHEME_MATRICES_HPP

#include "sylvbq/banded.hpp"
#include "sylvbq/coefficients.hpp"

namespace sylvbq {

/// The scheme's structured matrices of order J+1. A, B, R are tridiagonal
/// with corner-doubled first/last off-diagonal entries; W = A + 2 a2 c2 R^2
/// and Btilde = B - 2 a2 c1 R^2 are pentadiagonal.
///
/// Row sums: A -> 1/2, B -> 1, R -> 0, W -> 1/2, Btilde -> 1.
struct SchemeMatrices {
  BandedMatrix A, B, R, W, Btilde;
};

/// Constant tridiagonal with doubled (0,1) and (order-1,order-2) entries.
BandedMatrix build_banded(double diag, double off, int order);

SchemeMatrices build_scheme_matrices(const CoefficientSet& coeffs, int order);

/// P X + X Q^T.
template <typename S>
Field<S> apply_pair(const BandedMatrix& P, const BandedMatrix& Q, const Field<S>& X) {
  if (X.rows() != P.order() || X.cols() != Q.order() || P.order() != Q.order()) {
    throw std::invalid_argument("apply_pair: dimension mismatch");
  }
  return P.left_apply(X) + Q.right_apply_transposed(X);
}

template <typename S>
Field<S> apply_pair(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q, const Field<S>& X) {
  if (X.rows() != P.rows() || X.cols() != Q.rows() || P.rows() != P.cols() ||
      Q.rows() != Q.cols()) {
    throw std::invalid_argument("apply_pair: dimension mismatch");
  }
  return (P * X + X * Q.transpose()).eval();
}

/// ||W - I/2||_F + ||A - I/2||_F, an upper bound on the distance of the
/// operator X -> W X + X A^T from the identity.
double operator_identity_gap(const CoefficientSet& coeffs, int order);

/// Second differences with the reflected-ghost stencil: R U / h^2 acts in
/// the x (row) direction, U R^T / h^2 in the y (column) direction.
template <typename S>
Field<S> d2x(const BandedMatrix& R, const Field<S>& U, double h) {
  return (R.left_apply(U) / (h * h)).eval();
}

template <typename S>
Field<S> d2y(const BandedMatrix& R, const Field<S>& U, double h) {
  return (R.right_apply_transposed(U) / (h * h)).eval();
}

}  // namespace sylvbq

#endif
