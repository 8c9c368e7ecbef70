#ifndef SYLVBQ_BANDED_HPP
#define SYLVBQ_BANDED_HPP

#include <Eigen/Dense>

#include "sylvbq/types.hpp"

namespace sylvbq {

/// Square banded matrix with half-bandwidth `bw`. Storage is diagonal-major:
/// bands(d, i) holds entry (i, i + d - bw). Applications to fields run in
/// O(order^2 * bw); the scheme matrices have bw <= 2, the flattened system
/// matrices bw <= 2(J+1).
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int order, int bandwidth);

  /// Constant tridiagonal with entries (0,1) and (order-1,order-2) doubled,
  /// the reflected-ghost closure of the homogeneous Neumann condition.
  static BandedMatrix corner_doubled_tridiagonal(double diag, double off, int order);

  int order() const { return order_; }
  int bandwidth() const { return bw_; }

  double operator()(int i, int j) const {
    const int d = j - i + bw_;
    if (d < 0 || d > 2 * bw_) return 0.0;
    return bands_(d, i);
  }
  /// In-band write access; (i,j) must satisfy |i-j| <= bandwidth.
  double& at(int i, int j);

  Eigen::VectorXd row_sums() const;
  Eigen::MatrixXd dense() const;

  /// this * other (band widths add).
  BandedMatrix times(const BandedMatrix& other) const;
  /// this + scale * other.
  BandedMatrix plus_scaled(const BandedMatrix& other, double scale) const;

  /// || this - c*I ||_F
  double frobenius_distance_to_identity_multiple(double c) const;

  /// P * X for a field X of matching order.
  template <typename S>
  Field<S> left_apply(const Field<S>& X) const;

  /// X * P^T for a field X of matching order.
  template <typename S>
  Field<S> right_apply_transposed(const Field<S>& X) const;

  /// P * v for a flat vector.
  template <typename S>
  Eigen::Matrix<S, Eigen::Dynamic, 1> apply_vector(
      const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) const;

 private:
  int order_ = 0;
  int bw_ = 0;
  Eigen::MatrixXd bands_;  // (2bw+1) x order
};

template <typename S>
Field<S> BandedMatrix::left_apply(const Field<S>& X) const {
  if (X.rows() != order_) {
    throw std::invalid_argument("BandedMatrix::left_apply: row count mismatch");
  }
  Field<S> Y = Field<S>::Zero(X.rows(), X.cols());
  for (int d = 0; d <= 2 * bw_; ++d) {
    const int off = d - bw_;  // column = row + off
    const int i0 = std::max(0, -off);
    const int i1 = std::min(order_, order_ - off);
    for (int i = i0; i < i1; ++i) {
      const double p = bands_(d, i);
      if (p != 0.0) Y.row(i) += p * X.row(i + off);
    }
  }
  return Y;
}

template <typename S>
Field<S> BandedMatrix::right_apply_transposed(const Field<S>& X) const {
  if (X.cols() != order_) {
    throw std::invalid_argument("BandedMatrix::right_apply_transposed: column count mismatch");
  }
  Field<S> Y = Field<S>::Zero(X.rows(), X.cols());
  // (X P^T)(:, j) = sum_k P(j, k) X(:, k)
  for (int d = 0; d <= 2 * bw_; ++d) {
    const int off = d - bw_;
    const int j0 = std::max(0, -off);
    const int j1 = std::min(order_, order_ - off);
    for (int j = j0; j < j1; ++j) {
      const double p = bands_(d, j);
      if (p != 0.0) Y.col(j) += p * X.col(j + off);
    }
  }
  return Y;
}

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> BandedMatrix::apply_vector(
    const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) const {
  if (v.size() != order_) {
    throw std::invalid_argument("BandedMatrix::apply_vector: size mismatch");
  }
  Eigen::Matrix<S, Eigen::Dynamic, 1> y = Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(order_);
  for (int d = 0; d <= 2 * bw_; ++d) {
    const int off = d - bw_;
    const int i0 = std::max(0, -off);
    const int i1 = std::min(order_, order_ - off);
    for (int i = i0; i < i1; ++i) {
      const double p = bands_(d, i);
      if (p != 0.0) y(i) += p * v(i + off);
    }
  }
  return y;
}

}  // namespace sylvbq

#endif
