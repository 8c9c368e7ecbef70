#include "sylvbq/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sylvbq {

BandedMatrix::BandedMatrix(int order, int bandwidth) : order_(order), bw_(bandwidth) {
  if (order < 1 || bandwidth < 0) {
    throw std::invalid_argument("BandedMatrix: bad shape");
  }
  bands_ = Eigen::MatrixXd::Zero(2 * bandwidth + 1, order);
}

BandedMatrix BandedMatrix::corner_doubled_tridiagonal(double diag, double off, int order) {
  if (order < 3) {
    throw std::invalid_argument("corner_doubled_tridiagonal: order must be >= 3");
  }
  BandedMatrix m(order, 1);
  for (int i = 0; i < order; ++i) m.at(i, i) = diag;
  for (int i = 0; i + 1 < order; ++i) {
    m.at(i, i + 1) = off;
    m.at(i + 1, i) = off;
  }
  m.at(0, 1) = 2.0 * off;
  m.at(order - 1, order - 2) = 2.0 * off;
  return m;
}

double& BandedMatrix::at(int i, int j) {
  const int d = j - i + bw_;
  if (i < 0 || i >= order_ || d < 0 || d > 2 * bw_) {
    throw std::out_of_range("BandedMatrix::at: index outside band");
  }
  return bands_(d, i);
}

Eigen::VectorXd BandedMatrix::row_sums() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(order_);
  for (int d = 0; d <= 2 * bw_; ++d) {
    const int off = d - bw_;
    const int i0 = std::max(0, -off);
    const int i1 = std::min(order_, order_ - off);
    for (int i = i0; i < i1; ++i) s(i) += bands_(d, i);
  }
  return s;
}

Eigen::MatrixXd BandedMatrix::dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(order_, order_);
  for (int d = 0; d <= 2 * bw_; ++d) {
    const int off = d - bw_;
    const int i0 = std::max(0, -off);
    const int i1 = std::min(order_, order_ - off);
    for (int i = i0; i < i1; ++i) D(i, i + off) = bands_(d, i);
  }
  return D;
}

BandedMatrix BandedMatrix::times(const BandedMatrix& other) const {
  if (other.order_ != order_) {
    throw std::invalid_argument("BandedMatrix::times: order mismatch");
  }
  BandedMatrix out(order_, std::min(order_ - 1, bw_ + other.bw_));
  for (int i = 0; i < order_; ++i) {
    const int k0 = std::max(0, i - bw_);
    const int k1 = std::min(order_ - 1, i + bw_);
    for (int k = k0; k <= k1; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const int j0 = std::max(0, k - other.bw_);
      const int j1 = std::min(order_ - 1, k + other.bw_);
      for (int j = j0; j <= j1; ++j) {
        const double b = other(k, j);
        if (b != 0.0) out.at(i, j) += a * b;
      }
    }
  }
  return out;
}

BandedMatrix BandedMatrix::plus_scaled(const BandedMatrix& other, double scale) const {
  if (other.order_ != order_) {
    throw std::invalid_argument("BandedMatrix::plus_scaled: order mismatch");
  }
  BandedMatrix out(order_, std::max(bw_, other.bw_));
  for (int i = 0; i < order_; ++i) {
    const int j0 = std::max(0, i - out.bw_);
    const int j1 = std::min(order_ - 1, i + out.bw_);
    for (int j = j0; j <= j1; ++j) {
      const double v = (*this)(i, j) + scale * other(i, j);
      if (v != 0.0 || std::abs(i - j) <= out.bw_) out.at(i, j) = v;
    }
  }
  return out;
}

double BandedMatrix::frobenius_distance_to_identity_multiple(double c) const {
  double acc = 0.0;
  for (int i = 0; i < order_; ++i) {
    const int j0 = std::max(0, i - bw_);
    const int j1 = std::min(order_ - 1, i + bw_);
    for (int j = j0; j <= j1; ++j) {
      const double v = (*this)(i, j) - (i == j ? c : 0.0);
      acc += v * v;
    }
  }
  return std::sqrt(acc);
}

}  // namespace sylvbq
