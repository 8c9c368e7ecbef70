#include "sylvbq/sylvester.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

namespace sylvbq {

std::string to_string(SylvesterMethod m) {
  switch (m) {
    case SylvesterMethod::fixed_point: return "fixed_point";
    case SylvesterMethod::schur: return "schur";
    case SylvesterMethod::kron_direct: return "kron_direct";
  }
  return "?";
}

std::string to_string(SolverBackend b) {
  switch (b) {
    case SolverBackend::auto_select: return "auto";
    case SolverBackend::fixed_point: return "fixed_point";
    case SolverBackend::schur: return "schur";
    case SolverBackend::kron_direct: return "kron_direct";
  }
  return "?";
}

SolverBackend solver_backend_from_string(const std::string& name) {
  if (name == "auto") return SolverBackend::auto_select;
  if (name == "fixed_point") return SolverBackend::fixed_point;
  if (name == "schur") return SolverBackend::schur;
  if (name == "kron_direct") return SolverBackend::kron_direct;
  throw std::invalid_argument("unknown solver backend: " + name);
}

double contraction_factor(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
  if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows()) {
    throw std::invalid_argument("contraction_factor: operands must be conformable squares");
  }
  const auto n = P.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  return (P - 0.5 * I).norm() + (Q - 0.5 * I).norm();
}

double contraction_factor(const BandedMatrix& P, const BandedMatrix& Q) {
  if (P.order() != Q.order()) {
    throw std::invalid_argument("contraction_factor: operands must be conformable squares");
  }
  return P.frobenius_distance_to_identity_multiple(0.5) +
         Q.frobenius_distance_to_identity_multiple(0.5);
}

namespace detail {

namespace {

// Diagonal block starts of a real Schur form; blocks are 1x1 or 2x2.
std::vector<int> block_starts(const Eigen::MatrixXd& T) {
  std::vector<int> starts;
  const int n = static_cast<int>(T.rows());
  int k = 0;
  while (k < n) {
    starts.push_back(k);
    if (k + 1 < n && T(k + 1, k) != 0.0) {
      k += 2;
    } else {
      k += 1;
    }
  }
  starts.push_back(n);
  return starts;
}

}  // namespace

Eigen::MatrixXd quasi_triangular_solve(const Eigen::MatrixXd& TP, const Eigen::MatrixXd& TQ,
                                       const Eigen::MatrixXd& C, double pivot_floor) {
  const int n = static_cast<int>(TP.rows());
  const int m = static_cast<int>(TQ.rows());
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, m);
  const std::vector<int> bp = block_starts(TP);
  const std::vector<int> bq = block_starts(TQ);
  const int nbp = static_cast<int>(bp.size()) - 1;
  const int nbq = static_cast<int>(bq.size()) - 1;

  for (int bi = nbp - 1; bi >= 0; --bi) {
    const int i0 = bp[bi];
    const int ni = bp[bi + 1] - i0;
    for (int bj = nbq - 1; bj >= 0; --bj) {
      const int j0 = bq[bj];
      const int nj = bq[bj + 1] - j0;

      Eigen::MatrixXd rhs = C.block(i0, j0, ni, nj);
      const int below = n - (i0 + ni);
      if (below > 0) {
        rhs.noalias() -= TP.block(i0, i0 + ni, ni, below) * Y.block(i0 + ni, j0, below, nj);
      }
      const int right = m - (j0 + nj);
      if (right > 0) {
        rhs.noalias() -=
            Y.block(i0, j0 + nj, ni, right) * TQ.block(j0, j0 + nj, nj, right).transpose();
      }

      // Small Sylvester block: TP_ii Y_ij + Y_ij TQ_jj^T = rhs, at most 2x2.
      const Eigen::MatrixXd Pb = TP.block(i0, i0, ni, ni);
      const Eigen::MatrixXd Qb = TQ.block(j0, j0, nj, nj);
      const int sz = ni * nj;
      Eigen::MatrixXd K = Eigen::MatrixXd::Zero(sz, sz);
      // column-major vec over the (ni x nj) block
      for (int c = 0; c < nj; ++c) {
        for (int r = 0; r < ni; ++r) {
          const int row = c * ni + r;
          for (int rr = 0; rr < ni; ++rr) K(row, c * ni + rr) += Pb(r, rr);
          for (int cc = 0; cc < nj; ++cc) K(row, cc * ni + r) += Qb(c, cc);
        }
      }
      Eigen::Map<const Eigen::VectorXd> rv(rhs.data(), sz);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
      const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
      if (!(min_pivot > pivot_floor)) {
        throw SolverFailure("Sylvester pencil is singular or near-singular (pivot " +
                            std::to_string(min_pivot) + ")");
      }
      const Eigen::VectorXd yv = lu.solve(rv);
      for (int c = 0; c < nj; ++c) {
        for (int r = 0; r < ni; ++r) Y(i0 + r, j0 + c) = yv(c * ni + r);
      }
    }
  }
  return Y;
}

SchurFactors compute_schur_factors(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
  if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows()) {
    throw std::invalid_argument("Sylvester solve: operands must be conformable squares");
  }
  SchurFactors f;
  Eigen::RealSchur<Eigen::MatrixXd> sp(P);
  Eigen::RealSchur<Eigen::MatrixXd> sq(Q);
  if (sp.info() != Eigen::Success || sq.info() != Eigen::Success) {
    throw SolverFailure("real Schur reduction did not converge");
  }
  f.TP = sp.matrixT();
  f.UP = sp.matrixU();
  f.TQ = sq.matrixT();
  f.UQ = sq.matrixU();
  const double scale =
      std::max(1.0, f.TP.cwiseAbs().maxCoeff() + f.TQ.cwiseAbs().maxCoeff());
  f.pivot_floor = 1e-300 * scale;
  return f;
}

Eigen::MatrixXd kron_direct_solve(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                                  const Eigen::MatrixXd& C) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n || Q.rows() != n || Q.cols() != n || C.rows() != n || C.cols() != n) {
    throw std::invalid_argument("kron_direct: operands must be conformable squares");
  }
  if (n > 32) {
    throw std::invalid_argument("kron_direct: order > 32 refused (dense n^2 x n^2 solve)");
  }
  const int N = n * n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  // vec(P X) = (I (x) P) vec X ; vec(X Q^T) = (Q (x) I) vec X
  for (int b = 0; b < n; ++b) {
    M.block(b * n, b * n, n, n) += P;
  }
  for (int bi = 0; bi < n; ++bi) {
    for (int bj = 0; bj < n; ++bj) {
      if (Q(bi, bj) != 0.0) {
        M.block(bi * n, bj * n, n, n) +=
            Q(bi, bj) * Eigen::MatrixXd::Identity(n, n);
      }
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double floor = 1e-300 * std::max(1.0, M.cwiseAbs().maxCoeff());
  if (!(min_pivot > floor)) {
    throw SolverFailure("kron_direct: singular system (pivot " + std::to_string(min_pivot) + ")");
  }
  Eigen::Map<const Eigen::VectorXd> cv(C.data(), N);
  const Eigen::VectorXd xv = lu.solve(cv);
  return Eigen::Map<const Eigen::MatrixXd>(xv.data(), n, n);
}

}  // namespace detail

SylvesterSolver::SylvesterSolver(BandedMatrix P, BandedMatrix Q, double tol, int max_iters,
                                 SolverBackend backend)
    : P_(std::move(P)),
      Q_(std::move(Q)),
      kappa_(sylvbq::contraction_factor(P_, Q_)),
      tol_(tol),
      max_iters_(max_iters),
      backend_(backend) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("SylvesterSolver: tolerance must be positive");
  }
}

const detail::SchurFactors& SylvesterSolver::factors() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!schur_) {
    schur_ = std::make_unique<detail::SchurFactors>(
        detail::compute_schur_factors(P_.dense(), Q_.dense()));
  }
  return *schur_;
}

}  // namespace sylvbq
