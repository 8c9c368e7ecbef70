#include "sylvbq/flat_baseline.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sylvbq {

std::vector<int> FlatIndexMap::lambda() const {
  std::vector<int> out;
  for (int k = J; k <= N; k += J + 1) out.push_back(k);
  return out;
}

std::vector<int> FlatIndexMap::lambda_tilde() const {
  std::vector<int> out;
  for (int k = 0; k <= N; k += J + 1) out.push_back(k);
  return out;
}

Eigen::VectorXd flatten(const RealField& X) {
  const int n = static_cast<int>(X.rows());
  if (X.cols() != n) throw std::invalid_argument("flatten: field must be square");
  const int J = n - 1;
  Eigen::VectorXd v(n * n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) v(j * (J + 1) + m) = X(j, m);
  }
  return v;
}

RealField unflatten(const Eigen::VectorXd& v, int J) {
  const int n = J + 1;
  if (v.size() != n * n) throw std::invalid_argument("unflatten: length mismatch");
  RealField X(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) X(j, m) = v(j * (J + 1) + m);
  }
  return X;
}

namespace {

// P (x) I + I (x) Q under the row-major flatten: within-block couplings carry
// Q, block-to-block couplings carry P.
BandedMatrix kron_pair_flat(const BandedMatrix& P, const BandedMatrix& Q, int J) {
  const int n = J + 1;
  BandedMatrix M(n * n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const int k = j * n + m;
      for (int mm = std::max(0, m - Q.bandwidth()); mm <= std::min(n - 1, m + Q.bandwidth());
           ++mm) {
        const double q = Q(m, mm);
        if (q != 0.0) M.at(k, j * n + mm) += q;
      }
      for (int jj = std::max(0, j - P.bandwidth()); jj <= std::min(n - 1, j + P.bandwidth());
           ++jj) {
        const double p = P(j, jj);
        if (p != 0.0) M.at(k, jj * n + m) += p;
      }
    }
  }
  return M;
}

// R (x) I: block-to-block couplings only (the x-direction difference).
BandedMatrix kron_left_flat(const BandedMatrix& R, int J) {
  const int n = J + 1;
  BandedMatrix M(n * n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const int k = j * n + m;
      for (int jj = std::max(0, j - R.bandwidth()); jj <= std::min(n - 1, j + R.bandwidth());
           ++jj) {
        const double r = R(j, jj);
        if (r != 0.0) M.at(k, jj * n + m) += r;
      }
    }
  }
  return M;
}

// Published entry rules, applied in print order with assignment semantics.
// The sub-diagonal rules are read as (row, row-1) / (row, row-J-1): the
// printed archetypes (N,N-1) and the N-J..N range only make sense that way.
// Entries the rules never assign stay zero; flat_discrepancies against the
// Kronecker build reports them.
BandedMatrix literal_pair_flat(double d1, double d2, int J) {
  const FlatIndexMap ix(J);
  const int n = J + 1;
  const int N = ix.N;
  BandedMatrix M(n * n, n);
  for (int k = 0; k <= N; ++k) M.at(k, k) = 2.0 * d1;
  // near super-diagonal
  for (int k = 1; k <= N - 1; ++k) {
    if (!ix.on_theta(k)) M.at(k, k + 1) = d2;
  }
  M.at(0, 1) = 2.0 * d2;
  for (int k : ix.lambda()) {
    if (k + 1 <= N) M.at(k, k + 1) = 0.0;
  }
  // near sub-diagonal
  for (int k = 1; k <= N; ++k) {
    if (!ix.on_theta(k)) M.at(k, k - 1) = d2;
  }
  M.at(N, N - 1) = 2.0 * d2;
  for (int k : ix.lambda_tilde()) {
    if (k >= 1) M.at(k, k - 1) = 0.0;
  }
  // far super-diagonal
  for (int k = 0; k <= J; ++k) M.at(k, k + n) = 2.0 * d2;
  for (int k = n; k <= N - n; ++k) M.at(k, k + n) = d2;
  // far sub-diagonal
  for (int k = n; k <= N - n; ++k) M.at(k, k - n) = d2;
  for (int k = N - J; k <= N; ++k) M.at(k, k - n) = 2.0 * d2;
  return M;
}

BandedMatrix literal_r_flat(int J) {
  const FlatIndexMap ix(J);
  const int n = J + 1;
  const int N = ix.N;
  BandedMatrix M(n * n, n);
  for (int k = 0; k <= N; ++k) M.at(k, k) = -2.0;
  for (int k = 0; k <= J; ++k) M.at(k, k + n) = 2.0;
  for (int k = N - J; k <= N; ++k) M.at(k, k - n) = 2.0;
  for (int k = n; k <= N - n; ++k) {
    M.at(k, k + n) = 1.0;
    M.at(k, k - n) = 1.0;
  }
  return M;
}

}  // namespace

FlatMatrices build_flat_matrices(const CoefficientSet& coeffs, int J, FlatVariant variant) {
  if (J < 2) throw std::invalid_argument("build_flat_matrices: J must be >= 2");
  FlatMatrices f;
  f.J = J;
  if (variant == FlatVariant::kronecker) {
    const int n = J + 1;
    const BandedMatrix A = build_banded(coeffs.a1, coeffs.a2, n);
    const BandedMatrix B = build_banded(coeffs.b1, coeffs.b2, n);
    const BandedMatrix R = build_banded(-2.0, 1.0, n);
    f.A_flat = kron_pair_flat(A, A, J);
    f.B_flat = kron_pair_flat(B, B, J);
    f.R_flat = kron_left_flat(R, J);
  } else {
    f.A_flat = literal_pair_flat(coeffs.a1, coeffs.a2, J);
    f.B_flat = literal_pair_flat(coeffs.b1, coeffs.b2, J);
    f.R_flat = literal_r_flat(J);
  }
  return f;
}

namespace {

void collect_diffs(const BandedMatrix& L, const BandedMatrix& K,
                   std::vector<FlatDiscrepancy>& out) {
  const int n = L.order();
  const int bw = std::max(L.bandwidth(), K.bandwidth());
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - bw);
    const int j1 = std::min(n - 1, i + bw);
    for (int j = j0; j <= j1; ++j) {
      const double lv = L(i, j);
      const double kv = K(i, j);
      if (lv != kv) out.push_back({i, j, lv, kv});
    }
  }
}

}  // namespace

std::vector<FlatDiscrepancy> flat_discrepancies(const FlatMatrices& literal,
                                                const FlatMatrices& kronecker) {
  std::vector<FlatDiscrepancy> out;
  collect_diffs(literal.A_flat, kronecker.A_flat, out);
  collect_diffs(literal.B_flat, kronecker.B_flat, out);
  collect_diffs(literal.R_flat, kronecker.R_flat, out);
  return out;
}

BandedLU::BandedLU(const BandedMatrix& M) {
  n_ = M.order();
  kl_ = M.bandwidth();
  ku_ = M.bandwidth();
  const int ldab = 2 * kl_ + ku_ + 1;
  ab_ = Eigen::MatrixXd::Zero(ldab, n_);
  for (int j = 0; j < n_; ++j) {
    const int i0 = std::max(0, j - ku_);
    const int i1 = std::min(n_ - 1, j + kl_);
    for (int i = i0; i <= i1; ++i) {
      ab_(kl_ + ku_ + i - j, j) = M(i, j);
    }
  }
  ipiv_.resize(n_);
  const int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab,
                                  ipiv_.data());
  if (info != 0) {
    throw SolverFailure("banded LU factorization failed (info " + std::to_string(info) + ")");
  }
}

Eigen::VectorXd BandedLU::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("BandedLU::solve: size mismatch");
  Eigen::VectorXd x = rhs;
  const int ldab = 2 * kl_ + ku_ + 1;
  const int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab,
                                  ipiv_.data(), x.data(), n_);
  if (info != 0) {
    throw SolverFailure("banded LU solve failed (info " + std::to_string(info) + ")");
  }
  return x;
}

FlatOperator::FlatOperator(const CoefficientSet& coeffs, int J, FlatVariant variant,
                           FlatLinearSolver mode)
    : coeffs_(coeffs), mats_(build_flat_matrices(coeffs, J, variant)), mode_(mode) {
  const BandedMatrix R2 = mats_.R_flat.times(mats_.R_flat);
  W_flat_ = mats_.A_flat.plus_scaled(R2, 2.0 * coeffs.a2 * coeffs.c2);
  Bt_flat_ = mats_.B_flat.plus_scaled(R2, -2.0 * coeffs.a2 * coeffs.c1);
  if (mode_ == FlatLinearSolver::banded_lu) {
    lu_ = BandedLU(W_flat_);
  } else {
    W_dense_ = W_flat_.dense();
  }
}

Eigen::VectorXd FlatOperator::solve(const Eigen::VectorXd& rhs) const {
  if (mode_ == FlatLinearSolver::banded_lu) {
    return lu_.solve(rhs);
  }
  // refactored at every call on purpose: this is the naive cost profile
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(W_dense_);
  return lu.solve(rhs);
}

FlatState flatten_state(const StepState<double>& st) {
  FlatState f;
  f.n = st.n;
  f.U_prev = flatten(st.U_prev);
  f.U_curr = flatten(st.U_curr);
  f.V_prev = flatten(st.V_prev);
  f.V_curr = flatten(st.V_curr);
  f.F_prev = flatten(st.F_prev);
  f.F_curr = flatten(st.F_curr);
  return f;
}

void step_flat(FlatState& st, const FlatOperator& op, const Eigen::VectorXd* G_flat,
               double blowup_guard) {
  const CoefficientSet& c = op.coeffs();
  Eigen::VectorXd rhs = op.Bt_flat().apply_vector(st.U_curr);
  rhs += c.b2 * op.matrices().R_flat.apply_vector(st.V_curr);
  rhs -= op.W_flat().apply_vector(st.U_prev);
  rhs -= c.a2 * op.matrices().R_flat.apply_vector((st.F_prev + st.F_curr).eval());
  if (G_flat) rhs += (c.l * c.l) * (*G_flat);

  Eigen::VectorXd U_next = op.solve(rhs);
  const double norm = U_next.norm();
  if (!(norm <= blowup_guard)) {
    throw BlowupError(st.n + 1, norm);
  }
  Eigen::VectorXd V_next = 2.0 * c.c2 * op.matrices().R_flat.apply_vector(U_next);
  V_next +=
      2.0 * op.matrices().R_flat.apply_vector((c.c1 * st.U_curr + c.c2 * st.U_prev).eval());
  V_next -= st.V_prev;
  V_next += st.F_prev + st.F_curr;

  st.U_prev = std::move(st.U_curr);
  st.U_curr = std::move(U_next);
  st.V_prev = std::move(st.V_curr);
  st.V_curr = std::move(V_next);
  st.F_prev = std::move(st.F_curr);
  st.F_curr = st.U_curr.cwiseProduct(st.U_curr);
  st.n += 1;
}

}  // namespace sylvbq
