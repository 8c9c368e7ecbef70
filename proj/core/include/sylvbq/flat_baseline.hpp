#ifndef SYLVBQ_FLAT_BASELINE_HPP
#define SYLVBQ_FLAT_BASELINE_HPP

#include <memory>
#include <vector>

#include "sylvbq/banded.hpp"
#include "sylvbq/coefficients.hpp"
#include "sylvbq/stepper.hpp"
#include "sylvbq/types.hpp"

namespace sylvbq {

/// Lexicographic flattening k = j(J+1) + m of the (J+1)x(J+1) grid,
/// N = J(J+2) the top flat index.
struct FlatIndexMap {
  int J = 0;
  int N = 0;

  explicit FlatIndexMap(int J_) : J(J_), N(J_ * (J_ + 2)) {}

  int flat(int j, int m) const { return j * (J + 1) + m; }
  int row_of(int k) const { return k / (J + 1); }
  int col_of(int k) const { return k % (J + 1); }
  /// k sits in the last column (m = J) of its block row.
  bool on_lambda(int k) const { return col_of(k) == J; }
  /// k sits in the first column (m = 0) of its block row.
  bool on_lambda_tilde(int k) const { return col_of(k) == 0; }
  bool on_theta(int k) const { return on_lambda(k) || on_lambda_tilde(k); }

  std::vector<int> lambda() const;
  std::vector<int> lambda_tilde() const;
};

Eigen::VectorXd flatten(const RealField& X);
RealField unflatten(const Eigen::VectorXd& v, int J);

enum class FlatVariant { kronecker, appendix_literal };

/// The flattened system matrices of order N+1 = (J+1)^2, bandwidth J+1.
/// `kronecker` derives them from the 2D operators (A (x) I + I (x) A etc.
/// under the row-major flatten); `appendix_literal` transcribes the
/// published entry rules verbatim, leaving unassigned entries at zero.
struct FlatMatrices {
  int J = 0;
  BandedMatrix A_flat, B_flat, R_flat;
};

FlatMatrices build_flat_matrices(const CoefficientSet& coeffs, int J, FlatVariant variant);

struct FlatDiscrepancy {
  int i = 0, j = 0;
  double literal = 0.0;
  double kronecker = 0.0;
};

/// Entrywise differences between the two builds (exact comparison).
std::vector<FlatDiscrepancy> flat_discrepancies(const FlatMatrices& literal,
                                                const FlatMatrices& kronecker);

/// LU of a banded matrix via LAPACK dgbtrf/dgbtrs.
class BandedLU {
 public:
  BandedLU() = default;
  explicit BandedLU(const BandedMatrix& M);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  Eigen::MatrixXd ab_;  // LAPACK band storage with fill-in rows
  std::vector<int> ipiv_;
};

enum class FlatLinearSolver { banded_lu, dense_lu_per_step };

/// Flattened stepping operator: assembles W_flat = A_flat + 2 a2 c2 R_flat^2
/// and Bt_flat = B_flat - 2 a2 c1 R_flat^2 and solves W_flat u = rhs either
/// through a banded factorization computed once (the matrix is constant along
/// the march) or through a dense LU refactored at every call, which is the
/// naive-per-step cost profile this baseline exists to measure.
class FlatOperator {
 public:
  FlatOperator(const CoefficientSet& coeffs, int J, FlatVariant variant,
               FlatLinearSolver mode);

  const FlatMatrices& matrices() const { return mats_; }
  const BandedMatrix& W_flat() const { return W_flat_; }
  const BandedMatrix& Bt_flat() const { return Bt_flat_; }
  const CoefficientSet& coeffs() const { return coeffs_; }
  FlatLinearSolver mode() const { return mode_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  CoefficientSet coeffs_;
  FlatMatrices mats_;
  BandedMatrix W_flat_, Bt_flat_;
  FlatLinearSolver mode_;
  BandedLU lu_;               // banded mode
  Eigen::MatrixXd W_dense_;   // dense mode
};

struct FlatState {
  int n = 1;
  Eigen::VectorXd U_prev, U_curr, V_prev, V_curr, F_prev, F_curr;
};

/// Flatten a 2D stepping window; both paths then march the same data.
FlatState flatten_state(const StepState<double>& st);

/// One step of the flattened recursion, mirroring advance().
void step_flat(FlatState& st, const FlatOperator& op, const Eigen::VectorXd* G_flat,
               double blowup_guard = 1e12);

}  // namespace sylvbq

#endif
