#ifndef SYLVBQ_SYLVESTER_HPP
#define SYLVBQ_SYLVESTER_HPP

#include <memory>
#include <mutex>
#include <string>

#include "sylvbq/banded.hpp"
#include "sylvbq/scheme_matrices.hpp"
#include "sylvbq/types.hpp"

namespace sylvbq {

enum class SylvesterMethod { fixed_point, schur, kron_direct };

std::string to_string(SylvesterMethod m);

/// P X + X Q^T = C with a relative residual contract:
/// ||P X + X Q^T - C||_F <= tol * max(||C||_F, 1e-30) on success.
template <typename S>
struct SylvesterProblem {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  Field<S> C;
  double tol = 1e-12;
  int max_iters = 200;
};

template <typename S>
struct SolveReport {
  Field<S> X;
  double residual = 0.0;
  int iterations = 0;
  SylvesterMethod method = SylvesterMethod::fixed_point;
  double contraction = 0.0;  // fixed_point only
};

/// kappa = ||P - I/2||_F + ||Q - I/2||_F, a computable bound on the
/// distance of X -> P X + X Q^T from the identity. The defect iteration
/// converges whenever kappa < 1.
double contraction_factor(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q);
double contraction_factor(const BandedMatrix& P, const BandedMatrix& Q);

namespace detail {

constexpr double kResidualFloor = 1e-30;

template <typename S>
double field_norm(const Field<S>& X) {
  return X.norm();
}

/// Defect iteration X_{k+1} = X_k + (C - P X_k - X_k Q^T), started at X_0 = 0.
/// The residual contracts by at least kappa per sweep.
template <typename S, typename ApplyFn>
SolveReport<S> defect_iteration(ApplyFn&& apply, const Field<S>& C, double kappa, double tol,
                                int max_iters) {
  SolveReport<S> rep;
  rep.method = SylvesterMethod::fixed_point;
  rep.contraction = kappa;
  const double scale = std::max(field_norm(C), kResidualFloor);
  Field<S> X = Field<S>::Zero(C.rows(), C.cols());
  Field<S> r = C;
  for (int k = 1; k <= max_iters; ++k) {
    X += r;
    r -= apply(r);
    rep.iterations = k;
    rep.residual = field_norm(r) / scale;
    if (rep.residual <= tol) {
      rep.X = std::move(X);
      return rep;
    }
  }
  throw SolverFailure("fixed-point Sylvester solve: no convergence after " +
                      std::to_string(max_iters) + " iterations (residual " +
                      std::to_string(rep.residual) + ")");
}

/// Back-substitution for T_P Y + Y T_Q^T = C with T_P, T_Q quasi upper
/// triangular (real Schur forms). Throws on a pivot below the floor.
Eigen::MatrixXd quasi_triangular_solve(const Eigen::MatrixXd& TP, const Eigen::MatrixXd& TQ,
                                       const Eigen::MatrixXd& C, double pivot_floor);

struct SchurFactors {
  Eigen::MatrixXd TP, UP, TQ, UQ;
  double pivot_floor = 0.0;
};

SchurFactors compute_schur_factors(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q);

inline Eigen::MatrixXd schur_backsolve(const SchurFactors& f, const Eigen::MatrixXd& C) {
  const Eigen::MatrixXd Ct = f.UP.transpose() * C * f.UQ;
  const Eigen::MatrixXd Y = quasi_triangular_solve(f.TP, f.TQ, Ct, f.pivot_floor);
  return f.UP * Y * f.UQ.transpose();
}

inline RealField schur_solve_parts(const SchurFactors& f, const RealField& C) {
  return schur_backsolve(f, C);
}

inline ComplexField schur_solve_parts(const SchurFactors& f, const ComplexField& C) {
  // P, Q are real: real and imaginary parts decouple.
  const Eigen::MatrixXd Xr = schur_backsolve(f, C.real());
  const Eigen::MatrixXd Xi = schur_backsolve(f, C.imag());
  return Xr.cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * Xi.cast<std::complex<double>>();
}

/// Dense LU solve of (I (x) P + Q (x) I) vec(X) = vec(C), column-major vec.
Eigen::MatrixXd kron_direct_solve(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                                  const Eigen::MatrixXd& C);

template <typename S>
double relative_residual(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q, const Field<S>& X,
                         const Field<S>& C) {
  const Field<S> r = P * X + X * Q.transpose() - C;
  return field_norm(r) / std::max(field_norm(C), kResidualFloor);
}

}  // namespace detail

template <typename S>
SolveReport<S> solve_fixed_point(const SylvesterProblem<S>& prob) {
  const double kappa = contraction_factor(prob.P, prob.Q);
  if (kappa >= 1.0) {
    throw SolverFailure("fixed-point Sylvester solve: contraction factor " +
                        std::to_string(kappa) + " >= 1; use the Schur backend");
  }
  auto apply = [&](const Field<S>& X) -> Field<S> {
    return (prob.P * X + X * prob.Q.transpose()).eval();
  };
  return detail::defect_iteration(apply, prob.C, kappa, prob.tol, prob.max_iters);
}

template <typename S>
SolveReport<S> solve_schur(const SylvesterProblem<S>& prob) {
  SolveReport<S> rep;
  rep.method = SylvesterMethod::schur;
  const detail::SchurFactors f = detail::compute_schur_factors(prob.P, prob.Q);
  rep.X = detail::schur_solve_parts(f, prob.C);
  rep.iterations = 1;
  rep.residual = detail::relative_residual(prob.P, prob.Q, rep.X, prob.C);
  if (rep.residual > prob.tol) {
    throw SolverFailure("Schur Sylvester solve: residual " + std::to_string(rep.residual) +
                        " exceeds tolerance");
  }
  return rep;
}

template <typename S>
SolveReport<S> solve_kron_direct(const SylvesterProblem<S>& prob) {
  SolveReport<S> rep;
  rep.method = SylvesterMethod::kron_direct;
  if constexpr (scalar_traits<S>::is_complex) {
    const Eigen::MatrixXd Xr = detail::kron_direct_solve(prob.P, prob.Q, prob.C.real());
    const Eigen::MatrixXd Xi = detail::kron_direct_solve(prob.P, prob.Q, prob.C.imag());
    rep.X = Xr.cast<std::complex<double>>() +
            std::complex<double>(0.0, 1.0) * Xi.cast<std::complex<double>>();
  } else {
    rep.X = detail::kron_direct_solve(prob.P, prob.Q, prob.C);
  }
  rep.iterations = 1;
  rep.residual = detail::relative_residual(prob.P, prob.Q, rep.X, prob.C);
  if (rep.residual > prob.tol) {
    throw SolverFailure("Kronecker direct solve: residual " + std::to_string(rep.residual) +
                        " exceeds tolerance");
  }
  return rep;
}

enum class SolverBackend { auto_select, fixed_point, schur, kron_direct };

SolverBackend solver_backend_from_string(const std::string& name);
std::string to_string(SolverBackend b);

/// Production solver for a fixed operand pair (the per-step equation reuses
/// W and A across the whole march). Uses the banded defect iteration when
/// kappa < 0.9, otherwise a cached Schur factorization. The cache is the
/// only shared state and is safe for concurrent readers.
class SylvesterSolver {
 public:
  SylvesterSolver(BandedMatrix P, BandedMatrix Q, double tol = 1e-12, int max_iters = 200,
                  SolverBackend backend = SolverBackend::auto_select);

  double contraction() const { return kappa_; }
  double tolerance() const { return tol_; }

  template <typename S>
  SolveReport<S> solve(const Field<S>& C) const {
    SolverBackend b = backend_;
    if (b == SolverBackend::auto_select) {
      b = (kappa_ < 0.9) ? SolverBackend::fixed_point : SolverBackend::schur;
    }
    switch (b) {
      case SolverBackend::fixed_point: {
        auto apply = [&](const Field<S>& X) -> Field<S> { return apply_pair(P_, Q_, X); };
        return detail::defect_iteration(apply, C, kappa_, tol_, max_iters_);
      }
      case SolverBackend::kron_direct: {
        SylvesterProblem<S> prob{P_.dense(), Q_.dense(), C, tol_, max_iters_};
        return solve_kron_direct(prob);
      }
      default: {
        SolveReport<S> rep;
        rep.method = SylvesterMethod::schur;
        rep.X = detail::schur_solve_parts(factors(), C);
        rep.iterations = 1;
        const Field<S> r = apply_pair(P_, Q_, rep.X) - C;
        rep.residual =
            detail::field_norm(r) / std::max(detail::field_norm(C), detail::kResidualFloor);
        if (rep.residual > tol_) {
          throw SolverFailure("Schur Sylvester solve: residual " + std::to_string(rep.residual) +
                              " exceeds tolerance");
        }
        return rep;
      }
    }
  }

 private:
  const detail::SchurFactors& factors() const;

  BandedMatrix P_, Q_;
  double kappa_;
  double tol_;
  int max_iters_;
  SolverBackend backend_;
  mutable std::mutex mutex_;
  mutable std::unique_ptr<detail::SchurFactors> schur_;
};

}  // namespace sylvbq

#endif
