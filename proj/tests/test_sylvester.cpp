#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "sylvbq/sylvester.hpp"

using namespace sylvbq;

namespace {

RealField random_field(int n, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  RealField X(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) X(i, j) = d(rng);
  }
  return X;
}

// Near-identity operand pair with contraction factor about `target`.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> near_identity_pair(int n, double target,
                                                               std::mt19937& rng) {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd P = 0.5 * I + random_field(n, rng);
  Eigen::MatrixXd Q = 0.5 * I + random_field(n, rng);
  const double kappa = contraction_factor(P, Q);
  const double s = target / kappa;
  P = 0.5 * I + s * (P - 0.5 * I);
  Q = 0.5 * I + s * (Q - 0.5 * I);
  return {P, Q};
}

}  // namespace

TEST_SUITE_BEGIN("sylvester");

TEST_CASE("contraction factor basics") {
  const Eigen::MatrixXd I5 = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  CHECK(contraction_factor(I5, I5) == 0.0);

  std::mt19937 rng(3);
  const auto [P, Q] = near_identity_pair(5, 0.37, rng);
  CHECK(contraction_factor(P, Q) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(contraction_factor(P, Q) == doctest::Approx(contraction_factor(Q, P)).epsilon(1e-15));

  // scheme operands at a strongly scaled-down step
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 1e-4, 0.2);
  const SchemeMatrices m = build_scheme_matrices(c, 11);
  CHECK(contraction_factor(m.W, m.A) < 1.0);
  CHECK(contraction_factor(m.W.dense(), m.A.dense()) ==
        doctest::Approx(contraction_factor(m.W, m.A)).epsilon(1e-13));
}

TEST_CASE("fixed point: trivial instances converge in one sweep") {
  const int n = 4;
  const Eigen::MatrixXd H = 0.5 * Eigen::MatrixXd::Identity(n, n);

  SylvesterProblem<double> zero{H, H, RealField::Zero(n, n), 1e-12, 50};
  const auto rz = solve_fixed_point(zero);
  CHECK(rz.X.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rz.iterations == 1);

  std::mt19937 rng(5);
  SylvesterProblem<double> ident{H, H, random_field(n, rng), 1e-12, 50};
  const auto ri = solve_fixed_point(ident);
  CHECK((ri.X - ident.C).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ri.iterations == 1);
}

TEST_CASE("fixed point refuses kappa >= 1 and signals non-convergence") {
  const int n = 4;
  std::mt19937 rng(9);
  const auto [P, Q] = near_identity_pair(n, 1.6, rng);
  SylvesterProblem<double> bad{P, Q, random_field(n, rng), 1e-12, 50};
  CHECK_THROWS_WITH_AS(solve_fixed_point(bad), doctest::Contains("Schur"), SolverFailure);

  const auto [P2, Q2] = near_identity_pair(n, 0.6, rng);
  SylvesterProblem<double> slow{P2, Q2, random_field(n, rng), 1e-14, 2};
  CHECK_THROWS_AS(solve_fixed_point(slow), SolverFailure);
}

TEST_CASE("fixed point matches the Kronecker oracle in the contractive regime") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    const auto [P, Q] = near_identity_pair(n, 0.4, rng);
    SylvesterProblem<double> prob{P, Q, random_field(n, rng), 1e-12, 200};
    const auto fp = solve_fixed_point(prob);
    const auto kd = solve_kron_direct(prob);
    CHECK((fp.X - kd.X).norm() / std::max(1.0, kd.X.norm()) < 1e-8);
    CHECK(fp.residual <= prob.tol);
    CHECK(kd.residual <= prob.tol);
  }
}

TEST_CASE("fixed point residuals are dominated by the contraction envelope") {
  std::mt19937 rng(29);
  const int n = 6;
  const double kappa_target = 0.5;
  for (int trial = 0; trial < 5; ++trial) {
    const auto [P, Q] = near_identity_pair(n, kappa_target, rng);
    const double kappa = contraction_factor(P, Q);
    const RealField C = random_field(n, rng);
    const double c_norm = C.norm();
    // reference defect recursion, residual r_{k+1} = (I - L) r_k
    RealField r = C;
    const double envelope_scale = c_norm * (1.0 + kappa) / (1.0 - kappa);
    for (int k = 1; k <= 25; ++k) {
      r = (r - (P * r + r * Q.transpose())).eval();
      CHECK(r.norm() <= std::pow(kappa, k) * envelope_scale * (1.0 + 1e-12));
    }
    // the solver's reported iteration count is consistent with kappa decay
    SylvesterProblem<double> prob{P, Q, C, 1e-10, 200};
    const auto rep = solve_fixed_point(prob);
    const int predicted =
        static_cast<int>(std::ceil(std::log(prob.tol / 2.0) / std::log(kappa))) + 2;
    CHECK(rep.iterations <= predicted);
    CHECK(rep.contraction == doctest::Approx(kappa).epsilon(1e-12));
  }
}

TEST_CASE("Schur backend: diagonal closed form") {
  Eigen::MatrixXd P = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  Eigen::MatrixXd Q = Eigen::Vector2d(3.0, 4.0).asDiagonal();
  SylvesterProblem<double> prob{P, Q, RealField::Ones(2, 2), 1e-12, 10};
  const auto rep = solve_schur(prob);
  CHECK(rep.X(0, 0) == doctest::Approx(1.0 / 4.0).epsilon(1e-14));
  CHECK(rep.X(0, 1) == doctest::Approx(1.0 / 5.0).epsilon(1e-14));
  CHECK(rep.X(1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(rep.X(1, 1) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));

  SylvesterProblem<double> zero{P, Q, RealField::Zero(2, 2), 1e-12, 10};
  CHECK(solve_schur(zero).X.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Schur backend matches the oracle on generic instances") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    // generic nonsymmetric operands exercise 2x2 Schur blocks
    Eigen::MatrixXd P = random_field(n, rng) + 3.0 * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Q = random_field(n, rng) + 3.0 * Eigen::MatrixXd::Identity(n, n);
    SylvesterProblem<double> prob{P, Q, random_field(n, rng), 1e-10, 10};
    const auto sc = solve_schur(prob);
    const auto kd = solve_kron_direct(prob);
    CHECK((sc.X - kd.X).norm() / std::max(1.0, kd.X.norm()) < 1e-8);
    CHECK(sc.residual <= prob.tol);
  }
}

TEST_CASE("Schur backend signals a singular pencil") {
  Eigen::MatrixXd P = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  Eigen::MatrixXd Q = Eigen::Vector2d(-1.0, 5.0).asDiagonal();  // 1 + (-1) = 0
  SylvesterProblem<double> prob{P, Q, RealField::Ones(2, 2), 1e-12, 10};
  CHECK_THROWS_AS(solve_schur(prob), SolverFailure);
}

TEST_CASE("kron_direct: round trips, identity case, order guard") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.2);
  const SchemeMatrices m = build_scheme_matrices(c, 3);
  std::mt19937 rng(53);
  const RealField X0 = random_field(3, rng);
  const RealField C = apply_pair(m.W, m.A, X0);
  SylvesterProblem<double> prob{m.W.dense(), m.A.dense(), C, 1e-10, 10};
  const auto rep = solve_kron_direct(prob);
  CHECK((rep.X - X0).norm() < 1e-10 * std::max(1.0, X0.norm()));

  const Eigen::MatrixXd H = 0.5 * Eigen::MatrixXd::Identity(3, 3);
  SylvesterProblem<double> ident{H, H, random_field(3, rng), 1e-12, 10};
  const auto ri = solve_kron_direct(ident);
  CHECK((ri.X - ident.C).cwiseAbs().maxCoeff() < 1e-14);

  SylvesterProblem<double> big{Eigen::MatrixXd::Identity(33, 33),
                               Eigen::MatrixXd::Identity(33, 33), RealField::Zero(33, 33),
                               1e-12, 10};
  CHECK_THROWS_AS(solve_kron_direct(big), std::invalid_argument);
}

TEST_CASE("all three backends agree pairwise at order 6") {
  std::mt19937 rng(67);
  for (int seed = 0; seed < 10; ++seed) {
    const auto [P, Q] = near_identity_pair(6, 0.45, rng);
    SylvesterProblem<double> prob{P, Q, random_field(6, rng), 1e-12, 200};
    const auto fp = solve_fixed_point(prob);
    const auto sc = solve_schur(prob);
    const auto kd = solve_kron_direct(prob);
    const double scale = std::max(1.0, kd.X.norm());
    CHECK((fp.X - sc.X).norm() / scale < 1e-8);
    CHECK((fp.X - kd.X).norm() / scale < 1e-8);
    CHECK((sc.X - kd.X).norm() / scale < 1e-8);
  }
}

TEST_CASE("discrete operator stays invertible under the l = h^3 rule") {
  std::mt19937 rng(71);
  for (const double h : {0.1, 0.05, 0.025}) {
    const CoefficientSet c = compute_coefficients(0.25, 0.01, h * h * h, h);
    const SchemeMatrices m = build_scheme_matrices(c, 10);
    SylvesterProblem<double> prob{m.W.dense(), m.A.dense(), random_field(10, rng), 1e-10, 10};
    CHECK_NOTHROW(solve_kron_direct(prob));
  }
}

TEST_CASE("complex right-hand sides split into real solves") {
  std::mt19937 rng(83);
  const auto [P, Q] = near_identity_pair(5, 0.3, rng);
  ComplexField C(5, 5);
  const RealField Cr = random_field(5, rng);
  const RealField Ci = random_field(5, rng);
  C.real() = Cr;
  C.imag() = Ci;

  SylvesterProblem<std::complex<double>> prob{P, Q, C, 1e-12, 200};
  const auto fp = solve_fixed_point(prob);
  const auto sc = solve_schur(prob);
  const auto kd = solve_kron_direct(prob);

  SylvesterProblem<double> pr{P, Q, Cr, 1e-12, 200};
  SylvesterProblem<double> pi{P, Q, Ci, 1e-12, 200};
  const auto xr = solve_kron_direct(pr);
  const auto xi = solve_kron_direct(pi);
  CHECK((fp.X.real() - xr.X).norm() < 1e-8);
  CHECK((fp.X.imag() - xi.X).norm() < 1e-8);
  CHECK((sc.X - kd.X).norm() < 1e-8);
}

TEST_CASE("SylvesterSolver auto policy and concurrent reads") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.2);
  const SchemeMatrices m = build_scheme_matrices(c, 11);
  const SylvesterSolver solver(m.W, m.A);
  CHECK(solver.contraction() < 0.9);

  std::mt19937 rng(97);
  const RealField C = random_field(11, rng);
  const auto rep = solver.solve(C);
  CHECK(rep.method == SylvesterMethod::fixed_point);
  CHECK(rep.residual <= solver.tolerance());

  const SylvesterSolver schur_only(m.W, m.A, 1e-12, 200, SolverBackend::schur);
  RealField out1, out2;
  std::thread t1([&] { out1 = schur_only.solve(C).X; });
  std::thread t2([&] { out2 = schur_only.solve(C).X; });
  t1.join();
  t2.join();
  CHECK((out1 - out2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((out1 - rep.X).norm() / std::max(1.0, rep.X.norm()) < 1e-10);
}

TEST_SUITE_END();
