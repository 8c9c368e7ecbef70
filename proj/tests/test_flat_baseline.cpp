#include <doctest.h>

#include <random>
#include <set>
#include <unsupported/Eigen/KroneckerProduct>

#include "sylvbq/flat_baseline.hpp"
#include "sylvbq/problems.hpp"

using namespace sylvbq;

TEST_SUITE_BEGIN("flat-baseline");

TEST_CASE("lexicographic index map") {
  const FlatIndexMap ix(10);
  CHECK(ix.N == 120);
  CHECK(ix.flat(2, 3) == 25);
  CHECK(ix.row_of(25) == 2);
  CHECK(ix.col_of(25) == 3);

  // bijection over the whole grid
  std::set<int> seen;
  for (int j = 0; j <= 10; ++j) {
    for (int m = 0; m <= 10; ++m) seen.insert(ix.flat(j, m));
  }
  CHECK(seen.size() == 121);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 120);

  // the index sets are the m = J and m = 0 masks
  const auto lam = ix.lambda();
  for (int n = 1; 11 * n - 1 <= ix.N; ++n) {
    CHECK(ix.on_lambda(11 * n - 1));
  }
  CHECK(lam.front() == 10);
  CHECK(lam.back() == 120);
  const auto lt = ix.lambda_tilde();
  for (int k : lt) {
    CHECK(ix.col_of(k) == 0);
    CHECK(k % 11 == 0);
  }
}

TEST_CASE("flatten round trip") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  RealField X(7, 7);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) X(i, j) = d(rng);
  }
  const Eigen::VectorXd v = flatten(X);
  CHECK(v.size() == 49);
  CHECK(v(2 * 7 + 3) == X(2, 3));
  const RealField Y = unflatten(v, 6);
  CHECK((X - Y).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(unflatten(v, 7), std::invalid_argument);
}

TEST_CASE("Kronecker-derived flat matrices match the dense Kronecker forms") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.5);
  const int J = 4;
  const FlatMatrices f = build_flat_matrices(c, J, FlatVariant::kronecker);
  const int n = J + 1;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd A = build_banded(c.a1, c.a2, n).dense();
  const Eigen::MatrixXd B = build_banded(c.b1, c.b2, n).dense();
  const Eigen::MatrixXd R = build_banded(-2.0, 1.0, n).dense();

  const Eigen::MatrixXd A_ref =
      Eigen::kroneckerProduct(I, A).eval() + Eigen::kroneckerProduct(A, I).eval();
  const Eigen::MatrixXd B_ref =
      Eigen::kroneckerProduct(I, B).eval() + Eigen::kroneckerProduct(B, I).eval();
  const Eigen::MatrixXd R_ref = Eigen::kroneckerProduct(R, I).eval();
  CHECK((f.A_flat.dense() - A_ref).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.B_flat.dense() - B_ref).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.R_flat.dense() - R_ref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("published row-0 entries hold in both variants") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.2);
  const int J = 6;
  for (const auto variant : {FlatVariant::kronecker, FlatVariant::appendix_literal}) {
    const FlatMatrices f = build_flat_matrices(c, J, variant);
    CHECK(f.A_flat(0, 0) == 2.0 * c.a1);
    CHECK(f.A_flat(0, 1) == 2.0 * c.a2);
    CHECK(f.A_flat(0, J + 1) == 2.0 * c.a2);
    CHECK(f.B_flat(0, 0) == 2.0 * c.b1);
    CHECK(f.R_flat(0, 0) == -2.0);
    CHECK(f.R_flat(0, J + 1) == 2.0);
  }
}

TEST_CASE("alpha = 0 collapses the flat operator to the identity") {
  const CoefficientSet c = compute_coefficients(0.0, 0.01, 0.01, 0.2);
  const FlatMatrices f = build_flat_matrices(c, 4, FlatVariant::kronecker);
  const Eigen::MatrixXd D = f.A_flat.dense();
  CHECK((D - Eigen::MatrixXd::Identity(25, 25)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("flat row sums") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.005, 0.25);
  const FlatMatrices f = build_flat_matrices(c, 6, FlatVariant::kronecker);
  const Eigen::VectorXd sa = f.A_flat.row_sums();
  const Eigen::VectorXd sb = f.B_flat.row_sums();
  const Eigen::VectorXd sr = f.R_flat.row_sums();
  for (int i = 0; i < sa.size(); ++i) {
    CHECK(std::abs(sa(i) - 1.0) < 1e-13);
    CHECK(std::abs(sb(i) - 2.0) < 1e-13);
    CHECK(std::abs(sr(i)) < 1e-13);
  }
}

TEST_CASE("literal-vs-Kronecker discrepancy report pinpoints the block seams") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.2);
  const int J = 5;
  const FlatIndexMap ix(J);
  const FlatMatrices lit = build_flat_matrices(c, J, FlatVariant::appendix_literal);
  const FlatMatrices kron = build_flat_matrices(c, J, FlatVariant::kronecker);
  const auto diffs = flat_discrepancies(lit, kron);
  CHECK(!diffs.empty());
  // every discrepancy is an unassigned near off-diagonal doubling at an
  // interior block seam: (k, k+1) with k on the m=0 mask (k > 0), or
  // (k, k-1) with k on the m=J mask (k < N)
  for (const auto& d : diffs) {
    CHECK(d.literal == 0.0);
    const bool super_seam = (d.j == d.i + 1) && ix.on_lambda_tilde(d.i) && d.i != 0;
    const bool sub_seam = (d.j == d.i - 1) && ix.on_lambda(d.i) && d.i != ix.N;
    CHECK((super_seam || sub_seam));
    CHECK((d.kronecker == 2.0 * c.a2 || d.kronecker == 2.0 * c.b2));
  }
  // R_flat agrees exactly: the published far-coupling rules are complete
  std::vector<FlatDiscrepancy> r_diffs;
  FlatMatrices lit_r_only{J, lit.R_flat, lit.R_flat, lit.R_flat};
  FlatMatrices kron_r_only{J, kron.R_flat, kron.R_flat, kron.R_flat};
  CHECK(flat_discrepancies(lit_r_only, kron_r_only).empty());
}

TEST_CASE("banded LU agrees with a dense solve") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const int n = 40;
  BandedMatrix M(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - 3); j <= std::min(n - 1, i + 3); ++j) {
      M.at(i, j) = d(rng) + (i == j ? 8.0 : 0.0);
    }
  }
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = d(rng);
  const BandedLU lu(M);
  const Eigen::VectorXd x = lu.solve(rhs);
  const Eigen::VectorXd x_ref = M.dense().partialPivLu().solve(rhs);
  CHECK((x - x_ref).norm() / x_ref.norm() < 1e-12);
}

TEST_CASE("flat stepping preserves constants and zeros") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.25);
  const int J = 8;
  const int nn = (J + 1) * (J + 1);
  for (const auto mode : {FlatLinearSolver::banded_lu, FlatLinearSolver::dense_lu_per_step}) {
    const FlatOperator op(c, J, FlatVariant::kronecker, mode);
    FlatState st;
    st.n = 1;
    const double value = 3.0;
    st.U_prev = st.U_curr = Eigen::VectorXd::Constant(nn, value);
    st.V_prev = st.V_curr = Eigen::VectorXd::Constant(nn, value * value);
    st.F_prev = st.F_curr = Eigen::VectorXd::Constant(nn, value * value);
    for (int k = 0; k < 10; ++k) step_flat(st, op, nullptr);
    CHECK((st.U_curr - Eigen::VectorXd::Constant(nn, value)).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((st.V_curr - Eigen::VectorXd::Constant(nn, value * value)).cwiseAbs().maxCoeff() <
          1e-10);

    FlatState zs;
    zs.n = 1;
    zs.U_prev = zs.U_curr = zs.V_prev = zs.V_curr = zs.F_prev = zs.F_curr =
        Eigen::VectorXd::Zero(nn);
    for (int k = 0; k < 10; ++k) step_flat(zs, op, nullptr);
    CHECK(zs.U_curr.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("flat and Lyapunov paths march the same trajectory") {
  const ManufacturedCase<double> mc = example1(0.01);
  const SchemeParams params{0.25, 0.01};
  const int J = 8;
  const double l = 1e-3;
  const ProblemSetup<double> setup = make_setup(mc, J, 0.0, l, 20, params,
                                                SourceForm::consistent);
  const CoefficientSet c = compute_coefficients(setup.grid, params);
  const SchemeMatrices mats = build_scheme_matrices(c, setup.grid.order());
  const SylvesterSolver solver(mats.W, mats.A);
  StepState<double> st = initialize(setup, InitMode::exact, mats, c);
  const FlatOperator op(c, J, FlatVariant::kronecker, FlatLinearSolver::banded_lu);
  FlatState fs = flatten_state(st);

  for (int k = 1; k < 20; ++k) {
    RealField G = sample_field<double>(setup.grid, setup.source, setup.grid.time(k));
    const Eigen::VectorXd Gf = flatten(G);
    advance(st, mats, c, solver, &G);
    step_flat(fs, op, &Gf);
    const double err = (flatten(st.U_curr) - fs.U_curr).norm() /
                       std::max(1.0, fs.U_curr.norm());
    CHECK(err < 1e-8);
  }
}

TEST_CASE("flat blow-up guard") {
  const CoefficientSet c = compute_coefficients(0.25, 0.01, 0.01, 0.25);
  const FlatOperator op(c, 6, FlatVariant::kronecker, FlatLinearSolver::banded_lu);
  FlatState st;
  st.n = 1;
  const int nn = 49;
  st.U_prev = st.U_curr = Eigen::VectorXd::Constant(nn, 5.0);
  st.V_prev = st.V_curr = Eigen::VectorXd::Constant(nn, 25.0);
  st.F_prev = st.F_curr = Eigen::VectorXd::Constant(nn, 25.0);
  CHECK_THROWS_AS(step_flat(st, op, nullptr, /*blowup_guard=*/1.0), BlowupError);
}

TEST_SUITE_END();
