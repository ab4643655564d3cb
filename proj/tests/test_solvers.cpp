#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ncg/clifford.hpp"
#include "ncg/errors.hpp"
#include "ncg/random.hpp"
#include "ncg/solvers.hpp"
#include "oracles.hpp"

namespace {

using namespace ncg;
using namespace ncg::solvers;

// Dense 4-loop contraction.
Complex dense_contract(const NcgTensor& t, const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto d = static_cast<Eigen::Index>(t.d);
  std::vector<Complex> dense(static_cast<std::size_t>(d * d * d * d));
  for (const auto& e : t.entries) dense[((e.i * t.d + e.j) * t.d + e.k) * t.d + e.l] = e.value;
  Complex s = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          s += dense[static_cast<std::size_t>(((i * d + j) * d + k) * d + l)] * a(i, j) *
               std::conj(b(k, l));
  return s;
}

NcgTensor random_sparse(std::size_t d, std::size_t count, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> idx(0, d - 1);
  std::normal_distribution<double> g;
  NcgTensor t;
  t.d = d;
  for (std::size_t c = 0; c < count; ++c) {
    t.entries.push_back({idx(rng), idx(rng), idx(rng), idx(rng), {g(rng), g(rng)}});
  }
  t.canonicalize();
  return t;
}

TEST(Tensor, CanonicalizeMergesDuplicates) {
  NcgTensor t;
  t.d = 2;
  t.entries = {{1, 0, 0, 1, {1, 0}}, {0, 0, 0, 0, {2, 0}}, {1, 0, 0, 1, {-1, 0}}};
  t.canonicalize();
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.entries[0].value, Complex(2, 0));
  EXPECT_NO_THROW(t.validate());
  t.entries.push_back(t.entries[0]);
  EXPECT_THROW(t.validate(), DomainError);
  t.entries = {{2, 0, 0, 0, {1, 0}}};
  EXPECT_THROW(t.validate(), ShapeError);
}

TEST(Bilinear, MatchesDenseOracleAndSesquilinearity) {
  Rng rng = make_rng(101);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto t = random_sparse(3, 40, seed);
    const ComplexMatrix a = random_gaussian_matrix(3, 3, rng);
    const ComplexMatrix b = random_gaussian_matrix(3, 3, rng);
    const ComplexMatrix a2 = random_gaussian_matrix(3, 3, rng);
    const ComplexMatrix b2 = random_gaussian_matrix(3, 3, rng);
    EXPECT_LE(std::abs(evaluate_bilinear(t, a, b) - dense_contract(t, a, b)), 1e-12);
    const Complex alpha(0.3, -1.1);
    EXPECT_LE(std::abs(evaluate_bilinear(t, alpha * a + a2, b) -
                       (alpha * evaluate_bilinear(t, a, b) + evaluate_bilinear(t, a2, b))),
              1e-12);
    EXPECT_LE(std::abs(evaluate_bilinear(t, a, alpha * b + b2) -
                       (std::conj(alpha) * evaluate_bilinear(t, a, b) + evaluate_bilinear(t, a, b2))),
              1e-12);
    EXPECT_LE(std::abs((a.array() * contract_right(t, b).array()).sum() - evaluate_bilinear(t, a, b)),
              1e-12);
    EXPECT_LE(std::abs((contract_left(t, a).array() * b.conjugate().array()).sum() -
                       evaluate_bilinear(t, a, b)),
              1e-12);
  }
}

TEST(Bilinear, TrivialCases) {
  NcgTensor zero;
  zero.d = 2;
  Rng rng = make_rng(1);
  const ComplexMatrix a = random_gaussian_matrix(2, 2, rng);
  EXPECT_EQ(evaluate_bilinear(zero, a, a), Complex(0, 0));
  NcgTensor one;
  one.d = 2;
  one.entries = {{0, 0, 0, 0, {1, 0}}};
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(evaluate_bilinear(one, id, id), Complex(1, 0));
  EXPECT_THROW(evaluate_bilinear(one, ComplexMatrix::Identity(3, 3), id), ShapeError);
}

TEST(Adjoint, DualityIdentity) {
  Rng rng = make_rng(103);
  const auto op = random_operator(3, 4, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector a = random_gaussian_vector(3, rng);
    const ComplexMatrix m = random_gaussian_matrix(4, 4, rng);
    const ComplexVector u = adjoint_apply(op, m);
    const Complex lhs = u.dot(a);  // sum conj(u_i) a_i
    const Complex rhs = (m.adjoint() * op.apply(a)).trace() / 4.0;
    EXPECT_LE(std::abs(lhs - rhs), 1e-10);
  }
  EXPECT_TRUE(adjoint_apply(op, ComplexMatrix::Zero(4, 4)).isZero(0.0));
  EXPECT_THROW(adjoint_apply(op, ComplexMatrix::Zero(3, 3)), ShapeError);
}

TEST(Adjoint, OrthogonalImagesGiveBasisVector) {
  const auto op = clifford_operator(4);
  const ComplexVector u = adjoint_apply(op, op.images[0]);
  ComplexVector e = ComplexVector::Zero(4);
  e(0) = 1.0;
  EXPECT_LE((u - e).norm(), 1e-14);
}

TEST(Lift, ConsistentWithAdjoint) {
  Rng rng = make_rng(107);
  for (const auto& op : {clifford_operator(3), random_operator(2, 3, 8),
                         sign_operator(commutative::Field::real, 2)}) {
    const auto t = lift_little_to_big(op);
    EXPECT_NO_THROW(t.validate());
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_gaussian_matrix(op.d, op.d, rng);
      const ComplexMatrix b = random_gaussian_matrix(op.d, op.d, rng);
      const Complex want = adjoint_apply(op, b).dot(adjoint_apply(op, a));
      EXPECT_LE(std::abs(evaluate_bilinear(t, a, b) - want), 1e-12);
    }
  }
}

TEST(Lift, RankOneAndZero) {
  LittleOperator op;
  op.n = 1;
  op.d = 2;
  op.images = {oracle::pauli_x()};
  const auto t = lift_little_to_big(op);
  Rng rng = make_rng(109);
  const ComplexMatrix a = random_gaussian_matrix(2, 2, rng);
  const ComplexMatrix b = random_gaussian_matrix(2, 2, rng);
  const Complex ua = (op.images[0].adjoint() * a).trace() / 2.0;
  const Complex ub = (op.images[0].adjoint() * b).trace() / 2.0;
  EXPECT_LE(std::abs(evaluate_bilinear(t, a, b) - ua * std::conj(ub)), 1e-12);

  op.images = {ComplexMatrix::Zero(2, 2)};
  EXPECT_TRUE(lift_little_to_big(op).entries.empty());
  EXPECT_THROW(lift_little_to_big(random_operator(2, 8, 1), 64), CapacityError);
}

TEST(Lift, SignOperatorHasCommutativeSupport) {
  const auto op = sign_operator(commutative::Field::real, 2);
  const auto t = lift_little_to_big(op);
  for (const auto& e : t.entries) {
    EXPECT_EQ(e.i, e.j);
    EXPECT_EQ(e.k, e.l);
  }
  // M_ij = d^{-2} sum_s Z_s(i) Z_s(j).
  const auto d = op.d;
  for (const auto& e : t.entries) {
    Complex m = 0;
    for (const auto& f : op.images) m += std::conj(f(e.i, e.i)) * f(e.k, e.k);
    EXPECT_LE(std::abs(e.value - m / double(d * d)), 1e-15);
  }
}

TEST(Solver, SingleEntryIsModulus) {
  NcgTensor t;
  t.d = 1;
  t.entries = {{0, 0, 0, 0, {0.6, -0.8}}};
  SolverOptions opt;
  opt.seed = 1;
  const auto res = ncg_opt_lower_bound(t, opt);
  EXPECT_NEAR(res.value, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(res.a(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(res.b(0, 0)), 1.0, 1e-12);
}

TEST(Solver, CommutativeIdentityMatchesGrid) {
  const auto t = tensor_from_matrix(ComplexMatrix::Identity(2, 2));
  // Grid over diagonal phase unitaries A = diag(e^{ia1}, e^{ia2}), same for B.
  double grid = 0.0;
  const int steps = 24;
  for (int a1 = 0; a1 < steps; ++a1)
    for (int a2 = 0; a2 < steps; ++a2)
      for (int b2 = 0; b2 < steps; ++b2) {
        ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
        a(0, 0) = std::polar(1.0, 2 * M_PI * a1 / steps);
        a(1, 1) = std::polar(1.0, 2 * M_PI * a2 / steps);
        b(0, 0) = 1.0;
        b(1, 1) = std::polar(1.0, 2 * M_PI * b2 / steps);
        grid = std::max(grid, std::abs(evaluate_bilinear(t, a, b)));
      }
  const auto res = ncg_opt_lower_bound(t);
  EXPECT_NEAR(grid, 2.0, 1e-12);
  EXPECT_NEAR(res.value, grid, 1e-3);
}

TEST(Solver, MonotoneAndUnitary) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto t = random_sparse(4, 60, 20 + seed);
    SolverOptions opt;
    opt.restarts = 8;
    opt.seed = seed;
    const auto res = ncg_opt_lower_bound(t, opt);
    EXPECT_TRUE(res.monotone);
    for (const auto& run : res.runs) {
      for (std::size_t i = 1; i < run.half_steps.size(); ++i) {
        EXPECT_GE(run.half_steps[i], run.half_steps[i - 1] - 1e-12);
      }
    }
    EXPECT_LE(res.unitarity_residual_a, 1e-9);
    EXPECT_LE(res.unitarity_residual_b, 1e-9);
    EXPECT_NEAR(std::abs(evaluate_bilinear(t, res.a, res.b)), res.value, 1e-10);
  }
}

TEST(Solver, LiftedValueIsSquaredNorm) {
  for (const auto& op : {clifford_operator(2), clifford_operator(3), random_operator(3, 4, 4),
                         sign_operator(commutative::Field::real, 2)}) {
    const auto norm = little_norm_lower_bound(op, 16, 200, 2);
    const auto res = ncg_opt_lower_bound(lift_little_to_big(op));
    EXPECT_GE(res.value, norm.value * norm.value - 1e-4);
    // |F(a)|_{S_1} <= sum |a_i| |images_i|_{S_1}, so opt <= sum_i |F_i|_{S_1}^2.
    double bound = 0.0;
    for (const auto& f : op.images) bound += std::pow(oracle::trace_norm(f), 2);
    EXPECT_LE(res.value, bound + 1e-6);
  }
}

TEST(LittleNorm, CliffordMapHasUnitNorm) {
  const auto res = little_norm_lower_bound(clifford_operator(3), 8, 200, 1);
  EXPECT_NEAR(res.value, 1.0, 1e-8);
  EXPECT_NEAR(res.a.norm(), 1.0, 1e-12);
}

}  // namespace
