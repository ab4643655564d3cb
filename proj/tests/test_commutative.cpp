#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ncg/commutative.hpp"
#include "ncg/errors.hpp"
#include "ncg/random.hpp"
#include "oracles.hpp"

namespace {

using namespace ncg;
using namespace ncg::commutative;

SignEnsemble exhaustive(Field field, std::size_t n) {
  SignEnsemble e;
  e.field = field;
  e.n = n;
  return e;
}

ComplexVector uniform(std::size_t n) {
  return ComplexVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(double(n)));
}

TEST(SignEmbedding, BasisVectorsHaveUnitNorm) {
  for (Field f : {Field::real, Field::complex}) {
    ComplexVector e = ComplexVector::Zero(4);
    e(2) = 1.0;
    EXPECT_NEAR(embedding_l1_norm(e, exhaustive(f, 4)).value, 1.0, 1e-15);
  }
}

TEST(SignEmbedding, ExhaustiveHandValues) {
  EXPECT_NEAR(embedding_l1_norm(uniform(2), exhaustive(Field::real, 2)).value, 1.0 / std::sqrt(2.0),
              1e-12);
  EXPECT_NEAR(embedding_l1_norm(uniform(2), exhaustive(Field::complex, 2)).value,
              (2.0 + 2.0 * std::sqrt(2.0)) / (4.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(embedding_l1_norm(uniform(4), exhaustive(Field::real, 4)).value, 0.75, 1e-12);
}

TEST(SignEmbedding, MatchesEnumerationOracles) {
  Rng rng = make_rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const ComplexVector c = random_gaussian_vector(n, rng);
    const ComplexVector r = c.real().cast<Complex>();
    std::vector<double> rv(n);
    for (std::size_t j = 0; j < n; ++j) rv[j] = r(static_cast<Eigen::Index>(j)).real();
    EXPECT_NEAR(embedding_l1_norm(r, exhaustive(Field::real, n)).value, oracle::real_sign_l1(rv),
                1e-12);
    EXPECT_NEAR(embedding_l1_norm(c, exhaustive(Field::complex, n)).value, oracle::phase_l1(c),
                1e-12);
  }
  for (std::size_t n : {1u, 2u, 4u, 16u}) {
    EXPECT_NEAR(embedding_l1_norm(uniform(n), exhaustive(Field::real, n)).value,
                oracle::real_uniform_l1(n), 1e-12);
  }
}

TEST(SignEmbedding, NormIsDominatedByL2) {
  Rng rng = make_rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector a = random_gaussian_vector(5, rng);
    EXPECT_LE(embedding_l1_norm(a, exhaustive(Field::complex, 5)).value, a.norm() + 1e-12);
  }
}

TEST(SignEmbedding, Errors) {
  ComplexVector a = uniform(3);
  a(1) = Complex(0, 1);
  EXPECT_THROW(embedding_l1_norm(a, exhaustive(Field::real, 3)), DomainError);
  EXPECT_THROW(embedding_l1_norm(uniform(2), exhaustive(Field::real, 3)), ShapeError);
  EXPECT_THROW(embedding_l1_norm(uniform(11), exhaustive(Field::complex, 11)), CapacityError);
  SignEnsemble mc = exhaustive(Field::real, 3);
  mc.mode = EnsembleMode::monte_carlo;
  EXPECT_THROW(embedding_l1_norm(uniform(3), mc), DomainError);
}

TEST(SignEmbedding, MonteCarloIsSeededAndNearExact) {
  SignEnsemble mc = exhaustive(Field::complex, 6);
  mc.mode = EnsembleMode::monte_carlo;
  mc.sample_count = 200000;
  mc.seed = 5;
  const auto a = embedding_l1_norm(uniform(6), mc);
  const auto b = embedding_l1_norm(uniform(6), mc);
  EXPECT_EQ(a.value, b.value);
  const double exact = embedding_l1_norm(uniform(6), exhaustive(Field::complex, 6)).value;
  EXPECT_LE(std::abs(a.value - exact), 4.0 * a.std_error);
  EXPECT_GT(a.std_error, 0.0);
}

TEST(SignEmbedding, GradientMatchesFiniteDifferences) {
  Rng rng = make_rng(79);
  const ComplexVector a = random_gaussian_vector(4, rng);
  const auto ens = exhaustive(Field::complex, 4);
  const auto [value, grad] = embedding_l1_gradient(a, ens);
  EXPECT_NEAR(value, embedding_l1_norm(a, ens).value, 1e-13);
  const double h = 1e-6;
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
      ComplexVector p = a, m = a;
      p(j) += h * dir;
      m(j) -= h * dir;
      const double fd = (embedding_l1_norm(p, ens).value - embedding_l1_norm(m, ens).value) / (2 * h);
      EXPECT_NEAR(fd, (std::conj(grad(j)) * dir).real(), 1e-6);
    }
  }
}

TEST(Profile, RealGapsShrink) {
  const auto rows = besseen_profile({1, 2, 4, 16}, exhaustive(Field::real, 0));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[1].value.value, 0.70711, 1e-5);
  EXPECT_NEAR(rows[0].spread, 1.0, 1e-15);
  EXPECT_NEAR(rows[3].spread, 0.25, 1e-15);
  EXPECT_TRUE(gaps_decreasing(rows));
  for (const auto& r : rows) {
    EXPECT_NEAR(r.value.value, oracle::real_uniform_l1(r.n), 1e-12);
    EXPECT_TRUE(r.value.exact);
  }
}

TEST(Profile, ComplexGapIsNotMonotone) {
  // Exact values from multinomial enumeration; odd n sits farther from the
  // limit than the preceding even n.
  const auto rows = besseen_profile({2, 3, 4, 5}, exhaustive(Field::complex, 0));
  const double want[] = {0.853553390593, 0.917135620168, 0.876639918178, 0.903072527726};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].value.value, want[i], 1e-11);
    EXPECT_NEAR(rows[i].value.value, oracle::phase_l1(uniform(rows[i].n)), 1e-12);
  }
  EXPECT_GT(rows[3].gap, rows[2].gap);
  EXPECT_FALSE(gaps_decreasing(rows));
}

TEST(Profile, FallsBackToMonteCarlo) {
  SignEnsemble params = exhaustive(Field::real, 0);
  params.sample_count = 50000;
  params.seed = 3;
  const auto rows = besseen_profile({4, 64}, params);
  EXPECT_TRUE(rows[0].value.exact);
  EXPECT_FALSE(rows[1].value.exact);
  EXPECT_NEAR(rows[1].value.value, oracle::real_uniform_l1(64), 5.0 * rows[1].value.std_error);
}

TEST(Profile, LimitConstants) {
  EXPECT_NEAR(limit_constant(Field::real), 0.7978845608, 1e-10);
  EXPECT_NEAR(limit_constant(Field::complex), 0.8862269255, 1e-10);
  EXPECT_THROW(spread_ratio(ComplexVector::Zero(3)), DomainError);
}

}  // namespace
