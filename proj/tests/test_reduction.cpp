#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ncg/clifford.hpp"
#include "ncg/errors.hpp"
#include "ncg/labelcover.hpp"
#include "ncg/random.hpp"
#include "ncg/reduction.hpp"
#include "oracles.hpp"

namespace {

using namespace ncg;
using namespace ncg::reduction;
using labelcover::Assignment;
using labelcover::LabelCoverInstance;

LabelCoverInstance constant_edge() {
  LabelCoverInstance inst;
  inst.vertices = 2;
  inst.n = 2;
  inst.k = 1;
  inst.t = 2;
  inst.edges.push_back({0, 1, {0, 0}, {0, 0}});
  return inst;
}

// Oracle rank via full-pivot LU, a different factorization from the library.
std::size_t lu_rank(const RealMatrix& m) {
  Eigen::FullPivLU<RealMatrix> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<std::size_t>(lu.rank());
}

TEST(Constraints, SingleConstantEdge) {
  const auto cs = build_constraints(constant_edge());
  EXPECT_EQ(cs.rows, 1u);
  EXPECT_EQ(cs.cols, 4u);
  const RealMatrix want = (RealMatrix(1, 4) << 1, 1, -1, -1).finished();
  EXPECT_EQ(cs.dense(), want);
  const auto basis = subspace_basis(cs);
  EXPECT_EQ(basis.dimension(), 3u);
  EXPECT_EQ(basis.rank, 1u);
}

TEST(Constraints, IdentityProjectionsTieVertices) {
  const auto inst = labelcover::generate_identity(6, 2, 3);
  const auto cs = build_constraints(inst);
  EXPECT_EQ(cs.rows, inst.edges.size() * inst.k);
  EXPECT_EQ(cs.cols, inst.vertices * inst.n);
  const auto basis = subspace_basis(cs);
  EXPECT_EQ(basis.dimension(), 3u);
  EXPECT_EQ(basis.dimension(), cs.cols - lu_rank(cs.dense()));
  for (std::size_t c = 0; c < basis.dimension(); ++c) {
    ComplexVector coords = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
    coords(static_cast<Eigen::Index>(c)) = 1.0;
    const auto b = basis.field(coords);
    for (std::size_t v = 1; v < inst.vertices; ++v) {
      EXPECT_LE((b.vertex(v) - b.vertex(0)).norm(), 1e-12);
    }
  }
}

TEST(Constraints, EmptySystemIsFullSpace) {
  LabelCoverInstance inst;
  inst.vertices = 3;
  inst.n = 2;
  inst.k = 2;
  inst.t = 1;
  const auto basis = subspace_basis(build_constraints(inst));
  EXPECT_EQ(basis.dimension(), 6u);
}

TEST(Subspace, OrthonormalUnderVertexAverage) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = labelcover::generate_random(8, 3, 4, 2, 2, seed);
    const auto cs = build_constraints(inst);
    const auto basis = subspace_basis(cs);
    EXPECT_EQ(basis.dimension(), cs.cols - lu_rank(cs.dense()));
    const RealMatrix gram =
        basis.basis.transpose() * basis.basis / static_cast<double>(inst.vertices);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    EXPECT_LE((gram - RealMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-10);
    for (Eigen::Index c = 0; c < dim; ++c) {
      ComplexVector coords = ComplexVector::Zero(dim);
      coords(c) = 1.0;
      const auto b = basis.field(coords);
      EXPECT_LE(constraint_residual(cs, b), 1e-10);
      EXPECT_NEAR(b.l2_norm(), 1.0, 1e-12);
    }
  }
}

TEST(Subspace, ProjectionIsIdempotentAndFeasible) {
  const auto inst = labelcover::generate_random(8, 3, 4, 2, 2, 11);
  const auto cs = build_constraints(inst);
  const auto basis = subspace_basis(cs);
  Rng rng = make_rng(12);
  VertexVectorField b{inst.vertices, inst.n, random_gaussian_vector(inst.vertices * inst.n, rng)};
  const auto p = basis.project(b);
  EXPECT_LE(constraint_residual(cs, p), 1e-10);
  EXPECT_LE((basis.project(p).values - p.values).norm(), 1e-10);
}

TEST(AssignmentField, PlantedIsFeasibleBrokenIsNot) {
  const auto planted = labelcover::generate_planted(8, 3, 6, 3, 2, 7);
  const auto& inst = planted.instance;
  const auto cs = build_constraints(inst);
  const auto b = assignment_to_field(inst, planted.planted);
  EXPECT_DOUBLE_EQ(b.l2_norm(), 1.0);
  EXPECT_LE(constraint_residual(cs, b), 1e-12);

  Assignment broken = planted.planted;
  const auto& e0 = inst.edges[0];
  // Relabel u within a different preimage block, breaking edge 0.
  for (labelcover::Label i = 0; i < inst.n; ++i) {
    if (e0.pi_u[i] != e0.pi_u[broken.labels[e0.u]]) {
      broken.labels[e0.u] = i;
      break;
    }
  }
  const auto bb = assignment_to_field(inst, broken);
  EXPECT_DOUBLE_EQ(bb.l2_norm(), 1.0);
  EXPECT_GT(edge_residual(cs, bb, 0), 0.5);
}

TEST(Backends, ContractOnBasisVectors) {
  for (auto kind : {BackendKind::clifford, BackendKind::comm_real, BackendKind::comm_complex}) {
    const auto be = make_backend(kind, 4);
    Rng rng = make_rng(31);
    for (std::size_t i = 0; i < 4; ++i) {
      ComplexVector e = ComplexVector::Zero(4);
      e(static_cast<Eigen::Index>(i)) = 1.0;
      EXPECT_NEAR(be.norm(e), be.eta, 1e-12) << to_string(kind);
    }
    for (int trial = 0; trial < 10; ++trial) {
      ComplexVector a = random_gaussian_vector(4, rng);
      if (be.real_only) a = a.real().cast<Complex>();
      EXPECT_LE(be.norm(a), a.norm() + 1e-12);
    }
  }
  EXPECT_EQ(backend_from_string("comm_real"), BackendKind::comm_real);
  EXPECT_THROW(backend_from_string("nope"), DomainError);
}

TEST(ApplyNorm, HandValues) {
  const auto inst = labelcover::generate_identity(4, 2, 4);
  const auto be = make_backend(BackendKind::clifford, 4);
  EXPECT_DOUBLE_EQ(apply_norm_F(VertexVectorField::zero(4, 4), be), 0.0);
  auto b = VertexVectorField::zero(4, 4);
  b.values.setConstant(0.5);
  const double spread = apply_norm_F(b, be);
  EXPECT_LE(spread, std::sqrt((1.0 + 0.5) / 2.0) + 1e-12);
  EXPECT_NEAR(spread, be.norm(ComplexVector::Constant(4, 0.5)), 1e-12);
  // Oracle: average SVD trace norm of C(a o w) over all 256 phase patterns.
  const auto gens = clifford::make_generators(4);
  const Complex w[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  double total = 0.0;
  for (int idx = 0; idx < 256; ++idx) {
    ComplexMatrix c = ComplexMatrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) c += 0.5 * w[(idx >> (2 * j)) & 3] * gens.matrices[j];
    total += oracle::trace_norm(c);
  }
  EXPECT_NEAR(spread, total / 256.0, 1e-10);
  EXPECT_THROW(apply_norm_F(VertexVectorField::zero(4, 3), be), ShapeError);
}

TEST(Certificate, PlantedPassesUnderEveryBackend) {
  const auto planted = labelcover::generate_planted(8, 3, 6, 3, 2, 7);
  for (auto kind : {BackendKind::clifford, BackendKind::comm_real, BackendKind::comm_complex}) {
    const auto cert = completeness_certificate(planted.instance, planted.planted,
                                               make_backend(kind, planted.instance.n));
    EXPECT_TRUE(cert.pass) << to_string(kind);
    EXPECT_TRUE(cert.in_subspace);
    EXPECT_NEAR(cert.value, 1.0, 1e-12);
  }
}

TEST(Certificate, BrokenAssignmentFails) {
  const auto planted = labelcover::generate_planted(8, 3, 6, 3, 2, 7);
  const auto& inst = planted.instance;
  Assignment broken = planted.planted;
  const auto& e0 = inst.edges[0];
  for (labelcover::Label i = 0; i < inst.n; ++i) {
    if (e0.pi_u[i] != e0.pi_u[broken.labels[e0.u]]) {
      broken.labels[e0.u] = i;
      break;
    }
  }
  const auto cert = completeness_certificate(inst, broken, make_backend(BackendKind::clifford, 6));
  EXPECT_FALSE(cert.in_subspace);
  EXPECT_FALSE(cert.pass);
}

TEST(Decoder, PlantedFieldIsRecovered) {
  const auto planted = labelcover::generate_planted(8, 3, 6, 3, 2, 7);
  const auto& inst = planted.instance;
  DecoderParams p;
  p.eps = 0.5;
  p.delta = 0.5;
  p.t = inst.t;
  p.seed = 1;
  EXPECT_DOUBLE_EQ(p.beta(), 0.03125);
  const auto res = decode(assignment_to_field(inst, planted.planted), p, inst);
  EXPECT_EQ(res.assignment.labels, planted.planted.labels);
  EXPECT_EQ(res.stats.v0_count, inst.vertices);
  EXPECT_EQ(res.stats.max_a1, 1u);
  EXPECT_DOUBLE_EQ(res.stats.satisfied_fraction, 1.0);
  EXPECT_TRUE(res.stats.sizes_within_bounds);
}

TEST(Decoder, SingleSpikeAndZeroField) {
  const auto inst = labelcover::generate_identity(4, 2, 3);
  auto b = VertexVectorField::zero(4, 3);
  b.values(2 * 3 + 1) = 2.0;  // vertex 2, label 1
  DecoderParams p;
  p.t = 1;
  // After normalization b_2 = 2 e_1 has |b_2|_2 = 2 <= 1/eps.
  const auto res = decode(b, p, inst);
  EXPECT_EQ(res.stats.v0_count, 1u);
  EXPECT_TRUE(res.stats.in_v0[2]);
  EXPECT_EQ(res.assignment.labels[2], 1u);
  const auto zero = decode(VertexVectorField::zero(4, 3), p, inst);
  EXPECT_EQ(zero.stats.v0_count, 0u);
  EXPECT_EQ(zero.assignment.labels, std::vector<labelcover::Label>(4, 0));
}

TEST(Decoder, InvariantsOnRandomSubspaceFields) {
  const auto planted = labelcover::generate_planted(10, 4, 5, 3, 2, 5);
  const auto& inst = planted.instance;
  const auto basis = subspace_basis(build_constraints(inst));
  DecoderParams p;
  p.t = inst.t;
  Rng rng = make_rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    p.seed = static_cast<std::uint64_t>(trial);
    const auto c = random_gaussian_vector(basis.dimension(), rng);
    const auto res = decode(basis.field(c), p, inst);
    EXPECT_TRUE(res.stats.sizes_within_bounds);
    if (res.stats.v0_count > 0) EXPECT_GE(res.stats.min_linf_in_v0, res.stats.beta);
  }
}

TEST(Decoder, DeterministicGivenSeed) {
  const auto planted = labelcover::generate_planted(10, 4, 5, 3, 2, 5);
  const auto& inst = planted.instance;
  const auto basis = subspace_basis(build_constraints(inst));
  Rng rng = make_rng(7);
  const auto b = basis.field(random_gaussian_vector(basis.dimension(), rng));
  DecoderParams p;
  p.t = inst.t;
  p.seed = 42;
  EXPECT_EQ(decode(b, p, inst).assignment.labels, decode(b, p, inst).assignment.labels);
}

TEST(Decoder, ParameterValidation) {
  const auto inst = labelcover::generate_identity(4, 2, 3);
  DecoderParams p;
  p.eps = 1.5;
  EXPECT_THROW(decode(VertexVectorField::zero(4, 3), p, inst), DomainError);
  p.eps = 0.3;
  p.delta = 2.0;
  EXPECT_THROW(decode(VertexVectorField::zero(4, 3), p, inst), DomainError);
  p.delta = 0.4;
  p.t = 0;
  EXPECT_THROW(decode(VertexVectorField::zero(4, 3), p, inst), DomainError);
}

TEST(Ascent, IdentityInstanceReachesOne) {
  const auto inst = labelcover::generate_identity(6, 2, 3);
  AscentOptions opt;
  opt.seed = 3;
  const auto res = operator_norm_lower_bound(inst, make_backend(BackendKind::clifford, 3), opt);
  EXPECT_FALSE(res.degenerate);
  EXPECT_NEAR(res.value, 1.0, 1e-4);
  EXPECT_LE(res.value, res.upper_bound + 1e-6);
  EXPECT_NEAR(res.field.l2_norm(), 1.0, 1e-10);
}

TEST(Ascent, DegenerateSubspace) {
  // Two labels forced equal to zero: each vertex's block sum agrees with a
  // neighbour's empty block.
  LabelCoverInstance inst;
  inst.vertices = 2;
  inst.n = 1;
  inst.k = 2;
  inst.t = 1;
  inst.edges.push_back({0, 1, {0}, {1}});
  const auto basis = subspace_basis(build_constraints(inst));
  EXPECT_EQ(basis.dimension(), 0u);
  const auto res = operator_norm_lower_bound(basis, make_backend(BackendKind::clifford, 1));
  EXPECT_TRUE(res.degenerate);
  EXPECT_DOUBLE_EQ(res.value, 0.0);
}

TEST(Ascent, BeatsGridSearchOnThreeDimensionalSubspace) {
  const auto inst = constant_edge();
  const auto basis = subspace_basis(build_constraints(inst));
  const auto be = make_backend(BackendKind::clifford, 2);
  // Grid over real-and-imaginary unit coordinates in the three-dimensional H.
  double grid_best = 0.0;
  const int steps = 12;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j < 2 * steps; ++j) {
      for (int ph = 0; ph < 4; ++ph) {
        const double th = M_PI * i / steps;
        const double phi = M_PI * j / steps;
        ComplexVector c(3);
        c << std::cos(th), std::sin(th) * std::cos(phi) * std::polar(1.0, ph * M_PI / 4),
            std::sin(th) * std::sin(phi);
        grid_best = std::max(grid_best, apply_norm_F(basis.field(c), be));
      }
    }
  }
  AscentOptions opt;
  opt.seed = 9;
  const auto res = operator_norm_lower_bound(basis, be, opt);
  EXPECT_GE(res.value, grid_best - 1e-9);
  EXPECT_LE(res.value, 1.0 + 1e-6);
}

TEST(Ascent, RealBackendAndUpperBound) {
  const auto planted = labelcover::generate_planted(8, 3, 4, 2, 2, 13);
  for (auto kind : {BackendKind::clifford, BackendKind::comm_real, BackendKind::comm_complex}) {
    AscentOptions opt;
    opt.restarts = 4;
    opt.seed = 1;
    const auto res = operator_norm_lower_bound(planted.instance, make_backend(kind, 4), opt);
    EXPECT_LE(res.value, res.upper_bound + 1e-6) << to_string(kind);
    EXPECT_GE(res.value, 0.5);
    if (kind == BackendKind::comm_real) {
      EXPECT_DOUBLE_EQ(res.field.values.imag().cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

}  // namespace
