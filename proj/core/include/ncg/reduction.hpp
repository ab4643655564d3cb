#pragma once

// Reduction from Smooth Label Cover to the norm of a linear operator.
//
// The domain is the subspace H of vertex-indexed fields b = (b_v) in
// L_2(V, C^n) whose projected block sums agree across every edge:
//
//   sum_{i in pi_eu^{-1}(j)} b_u(i) = sum_{i in pi_ev^{-1}(j)} b_v(i)   for all e, j.
//
// The operator sends b to (f(b_v))_v for an embedding backend f, and its norm
// on b is E_v ||f(b_v)||. Satisfying assignments give unit fields in H with
// norm eta; fields with norm above tau + 4 eps can be decoded into labels.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ncg/clifford.hpp"
#include "ncg/commutative.hpp"
#include "ncg/config.hpp"
#include "ncg/labelcover.hpp"
#include "ncg/numerics.hpp"

namespace ncg::reduction {

enum class BackendKind { clifford, comm_real, comm_complex };

const char* to_string(BackendKind kind);
BackendKind backend_from_string(const std::string& name);

/// A linear embedding f : C^n -> X with |f(a)| <= |a|_2 and |f(e_i)| = eta.
struct EmbeddingBackend {
  BackendKind kind = BackendKind::clifford;
  std::size_t n = 0;
  double eta = 1.0;
  double tau = 0.0;
  bool real_only = false;  // accepts only real vectors (comm_real)
  std::function<double(const ComplexVector&)> norm;
  /// Value and real gradient; used by the ascent heuristic.
  std::function<std::pair<double, ComplexVector>(const ComplexVector&)> norm_and_gradient;
  std::string description;
};

struct BackendOptions {
  /// Clifford phase family. Exhaustive when 4^n fits the cap, otherwise
  /// pairwise independent, unless set explicitly.
  bool auto_phase_mode = true;
  clifford::PhaseMode phase_mode = clifford::PhaseMode::exhaustive;
  std::uint64_t phase_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = defaults::phase_enumeration_cap;
};

EmbeddingBackend make_backend(BackendKind kind, std::size_t n, const BackendOptions& options = {});

/// Sparse rows indexed by (edge e, small label j) = e * k + j; columns by
/// (vertex v, big label i) = v * n + i; coefficients +-1.
struct ConstraintSystem {
  std::size_t vertices = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> row_entries;

  RealMatrix dense() const;
};

/// b_v(i) stored flat at v * n + i. Norm convention |b|^2 = E_v |b_v|^2.
struct VertexVectorField {
  std::size_t vertices = 0;
  std::size_t n = 0;
  ComplexVector values;

  static VertexVectorField zero(std::size_t vertices, std::size_t n);

  auto vertex(std::size_t v) { return values.segment(static_cast<Eigen::Index>(v * n),
                                                     static_cast<Eigen::Index>(n)); }
  auto vertex(std::size_t v) const {
    return values.segment(static_cast<Eigen::Index>(v * n), static_cast<Eigen::Index>(n));
  }
  double l2_norm() const;
};

/// max |row . b| over all constraints.
double constraint_residual(const ConstraintSystem& cs, const VertexVectorField& b);
/// Residual restricted to the rows of one edge.
double edge_residual(const ConstraintSystem& cs, const VertexVectorField& b, std::size_t edge);

/// Orthonormal basis of H under <a, b> = E_v <a_v, b_v>. The constraint
/// matrix is real, so a real basis spans H over C; coordinates are then
/// Euclidean: |field(c)|_{L_2} = |c|_2.
struct SubspaceBasis {
  std::size_t vertices = 0;
  std::size_t n = 0;
  RealMatrix basis;  // (vertices * n) x dimension
  std::size_t rank = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
  VertexVectorField field(const ComplexVector& coordinates) const;
  ComplexVector coordinates(const VertexVectorField& b) const;
  /// Orthogonal projection onto H.
  VertexVectorField project(const VertexVectorField& b) const;
};

ConstraintSystem build_constraints(const labelcover::LabelCoverInstance& inst);
SubspaceBasis subspace_basis(const ConstraintSystem& cs);

/// b_v = e_{A(v)}.
VertexVectorField assignment_to_field(const labelcover::LabelCoverInstance& inst,
                                      const labelcover::Assignment& a);

/// E_v |f(b_v)|.
double apply_norm_F(const VertexVectorField& b, const EmbeddingBackend& backend);

struct CompletenessCertificate {
  bool in_subspace = false;
  double residual = 0.0;
  double value = 0.0;
  double eta = 1.0;
  bool pass = false;
};

CompletenessCertificate completeness_certificate(const labelcover::LabelCoverInstance& inst,
                                                 const labelcover::Assignment& a,
                                                 const EmbeddingBackend& backend);

struct DecoderParams {
  double eps = defaults::decoder_eps;
  double delta = 1.4142135623730951 * defaults::decoder_eps;
  std::size_t t = 1;
  std::uint64_t seed = 0;

  double beta() const { return delta * delta * eps * eps * eps; }
  /// Throws DomainError unless 0 < eps < 1, t >= 1, and beta <= delta <= 1.
  void validate() const;
};

struct DecodeStats {
  std::size_t vertices = 0;
  std::size_t v0_count = 0;
  double v0_fraction = 0.0;
  std::vector<bool> in_v0;
  double beta = 0.0;
  double a1_bound = 0.0;  // 16 / (eps^2 beta^2)
  double a2_bound = 0.0;  // 16 t^2 / (eps^2 beta^2)
  std::size_t max_a1 = 0;
  std::size_t max_a2 = 0;
  bool sizes_within_bounds = true;
  double min_linf_in_v0 = 0.0;  // >= beta for every decoded vertex
  double input_norm = 0.0;      // |b|_{L_2} before normalization
  double satisfied_fraction = 0.0;
};

struct DecodeResult {
  labelcover::Assignment assignment;
  DecodeStats stats;
};

/// Randomized label decoding. b is rescaled to unit L_2 norm; then
/// V_0 = {v : |b_v|_4 > delta eps, |b_v|_2 <= 1/eps}, each v in V_0 draws a
/// uniform label from A_1 = {i : |b_v(i)| >= beta / 4} and every other
/// vertex gets label 0. Throws InvariantViolation if some A_1 is empty.
DecodeResult decode(const VertexVectorField& b, const DecoderParams& params,
                    const labelcover::LabelCoverInstance& inst);

struct AscentOptions {
  std::size_t restarts = defaults::ascent_restarts;
  std::size_t iterations = defaults::ascent_iterations;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
};

struct AscentResult {
  double value = 0.0;
  VertexVectorField field;
  bool degenerate = false;  // H = {0}
  std::size_t dimension = 0;
  std::size_t iterations = 0;        // total over restarts
  double upper_bound = 1.0;          // analytic sup for unit fields
  std::vector<double> restart_values;
};

/// Best E_v |f(b_v)| found over unit b in H by normalized gradient (power
/// method) ascent from random starts.
AscentResult operator_norm_lower_bound(const labelcover::LabelCoverInstance& inst,
                                       const EmbeddingBackend& backend,
                                       const AscentOptions& options = {});
AscentResult operator_norm_lower_bound(const SubspaceBasis& basis,
                                       const EmbeddingBackend& backend,
                                       const AscentOptions& options = {});

}  // namespace ncg::reduction
