#pragma once

// Little-to-big lifting and an alternating heuristic for
//
//   opt(T) = sup_{A, B unitary} | sum T_ijkl A_ij conj(B_kl) |.
//
// Matrix inner products are <X, Y> = d^{-1} Tr(X* Y), vectors use
// <u, a> = sum conj(u_i) a_i. With u = F*(A) the lifted tensor satisfies
// T(A, B) = sum_i u_i(A) conj(u_i(B)), so opt(T) = |F|^2 where |F| is the
// norm of F : l_2^n -> normalized S_1^d.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ncg/clifford.hpp"
#include "ncg/commutative.hpp"
#include "ncg/config.hpp"
#include "ncg/numerics.hpp"

namespace ncg::solvers {

struct TensorEntry {
  std::size_t i = 0, j = 0, k = 0, l = 0;
  Complex value{};
};

/// Sparse T_ijkl. Entries are kept sorted by (i, j, k, l) without duplicates.
struct NcgTensor {
  std::size_t d = 0;
  std::vector<TensorEntry> entries;

  /// Sorts, merges duplicate quadruples, and drops exact zeros.
  void canonicalize();
  /// Throws ShapeError for out-of-range indices; DomainError for duplicates.
  void validate() const;
};

/// T_iijj = M_ij: the commutative Grothendieck problem as a special case.
NcgTensor tensor_from_matrix(const ComplexMatrix& m);

/// F(a) = sum_i a_i images[i].
struct LittleOperator {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<ComplexMatrix> images;

  ComplexMatrix apply(const ComplexVector& a) const;
  void validate() const;
};

/// Images C_1, ..., C_n (d = 2^{ceil(n/2)}).
LittleOperator clifford_operator(std::size_t n);
/// Images f(e_i) = direct sum over the family of w_i C_i.
LittleOperator dictator_operator(const clifford::PhaseFamily& family);
/// Images diag(Z_i(w)) over every sign (real) or phase (complex) pattern w;
/// the normalized S_1 norm of F(a) is then E|sum a_i Z_i|.
LittleOperator sign_operator(commutative::Field field, std::size_t n);
/// Gaussian images scaled by 1/sqrt(n).
LittleOperator random_operator(std::size_t n, std::size_t d, std::uint64_t seed);

/// u with <u, a> = <A, F(a)> for all a, i.e. u_i = d^{-1} Tr(images[i]* A).
ComplexVector adjoint_apply(const LittleOperator& op, const ComplexMatrix& a);

/// Throws CapacityError when n d^2 exceeds the cap.
NcgTensor lift_little_to_big(const LittleOperator& op,
                             std::size_t cap = defaults::lift_cap);

/// sum T_ijkl A_ij conj(B_kl).
Complex evaluate_bilinear(const NcgTensor& t, const ComplexMatrix& a, const ComplexMatrix& b);

/// M_B(i, j) = sum_kl T_ijkl conj(B_kl), so T(A, B) = sum_ij A_ij M_B(i, j).
ComplexMatrix contract_right(const NcgTensor& t, const ComplexMatrix& b);
/// N_A(k, l) = sum_ij T_ijkl A_ij, so T(A, B) = sum_kl N_A(k, l) conj(B_kl).
ComplexMatrix contract_left(const NcgTensor& t, const ComplexMatrix& a);

struct SolverOptions {
  std::size_t restarts = defaults::ncg_restarts;
  std::size_t iterations = defaults::ncg_iterations;
  double tolerance = defaults::ncg_tolerance;
  std::uint64_t seed = 0;
};

struct SolverRun {
  std::vector<double> half_steps;  // |T(A, B)| after every half-step
  bool monotone = true;
  double value = 0.0;
};

struct SolverResult {
  double value = 0.0;
  ComplexMatrix a;
  ComplexMatrix b;
  std::size_t iterations = 0;  // total half-step pairs over restarts
  std::size_t restarts = 0;
  bool monotone = true;
  double unitarity_residual_a = 0.0;
  double unitarity_residual_b = 0.0;
  std::vector<SolverRun> runs;
};

/// Alternating polar maximization from Haar-random starts. Fixing B, the
/// best A is conj(polar(M_B)) with value sum sigma(M_B); fixing A, the best B
/// is polar(N_A). Values are non-decreasing across half-steps.
SolverResult ncg_opt_lower_bound(const NcgTensor& t, const SolverOptions& options = {});

struct LittleNormResult {
  double value = 0.0;
  ComplexVector a;
  std::vector<double> restart_values;
};

/// Lower bound on sup_{|a|_2 = 1} |F(a)|_{S_1} by the power iteration
/// a <- F*(polar(F(a))) / |.|, which never decreases the objective.
LittleNormResult little_norm_lower_bound(const LittleOperator& op, std::size_t restarts,
                                         std::size_t iterations, std::uint64_t seed);

}  // namespace ncg::solvers
