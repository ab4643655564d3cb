#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "ncg/config.hpp"
#include "ncg/random.hpp"

namespace ncg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Thin SVD `M = U diag(sigma) V^*` with sigma sorted descending.
/// Values below `svd_zero_relative * sigma_max` are flushed to zero.
struct SvdResult {
  ComplexMatrix left;
  RealVector singular_values;
  ComplexMatrix right;
};

SvdResult svd(const ComplexMatrix& m);

/// Singular values only, descending, small values flushed to zero.
RealVector singular_values(const ComplexMatrix& m);

// Schatten norms. S_1 is normalized by the dimension: d^-1 Tr sqrt(M^* M).
// The un-normalized trace norm is intentionally not exposed.
double schatten1_norm(const ComplexMatrix& m);
double schatten_inf_norm(const ComplexMatrix& m);

/// Normalized inner product <X, Y> = d^-1 Tr(X^* Y), the pairing under which
/// normalized S_1 and S_inf are dual.
Complex normalized_inner(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix block_diag(std::span<const ComplexMatrix> blocks);

/// [[0, A], [A^*, 0]]; eigenvalues are +-sigma_i(A).
ComplexMatrix embed_complex_as_hermitian(const ComplexMatrix& a);

/// [[Re B, Im B], [-Im B, Re B]] for Hermitian B; same spectrum, doubled
/// multiplicities. Throws DomainError if B is not Hermitian to `tolerance`.
ComplexMatrix embed_hermitian_as_real_symmetric(
    const ComplexMatrix& b, double tolerance = defaults::hermitian_tolerance);

/// Real-linear map C^{dxd} -> real symmetric 4d x 4d preserving S_1.
ComplexMatrix rho(const ComplexMatrix& a);

struct PolarResult {
  ComplexMatrix unitary;
  bool degenerate = false;  // input was all-zero; unitary is the identity
};

/// Unitary U maximizing Re Tr(U^* M); equals U_svd V_svd^*.
PolarResult polar_unitary(const ComplexMatrix& m);

/// max |entry| of A^* A - I.
double unitarity_residual(const ComplexMatrix& u);

double max_abs_entry(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance);

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector norms on C^n.
double l2_norm(const ComplexVector& a);
double l4_norm(const ComplexVector& a);
double linf_norm(const ComplexVector& a);

/// Entrywise product a o b.
ComplexVector hadamard(const ComplexVector& a, const ComplexVector& b);

/// Entries i.i.d. standard complex Gaussian (E|z|^2 = 1).
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
ComplexVector random_gaussian_vector(std::size_t n, Rng& rng);

/// Haar-distributed unitary via QR of a Gaussian matrix with phase correction.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

}  // namespace ncg
