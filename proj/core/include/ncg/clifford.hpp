#pragma once

// Anticommuting Pauli-string generators and the phase-averaged trace-norm
// embedding built from them.
//
// C(a) = sum_j a_j C_j maps C^n into 2^m x 2^m matrices (m = ceil(n/2)) with
//
//   ||C(a)||_{S_1} = 1/2 sqrt(|a|^2 + 2 L(a)) + 1/2 sqrt(|a|^2 - 2 L(a)),
//
// where L(a) is the area of the parallelogram spanned by Re(a) and Im(a).
// The embedding f(a) is the direct sum of C(a o w) over phase vectors w;
// because S_1 is normalized, its norm is the average over w and the direct
// sum is never materialized except for tiny n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncg/config.hpp"
#include "ncg/estimate.hpp"
#include "ncg/numerics.hpp"

namespace ncg::clifford {

struct CliffordGenerators {
  std::size_t n = 0;    // logical coordinates
  std::size_t m = 0;    // ceil(n / 2) tensor factors
  std::size_t dim = 0;  // 2^m
  std::vector<ComplexMatrix> matrices;  // 2m generators, C_1 .. C_{2m}
};

/// C_{2j-1} = Z^{(j-1)} (x) X (x) I^{(m-j)},  C_{2j} = Z^{(j-1)} (x) Y (x) I^{(m-j)}.
CliffordGenerators make_generators(std::size_t n,
                                   std::size_t dense_cap = defaults::dense_generator_cap);

struct GeneratorCheck {
  bool exact_entries = true;  // every entry in {0, +-1, +-i}
  bool hermitian = true;
  bool unitary = true;
  bool traceless = true;
  bool anticommuting = true;  // C_i C_j + C_j C_i = 2 delta_ij I, exactly
  bool pass() const { return exact_entries && hermitian && unitary && traceless && anticommuting; }
};

/// Exact structural checks over all 2m generators.
GeneratorCheck check_generators(const CliffordGenerators& gens);

/// C(a) = a_1 C_1 + ... + a_n C_n.
ComplexMatrix clifford_map(const ComplexVector& a, const CliffordGenerators& gens);

/// Area of the parallelogram spanned by Re(a), Im(a).
double parallelogram(const ComplexVector& a);

/// Closed-form normalized trace norm of C(a).
double trace_norm_formula(const ComplexVector& a);

/// Value and real gradient G of the closed form, with
/// d/dt formula(a + t h) = Re <G, h> where it is differentiable. Near the set
/// |a|^2 = 2 L(a) the gradient is capped rather than infinite.
std::pair<double, ComplexVector> trace_norm_formula_gradient(const ComplexVector& a);

/// sqrt((|a|_2^2 + |a|_4^2) / 2), the upper bound on the embedding norm.
double embedding_bound(const ComplexVector& a);

/// Completeness/soundness constants of the embedding.
struct EmbeddingSpec {
  std::size_t n = 0;
  double tau = 0.7071067811865476;  // 2^{-1/2}
  double eta = 1.0;
  /// Spread threshold: |f(a)| > (tau + eps)|a| forces |a|_4 > delta(eps) |a|.
  double delta(double eps) const { return 1.4142135623730951 * eps; }
};

enum class PhaseMode { exhaustive, pairwise_independent, monte_carlo };

const char* to_string(PhaseMode mode);
PhaseMode phase_mode_from_string(const std::string& name);

/// A uniform distribution over members w in {1, i, -1, -i}^n, each member
/// represented by exponents e_j in Z_4 with w_j = i^{e_j}.
///
/// * exhaustive: all 4^n vectors.
/// * pairwise_independent: w_j = i^{<c_j, u> + b_j mod 4} for u ranging over
///   Z_4^r, where c_j is the binary expansion of j+1 (r = bit length of n).
///   Distinct c_j are independent mod 2, so every coordinate pair is exactly
///   uniform over the 16 phase pairs. The family has 4^r <= 4 n^2 members.
/// * monte_carlo: `sample_count` i.i.d. uniform members; member k is drawn
///   from its own seeded stream.
class PhaseFamily {
 public:
  static PhaseFamily exhaustive(std::size_t n,
                                std::uint64_t cap = defaults::phase_enumeration_cap);
  static PhaseFamily pairwise_independent(std::size_t n, std::uint64_t seed);
  static PhaseFamily monte_carlo(std::size_t n, std::uint64_t sample_count,
                                 std::uint64_t seed);

  PhaseMode mode() const { return mode_; }
  std::size_t n() const { return n_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t seed() const { return seed_; }
  double weight() const { return 1.0 / static_cast<double>(size_); }
  bool exact() const { return mode_ != PhaseMode::monte_carlo; }

  /// Fills `exponents` (length n) for member `index`.
  void member(std::uint64_t index, std::span<std::uint8_t> exponents) const;
  ComplexVector phases(std::uint64_t index) const;

 private:
  PhaseFamily(PhaseMode mode, std::size_t n, std::uint64_t size, std::uint64_t seed)
      : mode_(mode), n_(n), size_(size), seed_(seed) {}

  PhaseMode mode_;
  std::size_t n_;
  std::uint64_t size_;
  std::uint64_t seed_;
  std::size_t hash_bits_ = 0;              // r, pairwise mode
  std::vector<std::uint8_t> shifts_;       // b_j, pairwise mode
};

PhaseFamily build_phase_family(std::size_t n, PhaseMode mode, std::uint64_t seed,
                               std::uint64_t sample_count = 0,
                               std::uint64_t cap = defaults::phase_enumeration_cap);

/// Multiplies a by the phases of a family member: (a o w)_j = a_j i^{e_j}.
ComplexVector apply_phases(const ComplexVector& a, std::span<const std::uint8_t> exponents);

/// ||f(a)||_{S_1} = E_w trace_norm_formula(a o w). Monte-Carlo families
/// attach a standard error.
Estimate dictator_embedding_norm(const ComplexVector& a, const PhaseFamily& family);

/// Value and gradient of a -> ||f(a)||_{S_1} under the family.
std::pair<double, ComplexVector> dictator_embedding_gradient(const ComplexVector& a,
                                                             const PhaseFamily& family);

/// 4 E_w[L(a o w)^2]; equals |a|_2^4 - |a|_4^4 for exact families.
double randphase_second_moment(const ComplexVector& a, const PhaseFamily& family);

/// Dense direct sum of C(a o w) over the family. Only for n <= 3.
ComplexMatrix materialize_embedding(const ComplexVector& a, const PhaseFamily& family,
                                    const CliffordGenerators& gens);

}  // namespace ncg::clifford
