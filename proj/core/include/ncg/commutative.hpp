#pragma once

// Commutative embeddings a -> sum_i a_i Z_i into L_1 of a sign (real) or
// fourth-root-of-unity (complex) ensemble.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncg/config.hpp"
#include "ncg/estimate.hpp"
#include "ncg/numerics.hpp"

namespace ncg::commutative {

enum class Field { real, complex };
enum class EnsembleMode { exhaustive, monte_carlo };

const char* to_string(Field field);
Field field_from_string(const std::string& name);
const char* to_string(EnsembleMode mode);
EnsembleMode ensemble_mode_from_string(const std::string& name);

/// Z_i uniform on {+-1} (real) or {1, i, -1, -i} (complex), independent.
struct SignEnsemble {
  Field field = Field::real;
  std::size_t n = 0;
  EnsembleMode mode = EnsembleMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;  // monte_carlo only
  std::uint64_t cap = defaults::sign_enumeration_cap;

  /// Members enumerated (exhaustive) or drawn (monte_carlo).
  std::uint64_t size() const;
};

/// E|sum_i a_i Z_i|. Real field requires real a. Throws CapacityError when
/// exhaustive enumeration exceeds the cap.
Estimate embedding_l1_norm(const ComplexVector& a, const SignEnsemble& ens);

/// Value and (sub)gradient G = E[(S/|S|) conj(Z)] of the L_1 norm.
std::pair<double, ComplexVector> embedding_l1_gradient(const ComplexVector& a,
                                                       const SignEnsemble& ens);

/// |a|_inf / |a|_2.
double spread_ratio(const ComplexVector& a);

/// sqrt(2/pi) for the real field, sqrt(pi/4) for the complex field.
double limit_constant(Field field);

struct ProfileRow {
  std::size_t n = 0;
  double spread = 0.0;
  Estimate value;
  double gap = 0.0;  // |value - limit|
};

/// embedding_l1_norm of (1,...,1)/sqrt(n) for each n. `params.n` is ignored;
/// the remaining ensemble settings are reused for every row, each row on its
/// own seed stream. In exhaustive mode with a nonzero `sample_count`, rows
/// too large to enumerate fall back to Monte-Carlo (`value.exact` is false).
std::vector<ProfileRow> besseen_profile(const std::vector<std::size_t>& n_values,
                                        const SignEnsemble& params);

/// True iff the gap column is strictly decreasing.
bool gaps_decreasing(const std::vector<ProfileRow>& rows);

}  // namespace ncg::commutative
