#include "ncg/commutative.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/random.hpp"

namespace ncg::commutative {

const char* to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw DomainError("unknown field '" + name + "'");
}

const char* to_string(EnsembleMode mode) {
  return mode == EnsembleMode::exhaustive ? "exhaustive" : "monte_carlo";
}

EnsembleMode ensemble_mode_from_string(const std::string& name) {
  if (name == "exhaustive") return EnsembleMode::exhaustive;
  if (name == "monte_carlo" || name == "mc") return EnsembleMode::monte_carlo;
  throw DomainError("unknown ensemble mode '" + name + "'");
}

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::size_t bits_per_coordinate(Field field) { return field == Field::real ? 1 : 2; }

std::uint64_t exhaustive_size(const SignEnsemble& ens) {
  const std::size_t bits = bits_per_coordinate(ens.field) * ens.n;
  if (bits >= 64 || (std::uint64_t{1} << bits) > ens.cap) {
    throw CapacityError(std::string("SignEnsemble: ") + to_string(ens.field) +
                        " enumeration over n = " + std::to_string(ens.n) +
                        " exceeds cap " + std::to_string(ens.cap));
  }
  return std::uint64_t{1} << bits;
}

void validate(const ComplexVector& a, const SignEnsemble& ens) {
  if (static_cast<std::size_t>(a.size()) != ens.n || ens.n == 0) {
    throw ShapeError("SignEnsemble: vector length " + std::to_string(a.size()) +
                     " does not match n = " + std::to_string(ens.n));
  }
  if (ens.field == Field::real) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i).imag() != 0.0) {
        throw DomainError("SignEnsemble: complex entry with real field");
      }
    }
  }
  if (ens.mode == EnsembleMode::monte_carlo && ens.sample_count == 0) {
    throw DomainError("SignEnsemble: monte_carlo needs samples");
  }
}

// Visits every member (exhaustive) or every sample (monte_carlo) as a list
// of Z_4 exponents; the real field uses exponents {0, 2}.
template <typename Visit>
void for_each_member(const SignEnsemble& ens, Visit&& visit) {
  std::vector<std::uint8_t> e(ens.n);
  const std::size_t bits = bits_per_coordinate(ens.field);
  if (ens.mode == EnsembleMode::exhaustive) {
    const std::uint64_t count = exhaustive_size(ens);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      for (std::size_t j = 0; j < ens.n; ++j) {
        const auto digit = static_cast<std::uint8_t>((idx >> (bits * j)) & ((1u << bits) - 1));
        e[j] = ens.field == Field::real ? static_cast<std::uint8_t>(2 * digit) : digit;
      }
      visit(std::as_const(e));
    }
    return;
  }
  const std::uint64_t chunks = (ens.sample_count + kChunk - 1) / kChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    Rng rng = make_rng(ens.seed, c);
    const std::uint64_t end = std::min(ens.sample_count, (c + 1) * kChunk);
    for (std::uint64_t s = c * kChunk; s < end; ++s) {
      std::uint64_t word = 0;
      std::size_t left = 0;
      for (std::size_t j = 0; j < ens.n; ++j) {
        if (left < bits) {
          word = rng();
          left = 64;
        }
        const auto digit = static_cast<std::uint8_t>(word & ((1u << bits) - 1));
        word >>= bits;
        left -= bits;
        e[j] = ens.field == Field::real ? static_cast<std::uint8_t>(2 * digit) : digit;
      }
      visit(std::as_const(e));
    }
  }
}

Complex combine(const ComplexVector& a, const std::vector<std::uint8_t>& e) {
  Complex s{};
  for (std::size_t j = 0; j < e.size(); ++j) {
    s += a(static_cast<Eigen::Index>(j)) * kPhase[e[j]];
  }
  return s;
}

}  // namespace

std::uint64_t SignEnsemble::size() const {
  return mode == EnsembleMode::exhaustive ? exhaustive_size(*this) : sample_count;
}

Estimate embedding_l1_norm(const ComplexVector& a, const SignEnsemble& ens) {
  validate(a, ens);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  for_each_member(ens, [&](const std::vector<std::uint8_t>& e) {
    const double v = std::abs(combine(a, e));
    sum += v;
    sum_sq += v * v;
    ++count;
  });
  Estimate est;
  const auto n = static_cast<double>(count);
  est.value = sum / n;
  est.members = count;
  est.exact = ens.mode == EnsembleMode::exhaustive;
  if (!est.exact && count > 1) {
    const double var = std::max(0.0, (sum_sq - n * est.value * est.value) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

std::pair<double, ComplexVector> embedding_l1_gradient(const ComplexVector& a,
                                                       const SignEnsemble& ens) {
  validate(a, ens);
  double sum = 0.0;
  ComplexVector grad = ComplexVector::Zero(a.size());
  std::uint64_t count = 0;
  for_each_member(ens, [&](const std::vector<std::uint8_t>& e) {
    const Complex s = combine(a, e);
    const double mag = std::abs(s);
    sum += mag;
    ++count;
    if (mag == 0.0) return;  // zero is a valid subgradient there
    const Complex unit = s / mag;
    for (std::size_t j = 0; j < e.size(); ++j) {
      grad(static_cast<Eigen::Index>(j)) += unit * std::conj(kPhase[e[j]]);
    }
  });
  const auto n = static_cast<double>(count);
  if (ens.field == Field::real) grad = grad.real().cast<Complex>();
  return {sum / n, grad / n};
}

double spread_ratio(const ComplexVector& a) {
  const double l2 = l2_norm(a);
  if (l2 == 0.0) throw DomainError("spread_ratio: zero vector");
  return linf_norm(a) / l2;
}

double limit_constant(Field field) {
  return field == Field::real ? std::sqrt(2.0 / std::numbers::pi)
                              : std::sqrt(std::numbers::pi / 4.0);
}

std::vector<ProfileRow> besseen_profile(const std::vector<std::size_t>& n_values,
                                        const SignEnsemble& params) {
  if (n_values.empty()) throw DomainError("besseen_profile: empty n list");
  std::vector<ProfileRow> rows;
  rows.reserve(n_values.size());
  const double limit = limit_constant(params.field);
  for (std::size_t idx = 0; idx < n_values.size(); ++idx) {
    const std::size_t n = n_values[idx];
    if (n == 0) throw DomainError("besseen_profile: n must be positive");
    const ComplexVector a =
        ComplexVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(double(n)));
    SignEnsemble ens = params;
    ens.n = n;
    ens.seed = stream_seed(params.seed, idx);
    if (ens.mode == EnsembleMode::exhaustive && ens.sample_count > 0) {
      const std::size_t bits = bits_per_coordinate(ens.field) * n;
      if (bits >= 64 || (std::uint64_t{1} << bits) > ens.cap) ens.mode = EnsembleMode::monte_carlo;
    }
    ProfileRow row;
    row.n = n;
    row.spread = spread_ratio(a);
    row.value = embedding_l1_norm(a, ens);
    row.gap = std::abs(row.value.value - limit);
    rows.push_back(row);
  }
  return rows;
}

bool gaps_decreasing(const std::vector<ProfileRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].gap < rows[i - 1].gap)) return false;
  }
  return true;
}

}  // namespace ncg::commutative
