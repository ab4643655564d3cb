#include "ncg/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ncg/errors.hpp"
#include "ncg/random.hpp"

namespace ncg::clifford {

namespace {

ComplexMatrix pauli(char which) {
  ComplexMatrix p(2, 2);
  switch (which) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -kI, kI, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw DomainError("unknown Pauli matrix");
  }
  return p;
}

ComplexMatrix pauli_string(std::size_t m, std::size_t j, char middle) {
  // factors: Z^(j) middle I^(m-j-1), j zero-based
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t f = 0; f < m; ++f) {
    const char which = f < j ? 'Z' : (f == j ? middle : 'I');
    out = kron(out, pauli(which));
  }
  return out;
}

constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Uniform draws over Z_4, two bits per coordinate.
void draw_exponents(Rng& rng, std::span<std::uint8_t> out) {
  std::uint64_t word = 0;
  int left = 0;
  for (auto& e : out) {
    if (left == 0) {
      word = rng();
      left = 32;
    }
    e = static_cast<std::uint8_t>(word & 3u);
    word >>= 2;
    --left;
  }
}

}  // namespace

CliffordGenerators make_generators(std::size_t n, std::size_t dense_cap) {
  if (n == 0) throw DomainError("make_generators: n must be positive");
  const std::size_t m = (n + 1) / 2;
  if (m >= 63 || (std::size_t{1} << m) > dense_cap) {
    throw CapacityError("make_generators: dimension 2^" + std::to_string(m) +
                        " exceeds dense cap " + std::to_string(dense_cap));
  }
  CliffordGenerators gens;
  gens.n = n;
  gens.m = m;
  gens.dim = std::size_t{1} << m;
  gens.matrices.reserve(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    gens.matrices.push_back(pauli_string(m, j, 'X'));
    gens.matrices.push_back(pauli_string(m, j, 'Y'));
  }
  return gens;
}

GeneratorCheck check_generators(const CliffordGenerators& gens) {
  GeneratorCheck out;
  const auto d = static_cast<Eigen::Index>(gens.dim);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto& c : gens.matrices) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index s = 0; s < d; ++s) {
        const Complex z = c(r, s);
        const bool unit = (std::abs(z.real()) == 1.0 && z.imag() == 0.0) ||
                          (z.real() == 0.0 && std::abs(z.imag()) == 1.0);
        if (!(unit || z == Complex{})) out.exact_entries = false;
      }
    }
    if (c != c.adjoint()) out.hermitian = false;
    if (c.adjoint() * c != id) out.unitary = false;
    if (c.trace() != Complex{}) out.traceless = false;
  }
  for (std::size_t i = 0; i < gens.matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.matrices.size(); ++j) {
      const auto& a = gens.matrices[i];
      const auto& b = gens.matrices[j];
      if (!(a * b + b * a).isZero(0.0)) out.anticommuting = false;
    }
  }
  return out;
}

ComplexMatrix clifford_map(const ComplexVector& a, const CliffordGenerators& gens) {
  if (static_cast<std::size_t>(a.size()) != gens.n) {
    throw ShapeError("clifford_map: vector length " + std::to_string(a.size()) +
                     " does not match n = " + std::to_string(gens.n));
  }
  const auto d = static_cast<Eigen::Index>(gens.dim);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j) != Complex{}) out += a(j) * gens.matrices[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

struct AreaTerms {
  double re_sq;   // |x|^2
  double im_sq;   // |y|^2
  double cross;   // <x, y>
  double area;    // L(a)
};

AreaTerms area_terms(const ComplexVector& a) {
  const RealVector x = a.real();
  const RealVector y = a.imag();
  const double p = x.squaredNorm();
  const double q = y.squaredNorm();
  const double r = x.dot(y);
  double radicand = p * q - r * r;
  if (radicand < 0.0) {
    // Cancellation error scales with |x|^2 |y|^2.
    if (radicand < -defaults::radicand_guard * std::max(1.0, p * q)) {
      throw NumericalError("parallelogram: negative radicand " + std::to_string(radicand));
    }
    radicand = 0.0;
  }
  return {p, q, r, std::sqrt(radicand)};
}

}  // namespace

double parallelogram(const ComplexVector& a) { return area_terms(a).area; }

double trace_norm_formula(const ComplexVector& a) {
  const AreaTerms t = area_terms(a);
  const double norm_sq = t.re_sq + t.im_sq;
  const double plus = norm_sq + 2.0 * t.area;
  const double minus = std::max(0.0, norm_sq - 2.0 * t.area);
  return 0.5 * std::sqrt(plus) + 0.5 * std::sqrt(minus);
}

std::pair<double, ComplexVector> trace_norm_formula_gradient(const ComplexVector& a) {
  const AreaTerms t = area_terms(a);
  const double norm_sq = t.re_sq + t.im_sq;
  if (norm_sq == 0.0) return {0.0, ComplexVector::Zero(a.size())};

  const double plus = norm_sq + 2.0 * t.area;
  const double minus_raw = std::max(0.0, norm_sq - 2.0 * t.area);
  const double value = 0.5 * std::sqrt(plus) + 0.5 * std::sqrt(minus_raw);
  const double minus = std::max(minus_raw, 1e-12 * norm_sq);

  const double inv_plus = 1.0 / std::sqrt(plus);
  const double inv_minus = 1.0 / std::sqrt(minus);
  const double d_norm = 0.25 * (inv_plus + inv_minus);
  // (dg/dL) / L, with its finite limit -N^{-3/2} as L -> 0
  double d_area_over_area;
  if (t.area <= 1e-6 * norm_sq) {
    d_area_over_area = -1.0 / (norm_sq * std::sqrt(norm_sq));
  } else {
    d_area_over_area = 0.5 * (inv_plus - inv_minus) / t.area;
  }

  const RealVector x = a.real();
  const RealVector y = a.imag();
  const RealVector gx = 2.0 * d_norm * x + d_area_over_area * (t.im_sq * x - t.cross * y);
  const RealVector gy = 2.0 * d_norm * y + d_area_over_area * (t.re_sq * y - t.cross * x);
  ComplexVector grad(a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j) grad(j) = {gx(j), gy(j)};
  return {value, grad};
}

double embedding_bound(const ComplexVector& a) {
  const double l2 = l2_norm(a);
  const double l4 = l4_norm(a);
  return std::sqrt((l2 * l2 + l4 * l4) / 2.0);
}

const char* to_string(PhaseMode mode) {
  switch (mode) {
    case PhaseMode::exhaustive: return "exhaustive";
    case PhaseMode::pairwise_independent: return "pairwise_independent";
    case PhaseMode::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

PhaseMode phase_mode_from_string(const std::string& name) {
  if (name == "exhaustive") return PhaseMode::exhaustive;
  if (name == "pairwise_independent" || name == "pairwise") return PhaseMode::pairwise_independent;
  if (name == "monte_carlo" || name == "mc") return PhaseMode::monte_carlo;
  throw DomainError("unknown phase mode '" + name + "'");
}

PhaseFamily PhaseFamily::exhaustive(std::size_t n, std::uint64_t cap) {
  if (n == 0) throw DomainError("PhaseFamily: n must be positive");
  // 4^n <= cap
  if (2 * n >= 64 || (std::uint64_t{1} << (2 * n)) > cap) {
    throw CapacityError("PhaseFamily: 4^" + std::to_string(n) + " members exceed cap " +
                        std::to_string(cap));
  }
  return PhaseFamily(PhaseMode::exhaustive, n, std::uint64_t{1} << (2 * n), 0);
}

PhaseFamily PhaseFamily::pairwise_independent(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("PhaseFamily: n must be positive");
  const auto bits = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(n)));
  if (2 * bits >= 64) throw CapacityError("PhaseFamily: n too large");
  PhaseFamily family(PhaseMode::pairwise_independent, n, std::uint64_t{1} << (2 * bits), seed);
  family.hash_bits_ = bits;
  family.shifts_.resize(n);
  Rng rng = make_rng(seed, 0);
  draw_exponents(rng, family.shifts_);
  return family;
}

PhaseFamily PhaseFamily::monte_carlo(std::size_t n, std::uint64_t sample_count,
                                     std::uint64_t seed) {
  if (n == 0) throw DomainError("PhaseFamily: n must be positive");
  if (sample_count == 0) throw DomainError("PhaseFamily: monte_carlo needs samples");
  return PhaseFamily(PhaseMode::monte_carlo, n, sample_count, seed);
}

void PhaseFamily::member(std::uint64_t index, std::span<std::uint8_t> exponents) const {
  if (exponents.size() != n_) throw ShapeError("PhaseFamily::member: wrong output length");
  if (index >= size_) throw DomainError("PhaseFamily::member: index out of range");
  switch (mode_) {
    case PhaseMode::exhaustive:
      for (std::size_t j = 0; j < n_; ++j) {
        exponents[j] = static_cast<std::uint8_t>((index >> (2 * j)) & 3u);
      }
      break;
    case PhaseMode::pairwise_independent:
      // u in Z_4^r is read off the base-4 digits of index
      for (std::size_t j = 0; j < n_; ++j) {
        const std::uint64_t code = j + 1;
        unsigned acc = shifts_[j];
        for (std::size_t b = 0; b < hash_bits_; ++b) {
          if ((code >> b) & 1u) acc += static_cast<unsigned>((index >> (2 * b)) & 3u);
        }
        exponents[j] = static_cast<std::uint8_t>(acc & 3u);
      }
      break;
    case PhaseMode::monte_carlo: {
      Rng rng = make_rng(seed_, index + 1);
      draw_exponents(rng, exponents);
      break;
    }
  }
}

ComplexVector PhaseFamily::phases(std::uint64_t index) const {
  std::vector<std::uint8_t> e(n_);
  member(index, e);
  ComplexVector w(static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j) w(static_cast<Eigen::Index>(j)) = kPhase[e[j]];
  return w;
}

PhaseFamily build_phase_family(std::size_t n, PhaseMode mode, std::uint64_t seed,
                               std::uint64_t sample_count, std::uint64_t cap) {
  switch (mode) {
    case PhaseMode::exhaustive: return PhaseFamily::exhaustive(n, cap);
    case PhaseMode::pairwise_independent: return PhaseFamily::pairwise_independent(n, seed);
    case PhaseMode::monte_carlo: return PhaseFamily::monte_carlo(n, sample_count, seed);
  }
  throw DomainError("build_phase_family: unknown mode");
}

ComplexVector apply_phases(const ComplexVector& a, std::span<const std::uint8_t> exponents) {
  if (static_cast<std::size_t>(a.size()) != exponents.size()) {
    throw ShapeError("apply_phases: length mismatch");
  }
  ComplexVector out(a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    out(j) = a(j) * kPhase[exponents[static_cast<std::size_t>(j)] & 3u];
  }
  return out;
}

namespace {

void require_length(const ComplexVector& a, const PhaseFamily& family, const char* what) {
  if (static_cast<std::size_t>(a.size()) != family.n()) {
    throw ShapeError(std::string(what) + ": vector length does not match family");
  }
}

// Mean and standard error over the family of a per-member statistic.
template <typename Stat>
Estimate family_mean(const ComplexVector& a, const PhaseFamily& family, Stat&& stat) {
  std::vector<std::uint8_t> e(family.n());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < family.size(); ++k) {
    family.member(k, e);
    const double v = stat(apply_phases(a, e));
    sum += v;
    sum_sq += v * v;
  }
  const auto count = static_cast<double>(family.size());
  Estimate est;
  est.value = sum / count;
  est.members = family.size();
  est.exact = family.exact();
  if (!est.exact && family.size() > 1) {
    const double var = std::max(0.0, (sum_sq - count * est.value * est.value) / (count - 1.0));
    est.std_error = std::sqrt(var / count);
  }
  return est;
}

}  // namespace

Estimate dictator_embedding_norm(const ComplexVector& a, const PhaseFamily& family) {
  require_length(a, family, "dictator_embedding_norm");
  return family_mean(a, family, [](const ComplexVector& v) { return trace_norm_formula(v); });
}

std::pair<double, ComplexVector> dictator_embedding_gradient(const ComplexVector& a,
                                                             const PhaseFamily& family) {
  require_length(a, family, "dictator_embedding_gradient");
  std::vector<std::uint8_t> e(family.n());
  double value = 0.0;
  ComplexVector grad = ComplexVector::Zero(a.size());
  for (std::uint64_t k = 0; k < family.size(); ++k) {
    family.member(k, e);
    auto [v, g] = trace_norm_formula_gradient(apply_phases(a, e));
    value += v;
    // chain rule through a -> a o w: gradient picks up conj(w_j)
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      grad(j) += g(j) * std::conj(kPhase[e[static_cast<std::size_t>(j)]]);
    }
  }
  const double w = family.weight();
  return {value * w, grad * w};
}

double randphase_second_moment(const ComplexVector& a, const PhaseFamily& family) {
  require_length(a, family, "randphase_second_moment");
  return 4.0 * family_mean(a, family, [](const ComplexVector& v) {
                 const double area = parallelogram(v);
                 return area * area;
               }).value;
}

ComplexMatrix materialize_embedding(const ComplexVector& a, const PhaseFamily& family,
                                    const CliffordGenerators& gens) {
  require_length(a, family, "materialize_embedding");
  if (family.n() > defaults::materialize_max_n) {
    throw CapacityError("materialize_embedding: only supported for n <= " +
                        std::to_string(defaults::materialize_max_n));
  }
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(family.size());
  std::vector<std::uint8_t> e(family.n());
  for (std::uint64_t k = 0; k < family.size(); ++k) {
    family.member(k, e);
    blocks.push_back(clifford_map(apply_phases(a, e), gens));
  }
  return block_diag(blocks);
}

}  // namespace ncg::clifford
