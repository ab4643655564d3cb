#include "ncg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/random.hpp"

namespace ncg::solvers {

namespace {

auto key(const TensorEntry& e) { return std::tie(e.i, e.j, e.k, e.l); }

void require_dim(const ComplexMatrix& m, std::size_t d, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(d) + "x" +
                     std::to_string(d) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

}  // namespace

void NcgTensor::canonicalize() {
  std::sort(entries.begin(), entries.end(),
            [](const TensorEntry& x, const TensorEntry& y) { return key(x) < key(y); });
  std::vector<TensorEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && key(merged.back()) == key(e)) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const TensorEntry& e) { return e.value == Complex{}; });
  entries = std::move(merged);
}

void NcgTensor::validate() const {
  if (d == 0) throw DomainError("NcgTensor: d must be positive");
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const auto& e = entries[idx];
    if (e.i >= d || e.j >= d || e.k >= d || e.l >= d) {
      throw ShapeError("NcgTensor: entry " + std::to_string(idx) + " index out of range");
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw DomainError("NcgTensor: entry " + std::to_string(idx) + " is not finite");
    }
  }
  std::vector<TensorEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const TensorEntry& x, const TensorEntry& y) { return key(x) < key(y); });
  for (std::size_t idx = 1; idx < sorted.size(); ++idx) {
    if (key(sorted[idx - 1]) == key(sorted[idx])) {
      throw DomainError("NcgTensor: duplicate index quadruple");
    }
  }
}

NcgTensor tensor_from_matrix(const ComplexMatrix& m) {
  require_square(m, "tensor_from_matrix");
  NcgTensor t;
  t.d = static_cast<std::size_t>(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      t.entries.push_back({ui, ui, uj, uj, m(i, j)});
    }
  }
  t.canonicalize();
  return t;
}

ComplexMatrix LittleOperator::apply(const ComplexVector& a) const {
  if (static_cast<std::size_t>(a.size()) != n) {
    throw ShapeError("LittleOperator: vector length " + std::to_string(a.size()) +
                     " != n = " + std::to_string(n));
  }
  const auto dd = static_cast<Eigen::Index>(d);
  ComplexMatrix out = ComplexMatrix::Zero(dd, dd);
  for (std::size_t i = 0; i < n; ++i) out += a(static_cast<Eigen::Index>(i)) * images[i];
  return out;
}

void LittleOperator::validate() const {
  if (n == 0 || d == 0) throw DomainError("LittleOperator: n and d must be positive");
  if (images.size() != n) throw ShapeError("LittleOperator: need one image per coordinate");
  for (const auto& m : images) require_dim(m, d, "LittleOperator image");
}

LittleOperator clifford_operator(std::size_t n) {
  const auto gens = clifford::make_generators(n);
  LittleOperator op;
  op.n = n;
  op.d = gens.dim;
  op.images.assign(gens.matrices.begin(), gens.matrices.begin() + static_cast<std::ptrdiff_t>(n));
  return op;
}

LittleOperator dictator_operator(const clifford::PhaseFamily& family) {
  const std::size_t n = family.n();
  const auto gens = clifford::make_generators(n);
  LittleOperator op;
  op.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    op.images.push_back(clifford::materialize_embedding(e, family, gens));
  }
  op.d = static_cast<std::size_t>(op.images.front().rows());
  return op;
}

LittleOperator sign_operator(commutative::Field field, std::size_t n) {
  const std::size_t bits = field == commutative::Field::real ? 1 : 2;
  if (n == 0 || bits * n > 20) throw CapacityError("sign_operator: n out of range");
  const std::size_t d = std::size_t{1} << (bits * n);
  static constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  LittleOperator op;
  op.n = n;
  op.d = d;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexVector diag(static_cast<Eigen::Index>(d));
    for (std::size_t w = 0; w < d; ++w) {
      const std::size_t digit = (w >> (bits * i)) & ((std::size_t{1} << bits) - 1);
      diag(static_cast<Eigen::Index>(w)) = kPhase[bits == 1 ? 2 * digit : digit];
    }
    op.images.push_back(diag.asDiagonal());
  }
  return op;
}

LittleOperator random_operator(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw DomainError("random_operator: n and d must be positive");
  LittleOperator op;
  op.n = n;
  op.d = d;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = make_rng(seed, i);
    op.images.push_back(random_gaussian_matrix(d, d, rng) / std::sqrt(static_cast<double>(n)));
  }
  return op;
}

ComplexVector adjoint_apply(const LittleOperator& op, const ComplexMatrix& a) {
  op.validate();
  require_dim(a, op.d, "adjoint_apply");
  ComplexVector u(static_cast<Eigen::Index>(op.n));
  for (std::size_t i = 0; i < op.n; ++i) {
    u(static_cast<Eigen::Index>(i)) = normalized_inner(op.images[i], a);
  }
  return u;
}

NcgTensor lift_little_to_big(const LittleOperator& op, std::size_t cap) {
  op.validate();
  if (op.d > cap || op.n * op.d * op.d > cap) {
    throw CapacityError("lift_little_to_big: n d^2 = " + std::to_string(op.n * op.d * op.d) +
                        " exceeds cap " + std::to_string(cap));
  }
  const std::size_t d = op.d;
  const double w = 1.0 / static_cast<double>(d * d);
  // T_jklm = d^{-2} sum_i conj(F_i(j, k)) F_i(l, m), accumulated over the
  // nonzero pattern of each image.
  std::unordered_map<std::size_t, Complex> acc;
  const std::size_t d2 = d * d;
  for (const auto& f : op.images) {
    std::vector<std::pair<std::size_t, Complex>> nz;
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
      for (Eigen::Index r = 0; r < f.rows(); ++r) {
        if (f(r, c) != Complex{}) {
          nz.emplace_back(static_cast<std::size_t>(r) * d + static_cast<std::size_t>(c), f(r, c));
        }
      }
    }
    for (const auto& [p, x] : nz) {
      for (const auto& [q, y] : nz) acc[p * d2 + q] += w * std::conj(x) * y;
    }
  }
  NcgTensor t;
  t.d = d;
  t.entries.reserve(acc.size());
  for (const auto& [k, v] : acc) {
    const std::size_t p = k / d2;
    const std::size_t q = k % d2;
    t.entries.push_back({p / d, p % d, q / d, q % d, v});
  }
  t.canonicalize();
  return t;
}

Complex evaluate_bilinear(const NcgTensor& t, const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dim(a, t.d, "evaluate_bilinear A");
  require_dim(b, t.d, "evaluate_bilinear B");
  Complex s{};
  for (const auto& e : t.entries) {
    s += e.value * a(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) *
         std::conj(b(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.l)));
  }
  return s;
}

ComplexMatrix contract_right(const NcgTensor& t, const ComplexMatrix& b) {
  require_dim(b, t.d, "contract_right");
  const auto dd = static_cast<Eigen::Index>(t.d);
  ComplexMatrix m = ComplexMatrix::Zero(dd, dd);
  for (const auto& e : t.entries) {
    m(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) +=
        e.value * std::conj(b(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.l)));
  }
  return m;
}

ComplexMatrix contract_left(const NcgTensor& t, const ComplexMatrix& a) {
  require_dim(a, t.d, "contract_left");
  const auto dd = static_cast<Eigen::Index>(t.d);
  ComplexMatrix m = ComplexMatrix::Zero(dd, dd);
  for (const auto& e : t.entries) {
    m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.l)) +=
        e.value * a(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j));
  }
  return m;
}

namespace {

// Non-decrease up to rounding in the objective's own scale.
bool non_decreasing(double prev, double next) {
  return next >= prev - 1e-12 * std::max(1.0, std::abs(prev));
}

}  // namespace

SolverResult ncg_opt_lower_bound(const NcgTensor& t, const SolverOptions& options) {
  t.validate();
  SolverResult res;
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  res.restarts = restarts;
  res.value = -1.0;
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = make_rng(options.seed, r);
    ComplexMatrix b = random_unitary(t.d, rng);
    ComplexMatrix a = ComplexMatrix::Identity(static_cast<Eigen::Index>(t.d),
                                              static_cast<Eigen::Index>(t.d));
    SolverRun run;
    double value = std::abs(evaluate_bilinear(t, a, b));
    run.half_steps.push_back(value);
    for (std::size_t it = 0; it < options.iterations; ++it) {
      ++res.iterations;
      const double start = value;
      a = polar_unitary(contract_right(t, b)).unitary.conjugate();
      const double after_a = std::abs(evaluate_bilinear(t, a, b));
      b = polar_unitary(contract_left(t, a)).unitary;
      const double after_b = std::abs(evaluate_bilinear(t, a, b));
      run.half_steps.push_back(after_a);
      run.half_steps.push_back(after_b);
      run.monotone = run.monotone && non_decreasing(value, after_a) &&
                     non_decreasing(after_a, after_b);
      value = after_b;
      if (std::abs(value - start) <= options.tolerance) break;
    }
    run.value = value;
    res.monotone = res.monotone && run.monotone;
    if (value > res.value) {
      res.value = value;
      res.a = a;
      res.b = b;
    }
    res.runs.push_back(std::move(run));
  }
  res.unitarity_residual_a = unitarity_residual(res.a);
  res.unitarity_residual_b = unitarity_residual(res.b);
  return res;
}

LittleNormResult little_norm_lower_bound(const LittleOperator& op, std::size_t restarts,
                                         std::size_t iterations, std::uint64_t seed) {
  op.validate();
  LittleNormResult res;
  res.value = -1.0;
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    Rng rng = make_rng(seed, r);
    ComplexVector a = random_gaussian_vector(op.n, rng);
    a /= a.norm();
    double best = schatten1_norm(op.apply(a));
    ComplexVector best_a = a;
    for (std::size_t it = 0; it < iterations; ++it) {
      const ComplexVector g = adjoint_apply(op, polar_unitary(op.apply(a)).unitary);
      const double gn = g.norm();
      if (gn == 0.0) break;
      a = g / gn;
      const double v = schatten1_norm(op.apply(a));
      const bool stalled = v - best <= 1e-14;
      if (v > best) {
        best = v;
        best_a = a;
      }
      if (stalled) break;
    }
    res.restart_values.push_back(best);
    if (best > res.value) {
      res.value = best;
      res.a = best_a;
    }
  }
  return res;
}

}  // namespace ncg::solvers
