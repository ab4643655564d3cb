#include "ncg/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "ncg/errors.hpp"
#include "ncg/random.hpp"

namespace ncg::reduction {

using labelcover::Assignment;
using labelcover::LabelCoverInstance;

const char* to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::clifford: return "clifford";
    case BackendKind::comm_real: return "comm_real";
    case BackendKind::comm_complex: return "comm_complex";
  }
  return "unknown";
}

BackendKind backend_from_string(const std::string& name) {
  if (name == "clifford") return BackendKind::clifford;
  if (name == "comm_real") return BackendKind::comm_real;
  if (name == "comm_complex") return BackendKind::comm_complex;
  throw DomainError("unknown backend '" + name + "'");
}

namespace {

bool fits_cap(std::size_t bits, std::uint64_t cap) {
  return bits < 64 && (std::uint64_t{1} << bits) <= cap;
}

EmbeddingBackend clifford_backend(std::size_t n, const BackendOptions& opt) {
  clifford::PhaseMode mode = opt.phase_mode;
  if (opt.auto_phase_mode) {
    mode = fits_cap(2 * n, opt.enumeration_cap) ? clifford::PhaseMode::exhaustive
                                                : clifford::PhaseMode::pairwise_independent;
  }
  auto family = std::make_shared<const clifford::PhaseFamily>(
      clifford::build_phase_family(n, mode, opt.seed, opt.phase_samples, opt.enumeration_cap));
  const clifford::EmbeddingSpec spec{n};
  EmbeddingBackend b;
  b.kind = BackendKind::clifford;
  b.n = n;
  b.eta = spec.eta;
  b.tau = spec.tau;
  b.norm = [family](const ComplexVector& a) {
    return clifford::dictator_embedding_norm(a, *family).value;
  };
  b.norm_and_gradient = [family](const ComplexVector& a) {
    return clifford::dictator_embedding_gradient(a, *family);
  };
  b.description = std::string("clifford/") + clifford::to_string(mode) + "/" +
                  std::to_string(family->size());
  return b;
}

EmbeddingBackend commutative_backend(BackendKind kind, std::size_t n, const BackendOptions& opt) {
  commutative::SignEnsemble ens;
  ens.field = kind == BackendKind::comm_real ? commutative::Field::real
                                             : commutative::Field::complex;
  ens.n = n;
  ens.seed = opt.seed;
  ens.cap = opt.enumeration_cap;
  const std::size_t bits = (ens.field == commutative::Field::real ? 1 : 2) * n;
  if (fits_cap(bits, opt.enumeration_cap)) {
    ens.mode = commutative::EnsembleMode::exhaustive;
  } else {
    if (opt.phase_samples == 0) {
      throw CapacityError(std::string(to_string(kind)) + ": n = " + std::to_string(n) +
                          " needs Monte-Carlo samples");
    }
    ens.mode = commutative::EnsembleMode::monte_carlo;
    ens.sample_count = opt.phase_samples;
  }
  EmbeddingBackend b;
  b.kind = kind;
  b.n = n;
  b.eta = 1.0;
  b.tau = commutative::limit_constant(ens.field);
  b.real_only = ens.field == commutative::Field::real;
  b.norm = [ens](const ComplexVector& a) { return commutative::embedding_l1_norm(a, ens).value; };
  b.norm_and_gradient = [ens](const ComplexVector& a) {
    return commutative::embedding_l1_gradient(a, ens);
  };
  b.description = std::string(to_string(kind)) + "/" + commutative::to_string(ens.mode) + "/" +
                  std::to_string(ens.size());
  return b;
}

void require_match(const VertexVectorField& b, const EmbeddingBackend& backend) {
  if (b.n != backend.n) {
    throw ShapeError("field has n = " + std::to_string(b.n) + ", backend expects " +
                     std::to_string(backend.n));
  }
  if (static_cast<std::size_t>(b.values.size()) != b.vertices * b.n) {
    throw ShapeError("field storage does not match vertices * n");
  }
}

}  // namespace

EmbeddingBackend make_backend(BackendKind kind, std::size_t n, const BackendOptions& options) {
  if (n == 0) throw DomainError("make_backend: n must be positive");
  if (kind == BackendKind::clifford) return clifford_backend(n, options);
  return commutative_backend(kind, n, options);
}

RealMatrix ConstraintSystem::dense() const {
  RealMatrix m = RealMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (const auto& [c, w] : row_entries[r]) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += w;
    }
  }
  return m;
}

VertexVectorField VertexVectorField::zero(std::size_t vertices, std::size_t n) {
  return {vertices, n, ComplexVector::Zero(static_cast<Eigen::Index>(vertices * n))};
}

double VertexVectorField::l2_norm() const {
  if (vertices == 0) return 0.0;
  return values.norm() / std::sqrt(static_cast<double>(vertices));
}

namespace {

double row_value(const std::vector<std::pair<std::size_t, double>>& row,
                 const VertexVectorField& b) {
  Complex s{};
  for (const auto& [c, w] : row) s += w * b.values(static_cast<Eigen::Index>(c));
  return std::abs(s);
}

void require_shape(const ConstraintSystem& cs, const VertexVectorField& b) {
  if (static_cast<std::size_t>(b.values.size()) != cs.cols) {
    throw ShapeError("field size " + std::to_string(b.values.size()) +
                     " does not match constraint columns " + std::to_string(cs.cols));
  }
}

}  // namespace

double constraint_residual(const ConstraintSystem& cs, const VertexVectorField& b) {
  require_shape(cs, b);
  double worst = 0.0;
  for (const auto& row : cs.row_entries) worst = std::max(worst, row_value(row, b));
  return worst;
}

double edge_residual(const ConstraintSystem& cs, const VertexVectorField& b, std::size_t edge) {
  require_shape(cs, b);
  double worst = 0.0;
  for (std::size_t j = 0; j < cs.k; ++j) {
    worst = std::max(worst, row_value(cs.row_entries.at(edge * cs.k + j), b));
  }
  return worst;
}

ConstraintSystem build_constraints(const LabelCoverInstance& inst) {
  labelcover::validate(inst);
  ConstraintSystem cs;
  cs.vertices = inst.vertices;
  cs.n = inst.n;
  cs.k = inst.k;
  cs.rows = inst.edges.size() * inst.k;
  cs.cols = inst.vertices * inst.n;
  cs.row_entries.resize(cs.rows);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& edge = inst.edges[e];
    for (std::size_t i = 0; i < inst.n; ++i) {
      cs.row_entries[e * inst.k + edge.pi_u[i]].emplace_back(edge.u * inst.n + i, 1.0);
      cs.row_entries[e * inst.k + edge.pi_v[i]].emplace_back(edge.v * inst.n + i, -1.0);
    }
  }
  return cs;
}

SubspaceBasis subspace_basis(const ConstraintSystem& cs) {
  SubspaceBasis out;
  out.vertices = cs.vertices;
  out.n = cs.n;
  const auto cols = static_cast<Eigen::Index>(cs.cols);
  const double scale = std::sqrt(static_cast<double>(cs.vertices));
  if (cs.rows == 0 || cols == 0) {
    out.basis = scale * RealMatrix::Identity(cols, cols);
    return out;
  }
  const RealMatrix a = cs.dense();
  Eigen::JacobiSVD<RealMatrix> dec(a, Eigen::ComputeFullV);
  const auto& sv = dec.singularValues();
  const double cutoff = defaults::subspace_rank_relative * (sv.size() > 0 ? sv(0) : 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  out.rank = rank;
  const auto r = static_cast<Eigen::Index>(rank);
  out.basis = scale * dec.matrixV().rightCols(cols - r);
  return out;
}

VertexVectorField SubspaceBasis::field(const ComplexVector& coordinates) const {
  if (coordinates.size() != basis.cols()) {
    throw ShapeError("coordinate length does not match subspace dimension");
  }
  return {vertices, n, basis.cast<Complex>() * coordinates};
}

ComplexVector SubspaceBasis::coordinates(const VertexVectorField& b) const {
  if (b.values.size() != basis.rows()) throw ShapeError("field size does not match basis");
  return basis.transpose().cast<Complex>() * b.values / static_cast<double>(vertices);
}

VertexVectorField SubspaceBasis::project(const VertexVectorField& b) const {
  return field(coordinates(b));
}

VertexVectorField assignment_to_field(const LabelCoverInstance& inst, const Assignment& a) {
  labelcover::validate(inst, a);
  VertexVectorField b = VertexVectorField::zero(inst.vertices, inst.n);
  for (std::size_t v = 0; v < inst.vertices; ++v) {
    b.values(static_cast<Eigen::Index>(v * inst.n + a.labels[v])) = 1.0;
  }
  return b;
}

double apply_norm_F(const VertexVectorField& b, const EmbeddingBackend& backend) {
  require_match(b, backend);
  if (b.vertices == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t v = 0; v < b.vertices; ++v) {
    const ComplexVector bv = b.vertex(v);
    if (bv.isZero(0.0)) continue;
    sum += backend.norm(bv);
  }
  return sum / static_cast<double>(b.vertices);
}

CompletenessCertificate completeness_certificate(const LabelCoverInstance& inst,
                                                 const Assignment& a,
                                                 const EmbeddingBackend& backend) {
  const ConstraintSystem cs = build_constraints(inst);
  const VertexVectorField b = assignment_to_field(inst, a);
  CompletenessCertificate cert;
  cert.residual = constraint_residual(cs, b);
  cert.in_subspace = cert.residual <= defaults::membership_tolerance;
  cert.value = apply_norm_F(b, backend);
  cert.eta = backend.eta;
  cert.pass = cert.in_subspace && cert.value >= backend.eta - defaults::completeness_slack;
  return cert;
}

void DecoderParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("decoder: eps must lie in (0, 1)");
  if (!(delta > 0.0)) throw DomainError("decoder: delta must be positive");
  if (t == 0) throw DomainError("decoder: t must be positive");
  const double b = beta();
  if (!(b <= delta && delta <= 1.0)) throw DomainError("decoder: need beta <= delta <= 1");
}

DecodeResult decode(const VertexVectorField& b, const DecoderParams& params,
                    const LabelCoverInstance& inst) {
  params.validate();
  labelcover::validate(inst);
  if (b.vertices != inst.vertices || b.n != inst.n ||
      static_cast<std::size_t>(b.values.size()) != inst.vertices * inst.n) {
    throw ShapeError("decode: field shape does not match instance");
  }
  DecodeResult out;
  DecodeStats& st = out.stats;
  st.vertices = inst.vertices;
  st.beta = params.beta();
  const double e2b2 = params.eps * params.eps * st.beta * st.beta;
  st.a1_bound = 16.0 / e2b2;
  st.a2_bound = 16.0 * static_cast<double>(params.t * params.t) / e2b2;
  st.input_norm = b.l2_norm();
  st.in_v0.assign(inst.vertices, false);
  out.assignment.labels.assign(inst.vertices, 0);

  Rng rng = make_rng(params.seed, 0);
  const double scale = st.input_norm > 0.0 ? 1.0 / st.input_norm : 0.0;
  const double a1_cut = st.beta / 4.0;
  const double a2_cut = st.beta / (4.0 * static_cast<double>(params.t));
  bool first = true;
  for (std::size_t v = 0; v < inst.vertices; ++v) {
    const ComplexVector bv = scale * b.vertex(v);
    if (!(l4_norm(bv) > params.delta * params.eps && l2_norm(bv) <= 1.0 / params.eps)) continue;
    st.in_v0[v] = true;
    ++st.v0_count;
    std::vector<labelcover::Label> a1;
    std::size_t a2 = 0;
    for (Eigen::Index i = 0; i < bv.size(); ++i) {
      const double m = std::abs(bv(i));
      if (m >= a1_cut) a1.push_back(static_cast<labelcover::Label>(i));
      if (m >= a2_cut) ++a2;
    }
    if (a1.empty()) {
      throw InvariantViolation("decode: empty candidate set at vertex " + std::to_string(v));
    }
    const double linf = linf_norm(bv);
    st.min_linf_in_v0 = first ? linf : std::min(st.min_linf_in_v0, linf);
    first = false;
    st.max_a1 = std::max(st.max_a1, a1.size());
    st.max_a2 = std::max(st.max_a2, a2);
    std::uniform_int_distribution<std::size_t> pick(0, a1.size() - 1);
    out.assignment.labels[v] = a1[pick(rng)];
  }
  st.sizes_within_bounds = static_cast<double>(st.max_a1) <= st.a1_bound &&
                           static_cast<double>(st.max_a2) <= st.a2_bound;
  st.v0_fraction = inst.vertices == 0 ? 0.0
                                      : static_cast<double>(st.v0_count) /
                                            static_cast<double>(inst.vertices);
  st.satisfied_fraction = labelcover::satisfied_fraction(inst, out.assignment);
  return out;
}

AscentResult operator_norm_lower_bound(const LabelCoverInstance& inst,
                                       const EmbeddingBackend& backend,
                                       const AscentOptions& options) {
  return operator_norm_lower_bound(subspace_basis(build_constraints(inst)), backend, options);
}

namespace {

// F(Bc) and its gradient in coordinates: grad_c = B^T (E_v-weighted vertex
// gradients). B is real, so the chain rule keeps the complex structure.
std::pair<double, ComplexVector> objective(const SubspaceBasis& basis,
                                           const EmbeddingBackend& backend,
                                           const ComplexVector& c) {
  const VertexVectorField b = basis.field(c);
  ComplexVector g = ComplexVector::Zero(b.values.size());
  double sum = 0.0;
  for (std::size_t v = 0; v < b.vertices; ++v) {
    const ComplexVector bv = b.vertex(v);
    if (bv.norm() == 0.0) continue;
    auto [val, grad] = backend.norm_and_gradient(bv);
    sum += val;
    g.segment(static_cast<Eigen::Index>(v * b.n), static_cast<Eigen::Index>(b.n)) = grad;
  }
  const auto nv = static_cast<double>(b.vertices);
  ComplexVector gc = basis.basis.transpose().cast<Complex>() * g / nv;
  if (backend.real_only) gc = gc.real().cast<Complex>();
  return {sum / nv, gc};
}

ComplexVector random_start(std::size_t dim, bool real_only, Rng& rng) {
  ComplexVector c = random_gaussian_vector(dim, rng);
  if (real_only) c = c.real().cast<Complex>();
  const double nrm = c.norm();
  if (nrm == 0.0) {
    c = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    c(0) = 1.0;
    return c;
  }
  return c / nrm;
}

}  // namespace

AscentResult operator_norm_lower_bound(const SubspaceBasis& basis,
                                       const EmbeddingBackend& backend,
                                       const AscentOptions& options) {
  if (basis.n != backend.n) throw ShapeError("operator_norm_lower_bound: backend n mismatch");
  AscentResult res;
  res.dimension = basis.dimension();
  res.field = VertexVectorField::zero(basis.vertices, basis.n);
  if (res.dimension == 0 || basis.vertices == 0) {
    res.degenerate = true;
    return res;
  }
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  ComplexVector best_c;
  res.value = -1.0;
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = make_rng(options.seed, r);
    ComplexVector c = random_start(res.dimension, backend.real_only, rng);
    auto [val, grad] = objective(basis, backend, c);
    double run_best = val;
    ComplexVector run_c = c;
    for (std::size_t it = 0; it < options.iterations; ++it) {
      ++res.iterations;
      const double gn = grad.norm();
      if (gn == 0.0) break;
      c = grad / gn;
      auto [next_val, next_grad] = objective(basis, backend, c);
      const double prev = val;
      val = next_val;
      grad = std::move(next_grad);
      if (val > run_best) {
        run_best = val;
        run_c = c;
      }
      if (std::abs(val - prev) <= options.tolerance) break;
    }
    res.restart_values.push_back(run_best);
    if (run_best > res.value) {
      res.value = run_best;
      best_c = run_c;
    }
  }
  res.field = basis.field(best_c);
  return res;
}

}  // namespace ncg::reduction
