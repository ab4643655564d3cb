#include "ncg/labelcover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "ncg/errors.hpp"
#include "ncg/random.hpp"

namespace ncg::labelcover {

std::vector<std::vector<std::size_t>> LabelCoverInstance::incidence() const {
  std::vector<std::vector<std::size_t>> out(vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].u].push_back(e);
    out[edges[e].v].push_back(e);
  }
  return out;
}

std::vector<std::size_t> LabelCoverInstance::degrees() const {
  std::vector<std::size_t> deg(vertices, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

namespace {

void validate_projection(const std::vector<Label>& pi, const LabelCoverInstance& inst,
                         std::size_t edge) {
  if (pi.size() != inst.n) {
    throw DomainError("edge " + std::to_string(edge) + ": projection has length " +
                      std::to_string(pi.size()) + ", expected n = " + std::to_string(inst.n));
  }
  for (Label j : pi) {
    if (j >= inst.k) {
      throw DomainError("edge " + std::to_string(edge) + ": projection value out of [k]");
    }
  }
}

}  // namespace

void validate(const LabelCoverInstance& inst) {
  if (inst.n == 0 || inst.k == 0) throw DomainError("instance: n and k must be positive");
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const Edge& edge = inst.edges[e];
    if (edge.u >= inst.vertices || edge.v >= inst.vertices) {
      throw DomainError("edge " + std::to_string(e) + ": endpoint out of range");
    }
    if (edge.u == edge.v) throw DomainError("edge " + std::to_string(e) + ": self-loop");
    validate_projection(edge.pi_u, inst, e);
    validate_projection(edge.pi_v, inst, e);
  }
}

void validate(const LabelCoverInstance& inst, const Assignment& a) {
  if (a.labels.size() != inst.vertices) {
    throw DomainError("assignment covers " + std::to_string(a.labels.size()) +
                      " vertices, instance has " + std::to_string(inst.vertices));
  }
  for (std::size_t v = 0; v < a.labels.size(); ++v) {
    if (a.labels[v] >= inst.n) {
      throw DomainError("assignment: label out of range at vertex " + std::to_string(v));
    }
  }
}

bool is_regular(const LabelCoverInstance& inst) {
  const auto deg = inst.degrees();
  return std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) == deg.end();
}

bool is_connected(const LabelCoverInstance& inst) {
  if (inst.vertices <= 1) return true;
  const auto inc = inst.incidence();
  std::vector<bool> seen(inst.vertices, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : inc[v]) {
      const std::size_t w = inst.edges[e].u == v ? inst.edges[e].v : inst.edges[e].u;
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == inst.vertices;
}

std::size_t max_preimage(const LabelCoverInstance& inst) {
  std::size_t worst = 0;
  std::vector<std::size_t> counts(inst.k);
  for (const auto& edge : inst.edges) {
    for (const auto* pi : {&edge.pi_u, &edge.pi_v}) {
      std::fill(counts.begin(), counts.end(), 0);
      for (Label j : *pi) worst = std::max(worst, ++counts[j]);
    }
  }
  return worst;
}

bool check_preimage_bound(const LabelCoverInstance& inst) {
  return max_preimage(inst) <= inst.t;
}

double satisfied_fraction(const LabelCoverInstance& inst, const Assignment& a) {
  validate(inst, a);
  if (inst.edges.empty()) return 1.0;
  std::size_t good = 0;
  for (const auto& e : inst.edges) {
    if (e.pi_u[a.labels[e.u]] == e.pi_v[a.labels[e.v]]) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(inst.edges.size());
}

std::vector<std::pair<std::size_t, std::size_t>> circulant_edges(std::size_t vertices,
                                                                 std::size_t degree) {
  if (vertices < 2 || degree == 0 || degree >= vertices) {
    throw DomainError("circulant graph needs 1 <= degree < vertices");
  }
  if (degree % 2 == 1 && vertices % 2 == 1) {
    throw DomainError("odd degree needs an even number of vertices");
  }
  if (degree == 1 && vertices != 2) {
    throw DomainError("degree 1 is connected only on 2 vertices");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t off = 1; off <= degree / 2; ++off) {
    for (std::size_t v = 0; v < vertices; ++v) out.emplace_back(v, (v + off) % vertices);
  }
  if (degree % 2 == 1) {
    for (std::size_t v = 0; v < vertices / 2; ++v) out.emplace_back(v, v + vertices / 2);
  }
  return out;
}

namespace {

void check_label_params(std::size_t n, std::size_t k, std::size_t t) {
  if (n == 0 || k == 0 || t == 0) throw DomainError("n, k, t must be positive");
  if (k * t < n) throw DomainError("infeasible: k * t < n");
}

// Random map [n] -> [k] hitting each small label at most t times.
std::vector<Label> random_projection(std::size_t n, std::size_t k, std::size_t t, Rng& rng) {
  std::vector<Label> slots;
  slots.reserve(k * t);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < t; ++r) slots.push_back(static_cast<Label>(j));
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  slots.resize(n);
  return slots;
}

LabelCoverInstance random_instance(std::size_t vertices, std::size_t degree, std::size_t n,
                                   std::size_t k, std::size_t t, Rng& rng) {
  check_label_params(n, k, t);
  LabelCoverInstance inst;
  inst.vertices = vertices;
  inst.n = n;
  inst.k = k;
  inst.t = t;
  for (auto [u, v] : circulant_edges(vertices, degree)) {
    Edge e;
    e.u = u;
    e.v = v;
    e.pi_u = random_projection(n, k, t, rng);
    e.pi_v = random_projection(n, k, t, rng);
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

}  // namespace

PlantedInstance generate_planted(std::size_t vertices, std::size_t degree, std::size_t n,
                                 std::size_t k, std::size_t t, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  PlantedInstance out;
  out.instance = random_instance(vertices, degree, n, k, t, rng);
  std::uniform_int_distribution<Label> pick(0, static_cast<Label>(n - 1));
  out.planted.labels.resize(vertices);
  for (auto& label : out.planted.labels) label = pick(rng);

  // Swapping two small labels in pi_v keeps its preimage sizes.
  for (auto& e : out.instance.edges) {
    const Label want = e.pi_u[out.planted.labels[e.u]];
    const Label have = e.pi_v[out.planted.labels[e.v]];
    if (want == have) continue;
    for (auto& j : e.pi_v) {
      if (j == want) {
        j = have;
      } else if (j == have) {
        j = want;
      }
    }
  }
  out.instance.gamma = check_smoothness(out.instance).value;
  out.instance.zeta = 1.0;
  return out;
}

LabelCoverInstance generate_random(std::size_t vertices, std::size_t degree, std::size_t n,
                                   std::size_t k, std::size_t t, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  LabelCoverInstance inst = random_instance(vertices, degree, n, k, t, rng);
  inst.gamma = check_smoothness(inst).value;
  return inst;
}

LabelCoverInstance generate_identity(std::size_t vertices, std::size_t degree, std::size_t n) {
  check_label_params(n, n, 1);
  LabelCoverInstance inst;
  inst.vertices = vertices;
  inst.n = n;
  inst.k = n;
  inst.t = 1;
  std::vector<Label> id(n);
  std::iota(id.begin(), id.end(), Label{0});
  for (auto [u, v] : circulant_edges(vertices, degree)) {
    inst.edges.push_back(Edge{u, v, id, id});
  }
  inst.gamma = 0.0;
  return inst;
}

SmoothnessReport check_smoothness(const LabelCoverInstance& inst) {
  SmoothnessReport report;
  const auto inc = inst.incidence();
  std::vector<std::size_t> collisions(inst.n * inst.n);
  for (std::size_t v = 0; v < inst.vertices; ++v) {
    if (inc[v].empty()) continue;
    std::fill(collisions.begin(), collisions.end(), 0);
    for (std::size_t e : inc[v]) {
      const auto& pi = inst.edges[e].projection_at(v);
      for (std::size_t i = 0; i < inst.n; ++i) {
        for (std::size_t j = i + 1; j < inst.n; ++j) {
          if (pi[i] == pi[j]) ++collisions[i * inst.n + j];
        }
      }
    }
    const auto deg = static_cast<double>(inc[v].size());
    for (std::size_t i = 0; i < inst.n; ++i) {
      for (std::size_t j = i + 1; j < inst.n; ++j) {
        const double p = static_cast<double>(collisions[i * inst.n + j]) / deg;
        if (p > report.value) {
          report.value = p;
          report.vertex = v;
          report.i = static_cast<Label>(i);
          report.j = static_cast<Label>(j);
        }
      }
    }
  }
  report.pass = report.value <= inst.gamma;
  return report;
}

std::size_t induced_edges(const LabelCoverInstance& inst, const std::vector<bool>& in_subset) {
  std::size_t count = 0;
  for (const auto& e : inst.edges) {
    if (in_subset[e.u] && in_subset[e.v]) ++count;
  }
  return count;
}

ExpansionReport check_weak_expansion(const LabelCoverInstance& inst,
                                     const std::vector<double>& delta_grid,
                                     std::size_t subset_samples, std::uint64_t seed) {
  ExpansionReport report;
  const std::size_t nv = inst.vertices;
  const bool exhaustive = nv <= kExhaustiveExpansionVertices;
  const auto total_edges = static_cast<double>(inst.edges.size());

  for (std::size_t g = 0; g < delta_grid.size(); ++g) {
    const double delta = delta_grid[g];
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("weak expansion: delta must be in (0, 1]");
    ExpansionCheck check;
    check.delta = delta;
    check.exhaustive = exhaustive;
    check.subset_size = static_cast<std::size_t>(std::llround(delta * static_cast<double>(nv)));
    const double effective = static_cast<double>(check.subset_size) / static_cast<double>(nv);
    check.required = effective * effective / 2.0 * total_edges;
    check.min_induced_edges = inst.edges.size();

    std::vector<bool> member(nv);
    auto consider = [&](const std::vector<bool>& subset) {
      ++check.subsets_checked;
      const std::size_t count = induced_edges(inst, subset);
      if (count < check.min_induced_edges) check.min_induced_edges = count;
      if (static_cast<double>(count) < check.required && check.pass) {
        check.pass = false;
        for (std::size_t v = 0; v < nv; ++v) {
          if (subset[v]) check.counterexample.push_back(v);
        }
      }
    };

    if (exhaustive) {
      for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != check.subset_size) continue;
        for (std::size_t v = 0; v < nv; ++v) member[v] = (mask >> v) & 1u;
        consider(member);
      }
    } else {
      Rng rng = make_rng(seed, g);
      std::vector<std::size_t> order(nv);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t s = 0; s < subset_samples; ++s) {
        std::shuffle(order.begin(), order.end(), rng);
        std::fill(member.begin(), member.end(), false);
        for (std::size_t r = 0; r < check.subset_size; ++r) member[order[r]] = true;
        consider(member);
      }
    }
    report.pass = report.pass && check.pass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace ncg::labelcover
