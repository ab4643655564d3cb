#pragma once

// Smooth Label Cover instances: data model, synthetic generators, and exact or
// sampled checkers for the structural properties the reduction relies on.
//
// Labels are zero-based in memory. Files store them one-based (see io.hpp).

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ncg::labelcover {

using Label = std::uint32_t;

/// An edge (u, v) with projections pi_u, pi_v : [n] -> [k].
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::vector<Label> pi_u;
  std::vector<Label> pi_v;

  const std::vector<Label>& projection_at(std::size_t vertex) const {
    return vertex == u ? pi_u : pi_v;
  }
};

struct LabelCoverInstance {
  std::size_t vertices = 0;
  std::size_t n = 0;  // big label set [n]
  std::size_t k = 0;  // small label set [k]
  std::size_t t = 0;  // declared preimage bound
  double gamma = 1.0; // declared smoothness
  double zeta = 1.0;  // declared soundness
  std::vector<Edge> edges;

  /// incidence()[v] lists the indices of edges touching v.
  std::vector<std::vector<std::size_t>> incidence() const;
  std::vector<std::size_t> degrees() const;
};

struct Assignment {
  std::vector<Label> labels;
};

/// Throws DomainError on out-of-range endpoints, self-loops, or projections
/// that are not total maps [n] -> [k].
void validate(const LabelCoverInstance& inst);
void validate(const LabelCoverInstance& inst, const Assignment& a);

bool is_regular(const LabelCoverInstance& inst);
bool is_connected(const LabelCoverInstance& inst);
/// Largest |pi_ev^{-1}(j)| over all edges, endpoints, and j.
std::size_t max_preimage(const LabelCoverInstance& inst);
bool check_preimage_bound(const LabelCoverInstance& inst);

/// Fraction of edges with pi_eu(A(u)) == pi_ev(A(v)). An instance without
/// edges is vacuously satisfied.
double satisfied_fraction(const LabelCoverInstance& inst, const Assignment& a);

/// Edge list of the circulant graph on `vertices` nodes with the given degree.
/// Offsets 1..degree/2, plus vertices/2 when the degree is odd.
std::vector<std::pair<std::size_t, std::size_t>> circulant_edges(std::size_t vertices,
                                                                 std::size_t degree);

struct PlantedInstance {
  LabelCoverInstance instance;
  Assignment planted;
};

/// Circulant graph with random projections (each label of [k] hit at most t
/// times) adjusted so a random planted assignment satisfies every edge.
/// The declared gamma is the measured smoothness; zeta is 1.
/// Throws DomainError for infeasible parameters.
PlantedInstance generate_planted(std::size_t vertices, std::size_t degree, std::size_t n,
                                 std::size_t k, std::size_t t, std::uint64_t seed);

/// Same graph family with unadjusted random projections.
LabelCoverInstance generate_random(std::size_t vertices, std::size_t degree, std::size_t n,
                                   std::size_t k, std::size_t t, std::uint64_t seed);

/// Identity projections (k = n, t = 1) on a circulant graph; every constant
/// assignment satisfies it.
LabelCoverInstance generate_identity(std::size_t vertices, std::size_t degree, std::size_t n);

struct SmoothnessReport {
  double value = 0.0;  // max_v max_{i != j} Pr_{e ~ v}[pi_ev(i) = pi_ev(j)]
  std::size_t vertex = 0;
  Label i = 0;
  Label j = 0;
  bool pass = true;  // value <= declared gamma
};

/// Exact, by enumeration over vertices, label pairs, and incident edges.
SmoothnessReport check_smoothness(const LabelCoverInstance& inst);

struct ExpansionCheck {
  double delta = 0.0;
  std::size_t subset_size = 0;     // round(delta |V|)
  std::uint64_t subsets_checked = 0;
  bool exhaustive = false;
  std::size_t min_induced_edges = 0;
  double required = 0.0;           // (delta'^2 / 2) |E| with delta' = size / |V|
  bool pass = true;
  std::vector<std::size_t> counterexample;  // a violating subset, if any
};

struct ExpansionReport {
  std::vector<ExpansionCheck> checks;
  bool pass = true;
};

inline constexpr std::size_t kExhaustiveExpansionVertices = 12;

/// Induced-edge lower bound for subsets of each size delta |V|. All subsets
/// are enumerated when |V| <= 12; otherwise `subset_samples` random subsets
/// per delta are drawn, which certifies only the sampled subsets.
ExpansionReport check_weak_expansion(const LabelCoverInstance& inst,
                                     const std::vector<double>& delta_grid,
                                     std::size_t subset_samples, std::uint64_t seed);

std::size_t induced_edges(const LabelCoverInstance& inst, const std::vector<bool>& in_subset);

}  // namespace ncg::labelcover
