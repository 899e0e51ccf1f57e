#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/laminar.hpp"

namespace vcmin {

// Bipartite graph (X, Y; E) with X = {0..left_size-1}, Y = {0..right_size-1},
// a directed family over Y, one decomposition per left vertex and the
// complexity bound N (every decomposition has complexity < N).
struct ExtractionInstance {
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::vector<ElementSet> adjacency;  // E(a, Y) per left vertex
  DirectedFamily family;
  std::vector<CheeseDecomposition> decomps;
  std::size_t bound = 1;

  bool adjacent(std::size_t a, std::size_t y) const { return adjacency.at(a).contains(y); }

  friend bool operator==(const ExtractionInstance&, const ExtractionInstance&) = default;
};

// Provenance carried through serialization.
struct InstanceMetadata {
  std::string generator;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

// Shape checks only: sizes and ground sets agree.
inline void validate_shape(const ExtractionInstance& inst) {
  if (inst.adjacency.size() != inst.left_size)
    throw ValidationError("adjacency has " + std::to_string(inst.adjacency.size()) + " rows, left size is " +
                          std::to_string(inst.left_size));
  if (inst.family.ground_size() != inst.right_size)
    throw ValidationError("family ground size " + std::to_string(inst.family.ground_size()) +
                          " does not match right size " + std::to_string(inst.right_size));
  for (std::size_t a = 0; a < inst.left_size; ++a)
    if (inst.adjacency[a].ground_size() != inst.right_size)
      throw ValidationError("vertex " + std::to_string(a) + ": adjacency ground size mismatch");
}

// Full invariant check: every decomposition uses family balls, evaluates
// disjointly to the vertex's neighbourhood and has complexity < bound.
inline void validate(const ExtractionInstance& inst) {
  validate_shape(inst);
  if (inst.bound == 0) throw ValidationError("bound N must be positive");
  if (inst.decomps.size() != inst.left_size)
    throw ValidationError("decompositions given for " + std::to_string(inst.decomps.size()) +
                          " vertices, left size is " + std::to_string(inst.left_size));
  for (std::size_t a = 0; a < inst.left_size; ++a) {
    const auto& d = inst.decomps[a];
    const std::string who = "vertex " + std::to_string(a) + ": ";
    if (d.ground_size != inst.right_size) throw ValidationError(who + "decomposition ground size mismatch");
    try {
      require_balls_in_family(d, inst.family);
      if (evaluate(d) != inst.adjacency[a])
        throw ValidationError("decomposition does not evaluate to the neighbourhood");
    } catch (const Error& e) {
      throw ValidationError(who + e.what());
    }
    if (d.complexity() >= inst.bound)
      throw ValidationError(who + "decomposition complexity " + std::to_string(d.complexity()) +
                            " is not below bound " + std::to_string(inst.bound));
  }
}

// Per-vertex minimal complexity. Throws Inexpressible naming the vertex.
inline std::vector<std::size_t> vertex_complexities(const ExtractionInstance& inst) {
  validate_shape(inst);
  const LaminarForest forest(inst.family);
  std::vector<std::size_t> out(inst.left_size);
  for (std::size_t a = 0; a < inst.left_size; ++a) {
    auto verdict = expressible(inst.adjacency[a], forest);
    if (!verdict)
      throw Inexpressible("vertex " + std::to_string(a) + ": " + verdict.describe(forest));
    out[a] = *try_min_complexity(inst.adjacency[a], forest);
  }
  return out;
}

// Max over left vertices of the minimal complexity of their neighbourhood.
inline std::size_t graph_complexity(const ExtractionInstance& inst) {
  std::size_t m = 0;
  for (auto c : vertex_complexities(inst)) m = std::max(m, c);
  return m;
}

// Least N for which the instance has complexity < N.
inline std::size_t auto_bound(const ExtractionInstance& inst) { return graph_complexity(inst) + 1; }

// Fills in optimal decompositions for every vertex (and the bound when
// absent). Used for hand-written instances that only list adjacency.
inline void complete_decompositions(ExtractionInstance& inst, bool set_bound) {
  validate_shape(inst);
  const LaminarForest forest(inst.family);
  inst.decomps.clear();
  inst.decomps.reserve(inst.left_size);
  std::size_t worst = 0;
  for (std::size_t a = 0; a < inst.left_size; ++a) {
    auto verdict = expressible(inst.adjacency[a], forest);
    if (!verdict)
      throw Inexpressible("vertex " + std::to_string(a) + ": " + verdict.describe(forest));
    inst.decomps.push_back(decompose(inst.adjacency[a], forest));
    worst = std::max(worst, inst.decomps.back().complexity());
  }
  if (set_bound) inst.bound = worst + 1;
}

}  // namespace vcmin
