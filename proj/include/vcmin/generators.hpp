#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/laminar.hpp"
#include "vcmin/random.hpp"

namespace vcmin {

// Rooted forest on vertices {0..n-1}.
class RootedForest {
 public:
  RootedForest() = default;

  // Throws ValidationError on out-of-range parents or cycles.
  explicit RootedForest(std::vector<std::optional<std::size_t>> parent) : parent_(std::move(parent)) {
    const auto n = parent_.size();
    children_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
      if (!parent_[v]) continue;
      if (*parent_[v] >= n || *parent_[v] == v)
        throw ValidationError("vertex " + std::to_string(v) + " has invalid parent");
      children_[*parent_[v]].push_back(v);
    }
    // Every vertex must reach a root within n steps.
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t cur = v;
      std::size_t steps = 0;
      while (parent_[cur]) {
        cur = *parent_[cur];
        if (++steps > n) throw ValidationError("parent relation has a cycle through vertex " + std::to_string(v));
      }
    }
  }

  // Roots each component at its minimum-index vertex and orients edges by
  // breadth-first search from it.
  static RootedForest from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n || u == v) throw ValidationError("bad forest edge");
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<std::optional<std::size_t>> parent(n);
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::deque<std::size_t> queue{root};
      while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto w : adj[u]) {
          if (seen[w]) {
            if (parent[u] != w) throw ValidationError("edge list contains a cycle");
            continue;
          }
          seen[w] = true;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    return RootedForest(std::move(parent));
  }

  std::size_t size() const noexcept { return parent_.size(); }
  const std::optional<std::size_t>& parent(std::size_t v) const { return parent_.at(v); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }

 private:
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<std::size_t>> children_;
};

// Random forest on n vertices: vertex i (in a shuffled labelling) attaches
// to a uniformly random earlier vertex with probability 7/8.
inline RootedForest random_forest(std::size_t n, SplitMix64 rng) {
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  rng.shuffle(label);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < n; ++i)
    if (rng.chance(7, 8)) edges.emplace_back(label[i], label[rng.below(i)]);
  return RootedForest::from_edges(n, edges);
}

// {predecessor(v)} and successors(v) for every vertex; empties dropped.
inline DirectedFamily forest_family(const RootedForest& h) {
  const auto n = h.size();
  std::vector<ElementSet> balls;
  for (std::size_t v = 0; v < n; ++v) {
    if (h.parent(v)) balls.push_back(ElementSet(n, {*h.parent(v)}));
    if (!h.children(v).empty()) balls.push_back(ElementSet::from_members(n, h.children(v)));
  }
  return DirectedFamily(n, std::move(balls));
}

// Bipartite graph between disjoint vertex sets X and Y of a forest, with
// E(a) = ({pred(a)} u succ(a)) n Y. Left index i is the i-th smallest
// vertex of X, right index j the j-th smallest of Y. Bound is 3.
inline ExtractionInstance forest_instance(const RootedForest& h, std::vector<std::size_t> x,
                                          std::vector<std::size_t> y) {
  const auto n = h.size();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> right_index(n, kNone);
  std::vector<bool> in_x(n, false);
  for (auto v : x) {
    if (v >= n) throw ValidationError("X vertex " + std::to_string(v) + " out of range");
    if (in_x[v]) throw ValidationError("X lists vertex " + std::to_string(v) + " twice");
    in_x[v] = true;
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    const auto v = y[j];
    if (v >= n) throw ValidationError("Y vertex " + std::to_string(v) + " out of range");
    if (in_x[v]) throw ValidationError("X and Y share vertex " + std::to_string(v));
    if (right_index[v] != kNone) throw ValidationError("Y lists vertex " + std::to_string(v) + " twice");
    right_index[v] = j;
  }
  const auto m = y.size();
  auto project = [&](std::span<const std::size_t> vertices) {
    ElementSet s(m);
    for (auto v : vertices)
      if (right_index[v] != kNone) s.insert(right_index[v]);
    return s;
  };

  std::vector<ElementSet> balls;
  for (std::size_t v = 0; v < n; ++v) {
    if (h.parent(v)) {
      const std::size_t p = *h.parent(v);
      balls.push_back(project(std::span<const std::size_t>(&p, 1)));
    }
    if (!h.children(v).empty()) balls.push_back(project(h.children(v)));
  }

  ExtractionInstance inst;
  inst.left_size = x.size();
  inst.right_size = m;
  inst.family = DirectedFamily(m, std::move(balls));
  inst.bound = 3;
  for (auto a : x) {
    CheeseDecomposition d{m, {}};
    if (h.parent(a)) {
      const std::size_t p = *h.parent(a);
      auto pred = project(std::span<const std::size_t>(&p, 1));
      if (!pred.empty()) d.cheeses.push_back({std::move(pred), {}});
    }
    auto succ = project(h.children(a));
    if (!succ.empty()) d.cheeses.push_back({std::move(succ), {}});
    inst.adjacency.push_back(evaluate(d));
    inst.decomps.push_back(std::move(d));
  }
  return inst;
}

// Balls are the prefix classes of the given base-p digit strings, for every
// prefix length 1..depth.
inline DirectedFamily padic_family_from_digits(const std::vector<std::vector<std::uint32_t>>& digits) {
  const auto n = digits.size();
  const std::size_t depth = n == 0 ? 0 : digits[0].size();
  std::vector<ElementSet> balls;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (digits[i].size() != depth) throw MalformedInput("digit strings differ in length");
      order[i] = i;
    }
    auto key_less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(digits[a].begin(), digits[a].begin() + static_cast<std::ptrdiff_t>(len),
                                          digits[b].begin(), digits[b].begin() + static_cast<std::ptrdiff_t>(len));
    };
    std::stable_sort(order.begin(), order.end(), key_less);
    for (std::size_t i = 0; i < n;) {
      ElementSet ball(n);
      std::size_t j = i;
      while (j < n && !key_less(order[i], order[j])) ball.insert(order[j++]);
      balls.push_back(std::move(ball));
      i = j;
    }
  }
  return DirectedFamily(n, std::move(balls));
}

// Each of n elements gets a uniformly random base-p string of length depth.
inline DirectedFamily padic_family(std::uint32_t p, std::size_t depth, std::size_t n, SplitMix64 rng) {
  if (p < 2) throw MalformedInput("padic base must be at least 2");
  if (depth < 1) throw MalformedInput("padic depth must be at least 1");
  std::vector<std::vector<std::uint32_t>> digits(n, std::vector<std::uint32_t>(depth));
  for (auto& s : digits)
    for (auto& d : s) d = static_cast<std::uint32_t>(rng.below(p));
  return padic_family_from_digits(digits);
}

// Random laminar family by recursive splitting: each set is shuffled and cut
// into between 1 and `branching` chunks; each chunk becomes a ball with
// probability 3/4 and is split again until `depth` levels are used.
inline DirectedFamily random_laminar_family(std::size_t n, std::uint32_t branching, std::size_t depth,
                                            SplitMix64 rng) {
  if (branching < 1) throw MalformedInput("branching must be positive");
  std::vector<ElementSet> balls;
  struct Pending {
    std::vector<std::size_t> elems;
    std::size_t level;
  };
  std::vector<Pending> stack;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  stack.push_back({std::move(all), 0});
  while (!stack.empty()) {
    auto cur = std::move(stack.back());
    stack.pop_back();
    if (cur.level >= depth || cur.elems.empty()) continue;
    rng.shuffle(cur.elems);
    const auto parts = std::min<std::size_t>(rng.between(1, branching), cur.elems.size());
    auto cuts = rng.sample(cur.elems.size() - 1, parts - 1);
    for (auto& c : cuts) ++c;
    cuts.push_back(0);
    cuts.push_back(cur.elems.size());
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      std::vector<std::size_t> chunk(cur.elems.begin() + static_cast<std::ptrdiff_t>(cuts[k]),
                                     cur.elems.begin() + static_cast<std::ptrdiff_t>(cuts[k + 1]));
      if (rng.chance(3, 4)) balls.push_back(ElementSet::from_members(n, chunk));
      stack.push_back({std::move(chunk), cur.level + 1});
    }
  }
  return DirectedFamily(n, std::move(balls));
}

// Left vertices whose neighbourhoods come from random flip sets of at most
// `max_flips` forest nodes. The reconstruction of each labeling is its
// decomposition, so complexity <= max_flips and bound N = max_flips + 1.
// With `nonempty`, flip sets giving an empty neighbourhood are resampled
// (up to 32 attempts). Vertex a draws from stream rng.split(a).
inline ExtractionInstance flip_sample_graph(const DirectedFamily& family, std::size_t left_size,
                                            std::size_t max_flips, SplitMix64 rng, bool nonempty = false) {
  const LaminarForest forest(family);
  const auto balls = forest.node_count() - 1;
  ExtractionInstance inst;
  inst.left_size = left_size;
  inst.right_size = family.ground_size();
  inst.family = family;
  inst.bound = max_flips + 1;
  for (std::size_t a = 0; a < left_size; ++a) {
    auto stream = rng.split(a);
    FlipLabeling lab;
    ElementSet adj(inst.right_size);
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto count = std::min<std::size_t>(stream.below(max_flips + 1), balls);
      auto picks = stream.sample(balls, count);
      for (auto& v : picks) ++v;
      lab = labeling_from_flips(forest, picks);
      adj = ElementSet(inst.right_size);
      for (std::size_t v = 0; v < forest.node_count(); ++v)
        if (lab.in[v]) adj |= forest.gap(v);
      if (!nonempty || !adj.empty() || max_flips == 0 || balls == 0) break;
    }
    inst.adjacency.push_back(std::move(adj));
    inst.decomps.push_back(reconstruct(forest, lab));
  }
  return inst;
}

enum class GeneratorKind { forest, padic, laminar_flip };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::forest:
      return "forest";
    case GeneratorKind::padic:
      return "padic";
    case GeneratorKind::laminar_flip:
      return "laminar-flip";
  }
  return "?";
}

inline GeneratorKind parse_generator_kind(const std::string& s) {
  if (s == "forest") return GeneratorKind::forest;
  if (s == "padic") return GeneratorKind::padic;
  if (s == "laminar-flip") return GeneratorKind::laminar_flip;
  throw MalformedInput("unknown generator kind '" + s + "'");
}

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::laminar_flip;
  std::size_t left = 16;
  std::size_t right = 16;
  std::uint32_t branching = 3;  // p
  std::size_t depth = 3;
  std::size_t max_flips = 3;
  std::uint64_t seed = 0;
  bool nonempty = true;

  void validate() const {
    if (left == 0 || right == 0) throw MalformedInput("--left and --right must be positive");
    if (kind == GeneratorKind::padic && branching < 2) throw MalformedInput("--p must be at least 2");
    if (kind != GeneratorKind::forest && branching < 1) throw MalformedInput("--p must be positive");
    if (kind != GeneratorKind::forest && depth < 1) throw MalformedInput("--depth must be positive");
  }
};

// Instance for one spec; deterministic in (spec, seed).
inline ExtractionInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  const SplitMix64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::forest: {
      const auto n = spec.left + spec.right;
      auto h = random_forest(n, rng.split(0));
      auto order = SplitMix64(rng.split(1)).sample(n, n);
      std::vector<std::size_t> x(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.left));
      std::vector<std::size_t> y(order.begin() + static_cast<std::ptrdiff_t>(spec.left), order.end());
      return forest_instance(h, std::move(x), std::move(y));
    }
    case GeneratorKind::padic: {
      auto family = padic_family(spec.branching, spec.depth, spec.right, rng.split(0));
      return flip_sample_graph(family, spec.left, spec.max_flips, rng.split(1), spec.nonempty);
    }
    case GeneratorKind::laminar_flip: {
      auto family = random_laminar_family(spec.right, spec.branching, spec.depth, rng.split(0));
      return flip_sample_graph(family, spec.left, spec.max_flips, rng.split(1), spec.nonempty);
    }
  }
  throw MalformedInput("unknown generator kind");
}

}  // namespace vcmin
