#pragma once

// Shared fixtures: the seeded instance corpus, the exhaustive small-family
// sweep, and a few deliberately naive reference routines.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <vcmin/vcmin.hpp>

namespace vcmin::fixtures {

inline ElementSet interval(std::size_t n, std::size_t lo, std::size_t hi) {
  ElementSet s(n);
  for (auto i = lo; i < hi; ++i) s.insert(i);
  return s;
}

// Seeded corpus. Spec i gets seed derive(base, i); shape parameters cycle so
// every kind meets every size and every bound 1..8.
inline std::vector<GeneratorSpec> corpus_specs(std::size_t count, std::uint64_t base = 20240601) {
  static const std::pair<std::size_t, std::size_t> kSizes[] = {{16, 16},  {32, 64},  {64, 32},   {128, 128},
                                                               {256, 64}, {512, 512}, {48, 48},  {100, 300},
                                                               {512, 40}, {24, 512}, {200, 200}, {8, 8}};
  static const GeneratorKind kKinds[] = {GeneratorKind::forest, GeneratorKind::padic, GeneratorKind::laminar_flip};
  std::vector<GeneratorSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorSpec g;
    g.kind = kKinds[i % 3];
    const auto [l, r] = kSizes[(i / 3) % std::size(kSizes)];
    g.left = l;
    g.right = r;
    g.max_flips = (i / 36) % 8;
    g.branching = static_cast<std::uint32_t>(2 + (i / 7) % 3);
    g.depth = 2 + (i / 5) % 5;
    g.seed = SplitMix64::derive(base, i);
    out.push_back(g);
  }
  return out;
}

// Blocks of 32 elements starting at 0: each block is a ball holding a
// 16-element ball of singletons and two 8-element balls. Flips sampled over
// this family land mostly on singletons, so the recursive branch fires often
// and several levels deep.
inline DirectedFamily block_family(std::size_t n, std::size_t blocks) {
  std::vector<ElementSet> balls;
  for (std::size_t k = 0; k < blocks; ++k) {
    const auto b = 32 * k;
    balls.push_back(interval(n, b, b + 32));
    balls.push_back(interval(n, b, b + 16));
    for (std::size_t i = 0; i < 16; ++i) balls.push_back(interval(n, b + i, b + i + 1));
    balls.push_back(interval(n, b + 16, b + 24));
    balls.push_back(interval(n, b + 24, b + 32));
  }
  return DirectedFamily(n, std::move(balls));
}

// Definition-level check: every pair disjoint or nested.
inline bool naive_directed(const std::vector<ElementSet>& balls) {
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const auto& a = balls[i];
      const auto& b = balls[j];
      if (!(a & b).empty() && !a.is_subset_of(b) && !b.is_subset_of(a)) return false;
    }
  return true;
}

// Best min side over all pairs (X', Y') of nonempty subsets; tiny inputs only.
inline std::size_t naive_best_min_side(const ExtractionInstance& inst) {
  std::size_t best = 0;
  for (std::size_t xm = 1; xm < (std::size_t{1} << inst.left_size); ++xm)
    for (std::size_t ym = 1; ym < (std::size_t{1} << inst.right_size); ++ym) {
      bool all_in = true;
      bool all_out = true;
      for (std::size_t a = 0; a < inst.left_size; ++a) {
        if (!((xm >> a) & 1U)) continue;
        for (std::size_t y = 0; y < inst.right_size; ++y) {
          if (!((ym >> y) & 1U)) continue;
          (inst.adjacency[a].contains(y) ? all_out : all_in) = false;
        }
      }
      if (all_in || all_out)
        best = std::max<std::size_t>(best, std::min(__builtin_popcountll(xm), __builtin_popcountll(ym)));
    }
  return best;
}

// Rooted tree on nodes 0..k (node 0 the virtual root) given by parent[i] < i.
struct Shape {
  std::vector<std::size_t> parent;  // parent[0] unused
};

namespace detail {

inline std::string encode(std::size_t v, const std::vector<std::vector<std::size_t>>& children,
                          const std::vector<std::size_t>* gaps) {
  std::vector<std::string> parts;
  for (auto c : children[v]) parts.push_back(encode(c, children, gaps));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  if (gaps) s += std::to_string((*gaps)[v]);
  for (auto& p : parts) s += p;
  return s + ")";
}

inline std::vector<std::vector<std::size_t>> children_of(const Shape& shape) {
  std::vector<std::vector<std::size_t>> ch(shape.parent.size());
  for (std::size_t i = 1; i < shape.parent.size(); ++i) ch[shape.parent[i]].push_back(i);
  return ch;
}

}  // namespace detail

// All rooted trees with k + 1 nodes, one per isomorphism class.
inline std::vector<Shape> tree_shapes(std::size_t k) {
  std::vector<Shape> out;
  std::set<std::string> seen;
  Shape cur;
  cur.parent.assign(k + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i > k) {
      if (seen.insert(detail::encode(0, detail::children_of(cur), nullptr)).second) out.push_back(cur);
      return;
    }
    for (std::size_t p = 0; p < i; ++p) {
      cur.parent[i] = p;
      rec(i + 1);
    }
  };
  rec(1);
  return out;
}

struct SmallFamily {
  DirectedFamily family;
  std::vector<ElementSet> gaps;  // gaps of ball nodes with a nonempty gap
};

// Every directed family with at most `max_balls` balls on a ground set of
// 1..max_ground elements, once per relabelling class. A family is a rooted
// tree annotated with gap sizes; a ball with fewer than two children needs a
// nonempty gap (otherwise it is empty or equals its child).
inline void for_each_small_family(std::size_t max_balls, std::size_t max_ground,
                                  const std::function<void(const SmallFamily&)>& visit) {
  for (std::size_t k = 0; k <= max_balls; ++k) {
    std::set<std::string> seen;
    for (const auto& shape : tree_shapes(k)) {
      const auto children = detail::children_of(shape);
      std::vector<std::size_t> gaps(k + 1, 0);
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t used) {
        if (v > k) {
          if (used == 0 || !seen.insert(detail::encode(0, children, &gaps)).second) return;
          std::vector<ElementSet> node_sets(k + 1, ElementSet(used));
          std::vector<ElementSet> gap_sets(k + 1, ElementSet(used));
          std::size_t next = 0;
          for (std::size_t u = 0; u <= k; ++u)
            for (std::size_t e = 0; e < gaps[u]; ++e) gap_sets[u].insert(next++);
          for (std::size_t u = k + 1; u-- > 0;) {
            node_sets[u] |= gap_sets[u];
            if (u != 0) node_sets[shape.parent[u]] |= node_sets[u];
          }
          SmallFamily f{DirectedFamily(used, std::vector<ElementSet>(node_sets.begin() + 1, node_sets.end())), {}};
          for (std::size_t u = 1; u <= k; ++u)
            if (!gap_sets[u].empty()) f.gaps.push_back(gap_sets[u]);
          visit(f);
          return;
        }
        const std::size_t lo = (v != 0 && children[v].size() < 2) ? 1 : 0;
        for (std::size_t g = lo; used + g <= max_ground; ++g) {
          gaps[v] = g;
          rec(v + 1, used + g);
        }
        gaps[v] = 0;
      };
      rec(0, 0);
    }
  }
}

// Unions of every subset of the given gaps: exactly the expressible targets.
inline std::vector<ElementSet> gap_unions(const SmallFamily& f) {
  std::vector<ElementSet> out;
  const auto n = f.family.ground_size();
  for (std::size_t m = 0; m < (std::size_t{1} << f.gaps.size()); ++m) {
    ElementSet s(n);
    for (std::size_t i = 0; i < f.gaps.size(); ++i)
      if ((m >> i) & 1U) s |= f.gaps[i];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace vcmin::fixtures
