#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/laminar.hpp"

namespace vcmin {

// outer \ (hole_1 u ... u hole_k). Outer ball and holes are balls of the
// governing family.
struct SwissCheese {
  ElementSet outer;
  std::vector<ElementSet> holes;

  std::size_t cost() const noexcept { return 1 + holes.size(); }

  ElementSet evaluate() const {
    ElementSet s = outer;
    for (const auto& h : holes) s -= h;
    return s;
  }

  friend bool operator==(const SwissCheese&, const SwissCheese&) = default;
};

// A list of cheeses meant to be pairwise disjoint. Complexity is always
// recomputed from the cheeses.
struct CheeseDecomposition {
  std::size_t ground_size = 0;
  std::vector<SwissCheese> cheeses;

  // Number of outer balls plus number of holes.
  std::size_t complexity() const noexcept {
    std::size_t c = 0;
    for (const auto& ch : cheeses) c += ch.cost();
    return c;
  }

  template <typename F>
  void for_each_ball(F&& f) const {
    for (const auto& ch : cheeses) {
      f(ch.outer);
      for (const auto& h : ch.holes) f(h);
    }
  }

  friend bool operator==(const CheeseDecomposition&, const CheeseDecomposition&) = default;
};

// Union of the cheese evaluations. Throws DisjointnessViolation naming the
// first overlapping pair.
inline ElementSet evaluate(const CheeseDecomposition& d) {
  ElementSet acc(d.ground_size);
  std::vector<ElementSet> parts;
  parts.reserve(d.cheeses.size());
  for (std::size_t i = 0; i < d.cheeses.size(); ++i) {
    if (d.cheeses[i].outer.ground_size() != d.ground_size)
      throw MalformedInput("cheese " + std::to_string(i) + " has ground size " +
                           std::to_string(d.cheeses[i].outer.ground_size()) + ", expected " +
                           std::to_string(d.ground_size));
    auto part = d.cheeses[i].evaluate();
    if (acc.intersects(part)) {
      for (std::size_t j = 0; j < i; ++j)
        if (parts[j].intersects(part)) throw DisjointnessViolation(j, i);
    }
    acc |= part;
    parts.push_back(std::move(part));
  }
  return acc;
}

// Throws ValidationError when some ball of `d` is not a member of `family`.
inline void require_balls_in_family(const CheeseDecomposition& d, const DirectedFamily& family) {
  for (std::size_t i = 0; i < d.cheeses.size(); ++i) {
    const auto& ch = d.cheeses[i];
    if (!family.contains(ch.outer))
      throw ValidationError("cheese " + std::to_string(i) + " outer ball " + ch.outer.to_string() +
                            " is not a ball of the family");
    for (const auto& h : ch.holes)
      if (!family.contains(h))
        throw ValidationError("cheese " + std::to_string(i) + " hole " + h.to_string() +
                              " is not a ball of the family");
  }
}

struct ExpressibleVerdict {
  enum class Kind { yes, mixed_gap, outside_all_balls };
  Kind kind = Kind::yes;
  std::size_t node = 0;     // mixed_gap: the offending forest node
  std::size_t element = 0;  // mixed_gap: an element of the gap outside S; outside_all_balls: the element

  explicit operator bool() const noexcept { return kind == Kind::yes; }

  std::string describe(const LaminarForest& forest) const {
    switch (kind) {
      case Kind::yes:
        return "expressible";
      case Kind::mixed_gap:
        return "node " + std::to_string(node) + " " + forest.set(node).to_string() +
               " has a gap that is partly inside the target";
      case Kind::outside_all_balls:
        return "element " + std::to_string(element) + " lies outside all balls";
    }
    return {};
  }
};

// S is a disjoint union of cheeses iff no element of S lies outside every
// ball and every gap lies entirely inside or entirely outside S.
inline ExpressibleVerdict expressible(const ElementSet& target, const LaminarForest& forest) {
  if (target.ground_size() != forest.ground_size())
    throw MalformedInput("target ground size " + std::to_string(target.ground_size()) +
                         " does not match forest ground size " + std::to_string(forest.ground_size()));
  const auto& root_gap = forest.gap(LaminarForest::kRoot);
  if (root_gap.intersects(target)) {
    return {ExpressibleVerdict::Kind::outside_all_balls, LaminarForest::kRoot,
            (root_gap & target).first()};
  }
  for (auto v : forest.preorder()) {
    if (v == LaminarForest::kRoot) continue;
    const auto& gap = forest.gap(v);
    const auto inside = gap.intersection_size(target);
    if (inside != 0 && inside != gap.size())
      return {ExpressibleVerdict::Kind::mixed_gap, v, (gap - target).first()};
  }
  return {};
}

// In/out state per forest node. Nodes whose state differs from their
// parent's are flips; each flip is one outer ball (out -> in) or one hole
// (in -> out) of the induced decomposition.
struct FlipLabeling {
  std::vector<bool> in;

  std::vector<std::size_t> flips(const LaminarForest& forest) const {
    std::vector<std::size_t> out;
    for (auto v : forest.preorder())
      if (v != LaminarForest::kRoot && in[v] != in[forest.parent(v)]) out.push_back(v);
    return out;
  }

  // The labeling describes `target`: root out, and every node with a
  // nonempty gap is in exactly when its gap lies inside the target.
  bool consistent_with(const ElementSet& target, const LaminarForest& forest) const {
    if (in.size() != forest.node_count() || in[LaminarForest::kRoot]) return false;
    for (std::size_t v = 0; v < forest.node_count(); ++v) {
      const auto& gap = forest.gap(v);
      if (gap.empty()) continue;
      if (in[v] ? !gap.is_subset_of(target) : gap.intersects(target)) return false;
    }
    return true;
  }
};

// State of each node is the parity of flip nodes on its root path.
inline FlipLabeling labeling_from_flips(const LaminarForest& forest, std::span<const std::size_t> flip_nodes) {
  std::vector<bool> flip(forest.node_count(), false);
  for (auto v : flip_nodes) {
    if (v == LaminarForest::kRoot || v >= forest.node_count())
      throw MalformedInput("flip node " + std::to_string(v) + " is not a ball node");
    flip[v] = true;
  }
  FlipLabeling lab;
  lab.in.assign(forest.node_count(), false);
  for (auto v : forest.preorder()) {
    if (v == LaminarForest::kRoot) continue;
    lab.in[v] = lab.in[forest.parent(v)] != flip[v];
  }
  return lab;
}

// Out -> in flips become outer balls (in preorder); each in -> out flip is a
// hole of the nearest out -> in flip above it.
inline CheeseDecomposition reconstruct(const LaminarForest& forest, const FlipLabeling& lab) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  CheeseDecomposition d{forest.ground_size(), {}};
  std::vector<std::size_t> cheese_of(forest.node_count(), kNone);
  for (auto v : forest.preorder()) {
    if (v == LaminarForest::kRoot) continue;
    const auto p = forest.parent(v);
    if (lab.in[v] && !lab.in[p]) {
      cheese_of[v] = d.cheeses.size();
      d.cheeses.push_back({forest.set(v), {}});
    } else if (lab.in[v]) {
      cheese_of[v] = cheese_of[p];
    } else if (lab.in[p]) {
      d.cheeses[cheese_of[p]].holes.push_back(forest.set(v));
    }
  }
  return d;
}

namespace detail {

// dp[v][s] = least number of flips inside the subtree of v given that v's
// parent has state s (0 = out, 1 = in).
struct FlipDp {
  std::vector<std::array<std::size_t, 2>> dp;
  std::vector<std::array<std::size_t, 2>> below;  // sum over children of dp[c][own state]
  std::vector<std::array<bool, 2>> allowed;
};

inline FlipDp run_flip_dp(const ElementSet& target, const LaminarForest& forest) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
  const auto k = forest.node_count();
  FlipDp r;
  r.dp.assign(k, {kInf, kInf});
  r.below.assign(k, {0, 0});
  r.allowed.assign(k, {true, true});
  for (std::size_t v = 0; v < k; ++v) {
    const auto& gap = forest.gap(v);
    if (v == LaminarForest::kRoot) {
      r.allowed[v] = {true, false};
    } else if (!gap.empty()) {
      const bool inside = gap.is_subset_of(target);
      r.allowed[v] = {!inside, inside};
    }
  }
  const auto& order = forest.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = *it;
    for (auto c : forest.children(v))
      for (int s = 0; s < 2; ++s) r.below[v][s] += r.dp[c][s];
    for (int ps = 0; ps < 2; ++ps)
      for (int s = 0; s < 2; ++s)
        if (r.allowed[v][s])
          r.dp[v][ps] = std::min(r.dp[v][ps], static_cast<std::size_t>(s != ps) + r.below[v][s]);
  }
  return r;
}

inline void require_expressible(const ElementSet& target, const LaminarForest& forest) {
  auto verdict = expressible(target, forest);
  if (!verdict) throw Inexpressible(verdict.describe(forest));
}

}  // namespace detail

// Least number of outer balls plus holes over disjoint cheese
// decompositions of `target`. Throws Inexpressible with the witness.
inline std::size_t min_complexity(const ElementSet& target, const LaminarForest& forest) {
  detail::require_expressible(target, forest);
  auto r = detail::run_flip_dp(target, forest);
  return r.below[LaminarForest::kRoot][0];
}

inline std::optional<std::size_t> try_min_complexity(const ElementSet& target, const LaminarForest& forest) {
  if (!expressible(target, forest)) return std::nullopt;
  return detail::run_flip_dp(target, forest).below[LaminarForest::kRoot][0];
}

// A labeling attaining the minimum. Free nodes (empty gap) keep their
// parent's state whenever that ties.
inline FlipLabeling optimal_labeling(const ElementSet& target, const LaminarForest& forest) {
  detail::require_expressible(target, forest);
  auto r = detail::run_flip_dp(target, forest);
  FlipLabeling lab;
  lab.in.assign(forest.node_count(), false);
  for (auto v : forest.preorder()) {
    if (v == LaminarForest::kRoot) continue;
    const int ps = lab.in[forest.parent(v)] ? 1 : 0;
    int best = -1;
    std::size_t best_cost = 0;
    for (int s : {ps, 1 - ps}) {
      if (!r.allowed[v][s]) continue;
      const auto cost = static_cast<std::size_t>(s != ps) + r.below[v][s];
      if (best < 0 || cost < best_cost) {
        best = s;
        best_cost = cost;
      }
    }
    lab.in[v] = best == 1;
  }
  return lab;
}

// Explicit decomposition with complexity equal to min_complexity.
inline CheeseDecomposition decompose(const ElementSet& target, const LaminarForest& forest) {
  return reconstruct(forest, optimal_labeling(target, forest));
}

// Intersect every ball with `keep`. Holes that vanish are dropped, repeated
// holes merged, and cheeses whose restricted evaluation is empty removed.
inline CheeseDecomposition restrict_decomposition(const CheeseDecomposition& d, const ElementSet& keep) {
  if (keep.ground_size() != d.ground_size)
    throw MalformedInput("restriction set ground size " + std::to_string(keep.ground_size()) +
                         " does not match decomposition ground size " + std::to_string(d.ground_size));
  CheeseDecomposition out{d.ground_size, {}};
  for (const auto& ch : d.cheeses) {
    SwissCheese r{ch.outer & keep, {}};
    if (r.outer.empty()) continue;
    for (const auto& h : ch.holes) {
      auto rh = h & keep;
      if (rh.empty() || std::find(r.holes.begin(), r.holes.end(), rh) != r.holes.end()) continue;
      r.holes.push_back(std::move(rh));
    }
    if (r.evaluate().empty()) continue;
    out.cheeses.push_back(std::move(r));
  }
  return out;
}

// As above, additionally checking every surviving ball lies in the
// restricted family.
inline CheeseDecomposition restrict_decomposition(const CheeseDecomposition& d, const ElementSet& keep,
                                                  const DirectedFamily& restricted_family) {
  auto out = restrict_decomposition(d, keep);
  require_balls_in_family(out, restricted_family);
  return out;
}

}  // namespace vcmin
