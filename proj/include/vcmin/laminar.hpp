#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"

namespace vcmin {

// Result of a directedness check. When not directed, `witness` holds the
// indices (into the checked list, ascending) of two balls that overlap
// without either containing the other.
struct DirectedVerdict {
  bool directed = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

namespace detail {

inline void require_same_ground(std::span<const ElementSet> balls) {
  for (std::size_t i = 1; i < balls.size(); ++i)
    if (balls[i].ground_size() != balls[0].ground_size())
      throw MalformedInput("ball " + std::to_string(i) + " has ground size " +
                           std::to_string(balls[i].ground_size()) + ", expected " +
                           std::to_string(balls[0].ground_size()));
}

inline std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace detail

// Pairwise reference check, O(k^2) set comparisons. Reports the first
// violating pair in (i, j) lexicographic order.
inline DirectedVerdict check_directed_pairwise(std::span<const ElementSet> balls) {
  detail::require_same_ground(balls);
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const auto& a = balls[i];
      const auto& b = balls[j];
      if (a.intersects(b) && !a.is_subset_of(b) && !b.is_subset_of(a)) return {false, std::pair{i, j}};
    }
  return {};
}

// Sweep check in O(sum of ball sizes + k log k). Balls are visited largest
// first; each element remembers the smallest ball seen so far containing it.
// A new ball is compatible with everything before it iff all its elements
// share that owner.
inline DirectedVerdict check_directed(std::span<const ElementSet> balls) {
  detail::require_same_ground(balls);
  if (balls.empty()) return {};
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const std::size_t n = balls[0].ground_size();

  std::vector<std::size_t> order(balls.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return balls[a].size() > balls[b].size(); });

  std::vector<std::size_t> owner(n, kNone);
  for (auto idx : order) {
    const auto& ball = balls[idx];
    const std::size_t e1 = ball.first();
    if (e1 == n) continue;
    const std::size_t p1 = owner[e1];
    std::optional<DirectedVerdict> bad;
    ball.for_each([&](std::size_t e) {
      if (bad || owner[e] == p1) return;
      const std::size_t p2 = owner[e];
      // e1 and e have different smallest owners; the ball overlaps one of them.
      std::size_t culprit;
      if (p1 == kNone)
        culprit = p2;
      else if (p2 == kNone || !balls[p1].contains(e))
        culprit = p1;
      else
        culprit = p2;
      bad = DirectedVerdict{false, detail::ordered(idx, culprit)};
    });
    if (bad) return *bad;
    ball.for_each([&](std::size_t e) { owner[e] = idx; });
  }
  return {};
}

// A validated directed family over ground {0..n-1}. Empty balls are dropped,
// duplicates collapsed, and the remaining balls stored in canonical order
// (size descending, then lexicographic).
class DirectedFamily {
 public:
  DirectedFamily() = default;
  explicit DirectedFamily(std::size_t ground_size) : ground_size_(ground_size) {}

  // Throws NotDirected (indices refer to `balls` as given) or MalformedInput.
  DirectedFamily(std::size_t ground_size, std::vector<ElementSet> balls) : ground_size_(ground_size) {
    for (std::size_t i = 0; i < balls.size(); ++i)
      if (balls[i].ground_size() != ground_size)
        throw MalformedInput("ball " + std::to_string(i) + " has ground size " +
                             std::to_string(balls[i].ground_size()) + ", family ground size is " +
                             std::to_string(ground_size));
    auto verdict = check_directed(balls);
    if (!verdict.directed) {
      auto [i, j] = *verdict.witness;
      throw NotDirected(i, j,
                        "balls " + std::to_string(i) + " " + balls[i].to_string() + " and " +
                            std::to_string(j) + " " + balls[j].to_string() +
                            " overlap without nesting");
    }
    std::erase_if(balls, [](const ElementSet& b) { return b.empty(); });
    std::sort(balls.begin(), balls.end(), SizeDescLex{});
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    balls_ = std::move(balls);
    for (std::size_t i = 0; i < balls_.size(); ++i) index_.emplace(balls_[i], i);
  }

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::size_t size() const noexcept { return balls_.size(); }
  bool empty() const noexcept { return balls_.empty(); }
  const std::vector<ElementSet>& balls() const noexcept { return balls_; }
  const ElementSet& operator[](std::size_t i) const { return balls_.at(i); }

  std::optional<std::size_t> index_of(const ElementSet& ball) const {
    auto it = index_.find(ball);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const ElementSet& ball) const { return index_.contains(ball); }

  friend bool operator==(const DirectedFamily& a, const DirectedFamily& b) {
    return a.ground_size_ == b.ground_size_ && a.balls_ == b.balls_;
  }

 private:
  std::size_t ground_size_ = 0;
  std::vector<ElementSet> balls_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
};

// Intersect every ball with `keep`; empties dropped, duplicates merged.
inline DirectedFamily restrict_family(const DirectedFamily& family, const ElementSet& keep) {
  if (keep.ground_size() != family.ground_size())
    throw MalformedInput("restriction set ground size " + std::to_string(keep.ground_size()) +
                         " does not match family ground size " + std::to_string(family.ground_size()));
  std::vector<ElementSet> out;
  out.reserve(family.size());
  for (const auto& b : family.balls()) out.push_back(b & keep);
  return DirectedFamily(family.ground_size(), std::move(out));
}

// Containment forest of a directed family. Node 0 is the virtual root
// standing for the whole ground set; node i >= 1 is family ball i - 1, so
// node order inherits the family's canonical order.
class LaminarForest {
 public:
  static constexpr std::size_t kRoot = 0;

  explicit LaminarForest(const DirectedFamily& family)
      : ground_size_(family.ground_size()), family_(family) {
    const std::size_t k = family.size() + 1;
    sets_.reserve(k);
    sets_.push_back(ElementSet::full(ground_size_));
    for (const auto& b : family.balls()) sets_.push_back(b);
    parent_.assign(k, kRoot);
    children_.assign(k, {});

    // Canonical order is size descending, so every ball's parent precedes it.
    std::vector<std::size_t> owner(ground_size_, kRoot);
    for (std::size_t v = 1; v < k; ++v) {
      parent_[v] = owner[sets_[v].first()];
      children_[parent_[v]].push_back(v);
      sets_[v].for_each([&](std::size_t e) { owner[e] = v; });
    }
    gaps_.assign(k, ElementSet(ground_size_));
    for (std::size_t e = 0; e < ground_size_; ++e) gaps_[owner[e]].insert(e);

    preorder_.reserve(k);
    std::vector<std::size_t> stack{kRoot};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      preorder_.push_back(v);
      for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back(*it);
    }
  }

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::size_t node_count() const noexcept { return sets_.size(); }
  const DirectedFamily& family() const noexcept { return family_; }

  const ElementSet& set(std::size_t v) const { return sets_.at(v); }
  const ElementSet& gap(std::size_t v) const { return gaps_.at(v); }
  // The virtual root is its own parent.
  std::size_t parent(std::size_t v) const { return parent_.at(v); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
  // Parents before children, siblings in canonical order.
  const std::vector<std::size_t>& preorder() const noexcept { return preorder_; }

  // Node holding the given ball, if it is a member of the family.
  std::optional<std::size_t> node_of(const ElementSet& ball) const {
    auto i = family_.index_of(ball);
    if (!i) return std::nullopt;
    return *i + 1;
  }

 private:
  std::size_t ground_size_;
  DirectedFamily family_;
  std::vector<ElementSet> sets_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<ElementSet> gaps_;
  std::vector<std::size_t> preorder_;
};

inline LaminarForest build_forest(const DirectedFamily& family) { return LaminarForest(family); }

// Validates the raw list first; throws NotDirected with the witness pair.
inline LaminarForest build_forest(std::size_t ground_size, std::vector<ElementSet> balls) {
  return LaminarForest(DirectedFamily(ground_size, std::move(balls)));
}

}  // namespace vcmin
