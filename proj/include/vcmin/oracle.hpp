#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/extractor.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/laminar.hpp"

namespace vcmin {

// Limits for the exhaustive references. A zero wall-clock cap disables the
// clock entirely, which keeps results deterministic.
struct OracleBudget {
  std::size_t max_cost = 6;
  std::size_t max_side = 20;
  std::size_t max_balls = 12;
  std::size_t max_millis = 0;

  void validate() const {
    if (max_cost == 0 || max_side == 0 || max_balls == 0)
      throw MalformedInput("oracle budget limits must be positive");
  }

  // VCMIN_ORACLE_MAX_COST, VCMIN_ORACLE_MAX_SIDE, VCMIN_ORACLE_MAX_BALLS and
  // VCMIN_ORACLE_MAX_MILLIS override the defaults.
  static OracleBudget from_env() {
    OracleBudget b;
    auto read = [](const char* name, std::size_t& slot) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        const auto parsed = std::strtoull(v, &end, 10);
        if (end == v || *end != '\0') throw MalformedInput(std::string(name) + " must be a non-negative integer");
        slot = static_cast<std::size_t>(parsed);
      }
    };
    read("VCMIN_ORACLE_MAX_COST", b.max_cost);
    read("VCMIN_ORACLE_MAX_SIDE", b.max_side);
    read("VCMIN_ORACLE_MAX_BALLS", b.max_balls);
    read("VCMIN_ORACLE_MAX_MILLIS", b.max_millis);
    return b;
  }
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(std::size_t millis)
      : enabled_(millis != 0), end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(millis)) {}
  bool expired() {
    if (!enabled_ || (++ticks_ & 0xfff) != 0) return false;
    return std::chrono::steady_clock::now() > end_;
  }

 private:
  bool enabled_;
  std::size_t ticks_ = 0;
  std::chrono::steady_clock::time_point end_;
};

}  // namespace detail

struct RectangleVerdict {
  bool valid = true;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // (left vertex, right element)
};

// Every pair of X' x Y' checked against the kind. Throws MalformedInput when
// the rectangle does not fit the instance.
inline RectangleVerdict verify_rectangle(const ExtractionInstance& inst, const HomogeneousRectangle& rect) {
  if (rect.right.ground_size() != inst.right_size)
    throw MalformedInput("rectangle right part ground size does not match the instance");
  for (auto a : rect.left)
    if (a >= inst.left_size) throw MalformedInput("rectangle left vertex " + std::to_string(a) + " out of range");
  for (auto a : rect.left) {
    const auto bad = rect.kind == RectKind::complete ? rect.right - inst.adjacency[a] : rect.right & inst.adjacency[a];
    if (!bad.empty()) return {false, std::pair{a, bad.first()}};
  }
  return {};
}

struct BruteComplexity {
  enum class Status { found, inexpressible, inconclusive };
  Status status = Status::inconclusive;
  std::size_t cost = 0;
  CheeseDecomposition witness;
};

// Exhaustive reference for minimal complexity over one family. Candidate
// cheeses are every (outer ball, set of other balls as holes) with cost
// within budget and nonempty evaluation; they are built once and reused for
// every target.
class CheeseEnumerator {
 public:
  explicit CheeseEnumerator(const DirectedFamily& family, const OracleBudget& budget = {})
      : family_(family), forest_(family), budget_(budget) {
    budget.validate();
    if (family.size() > budget.max_balls)
      throw MalformedInput("family has " + std::to_string(family.size()) + " balls, oracle budget allows " +
                           std::to_string(budget.max_balls));
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> best_for_value;
    const auto k = family.size();
    for (std::size_t outer = 0; outer < k; ++outer) {
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < k; ++j)
        if (j != outer) others.push_back(j);
      const std::size_t subsets = std::size_t{1} << others.size();
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        const auto holes = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (holes + 1 > budget.max_cost) continue;
        SwissCheese ch{family[outer], {}};
        for (std::size_t b = 0; b < others.size(); ++b)
          if ((mask >> b) & 1U) ch.holes.push_back(family[others[b]]);
        auto value = ch.evaluate();
        if (value.empty()) continue;
        // Only the cheapest cheese per evaluated set can appear in a minimum.
        auto [it, fresh] = best_for_value.try_emplace(value, candidates_.size());
        if (fresh) {
          candidates_.push_back({std::move(value), holes + 1, std::move(ch)});
        } else if (candidates_[it->second].cost > holes + 1) {
          candidates_[it->second].cost = holes + 1;
          candidates_[it->second].cheese = std::move(ch);
        }
      }
    }
  }

  // Least total cost of pairwise disjoint cheeses with union `target`. The
  // search always covers the smallest uncovered element next, so each
  // unordered list of cheeses is visited once.
  BruteComplexity min_cost(const ElementSet& target) const {
    if (target.ground_size() != family_.ground_size())
      throw MalformedInput("target ground size does not match family ground size");
    BruteComplexity out;
    out.witness.ground_size = target.ground_size();
    if (target.empty()) {
      out.status = BruteComplexity::Status::found;
      return out;
    }
    if (!expressible(target, forest_)) {
      out.status = BruteComplexity::Status::inexpressible;
      return out;
    }
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < candidates_.size(); ++i)
      if (candidates_[i].value.is_subset_of(target)) usable.push_back(i);

    detail::Deadline deadline(budget_.max_millis);
    std::size_t best = budget_.max_cost + 1;
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best_choice;
    bool timed_out = false;
    auto search = [&](auto&& self, const ElementSet& remaining, std::size_t spent) -> void {
      if (timed_out || deadline.expired()) {
        timed_out = true;
        return;
      }
      if (remaining.empty()) {
        if (spent < best) {
          best = spent;
          best_choice = chosen;
        }
        return;
      }
      if (spent + 1 >= best) return;
      const auto e = remaining.first();
      for (auto i : usable) {
        const auto& c = candidates_[i];
        if (spent + c.cost >= best || !c.value.contains(e) || !c.value.is_subset_of(remaining)) continue;
        chosen.push_back(i);
        self(self, remaining - c.value, spent + c.cost);
        chosen.pop_back();
      }
    };
    search(search, target, 0);

    if (best <= budget_.max_cost) {
      out.status = BruteComplexity::Status::found;
      out.cost = best;
      for (auto i : best_choice) out.witness.cheeses.push_back(candidates_[i].cheese);
    }
    return out;
  }

 private:
  struct Candidate {
    ElementSet value;
    std::size_t cost;
    SwissCheese cheese;
  };
  DirectedFamily family_;
  LaminarForest forest_;
  OracleBudget budget_;
  std::vector<Candidate> candidates_;
};

// Single-target convenience over CheeseEnumerator. `inconclusive` means no
// decomposition of cost <= budget.max_cost exists although S is expressible.
inline BruteComplexity brute_min_complexity(const ElementSet& target, const DirectedFamily& family,
                                            const OracleBudget& budget = {}) {
  return CheeseEnumerator(family, budget).min_cost(target);
}

struct RectangleSearch {
  enum class Status { found, refused, inconclusive };
  Status status = Status::refused;
  HomogeneousRectangle best;

  std::size_t min_side() const { return std::min(best.left.size(), best.right.size()); }
};

namespace detail {

// Total order used to pick among optimal rectangles: larger min side, then
// larger product, then lexicographically smaller left list, right list,
// and empty before complete.
inline bool better_rectangle(const HomogeneousRectangle& a, const HomogeneousRectangle& b) {
  const auto am = std::min(a.left.size(), a.right.size());
  const auto bm = std::min(b.left.size(), b.right.size());
  if (am != bm) return am > bm;
  const auto ap = a.left.size() * a.right.size();
  const auto bp = b.left.size() * b.right.size();
  if (ap != bp) return ap > bp;
  if (a.left != b.left) return std::lexicographical_compare(a.left.begin(), a.left.end(), b.left.begin(), b.left.end());
  if (a.right != b.right) return lex_less(a.right, b.right);
  return a.kind == RectKind::empty && b.kind == RectKind::complete;
}

}  // namespace detail

// Exact maximum of min(|X'|, |Y'|) over homogeneous rectangles. Enumerates
// subsets T of the smaller side; the other side is then forced to the common
// neighbourhood or common non-neighbourhood of T.
inline RectangleSearch brute_best_rectangle(const ExtractionInstance& inst, const OracleBudget& budget = {}) {
  budget.validate();
  validate_shape(inst);
  RectangleSearch out;
  const bool enumerate_left = inst.left_size <= inst.right_size;
  const auto small = enumerate_left ? inst.left_size : inst.right_size;
  const auto large = enumerate_left ? inst.right_size : inst.left_size;
  if (small == 0 || small > budget.max_side) return out;

  // rows[i]: neighbours (on the large side) of small-side vertex i.
  std::vector<ElementSet> rows;
  if (enumerate_left) {
    rows = inst.adjacency;
  } else {
    rows.assign(small, ElementSet(large));
    for (std::size_t a = 0; a < inst.left_size; ++a) inst.adjacency[a].for_each([&](std::size_t y) { rows[y].insert(a); });
  }
  std::vector<ElementSet> anti(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) anti[i] = rows[i].complement();

  auto make = [&](const std::vector<std::size_t>& t, const ElementSet& other, RectKind kind) {
    HomogeneousRectangle r;
    r.kind = kind;
    if (enumerate_left) {
      r.left = t;
      r.right = other;
    } else {
      r.left = other.members();
      r.right = ElementSet::from_members(inst.right_size, t);
    }
    return r;
  };

  detail::Deadline deadline(budget.max_millis);
  bool have = false;
  bool timed_out = false;
  std::vector<std::size_t> t;
  auto consider = [&](const ElementSet& other, RectKind kind) {
    if (other.empty()) return;
    auto r = make(t, other, kind);
    if (!have || detail::better_rectangle(r, out.best)) {
      out.best = std::move(r);
      have = true;
    }
  };
  auto search = [&](auto&& self, std::size_t next, const ElementSet& common, const ElementSet& common_anti) -> void {
    if (timed_out || deadline.expired()) {
      timed_out = true;
      return;
    }
    if (!t.empty()) {
      consider(common, RectKind::complete);
      consider(common_anti, RectKind::empty);
    }
    const auto best_min = have ? out.min_side() : 0;
    for (std::size_t i = next; i < small; ++i) {
      const auto reach = std::min(t.size() + (small - i), std::max(common.size(), common_anti.size()));
      if (have && reach < best_min) return;
      t.push_back(i);
      self(self, i + 1, common & rows[i], common_anti & anti[i]);
      t.pop_back();
    }
  };
  const auto all = ElementSet::full(large);
  search(search, 0, all, all);
  out.status = timed_out ? RectangleSearch::Status::inconclusive : RectangleSearch::Status::found;
  return out;
}

}  // namespace vcmin
