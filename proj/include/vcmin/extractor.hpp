#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "vcmin/cheese.hpp"
#include "vcmin/element_set.hpp"
#include "vcmin/error.hpp"
#include "vcmin/instance.hpp"
#include "vcmin/laminar.hpp"

namespace vcmin {

enum class RectKind { complete, empty };

inline const char* to_string(RectKind k) { return k == RectKind::complete ? "complete" : "empty"; }

// X' x Y' lies entirely inside E (complete) or entirely outside it (empty).
struct HomogeneousRectangle {
  std::vector<std::size_t> left;  // ascending left-vertex indices
  ElementSet right;
  RectKind kind = RectKind::empty;

  friend bool operator==(const HomogeneousRectangle&, const HomogeneousRectangle&) = default;
};

enum class Branch { base, remainder_r, a2_on_c, recurse_a1 };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::base:
      return "base";
    case Branch::remainder_r:
      return "remainder-R";
    case Branch::a2_on_c:
      return "A2-on-C";
    case Branch::recurse_a1:
      return "recurse-A1";
  }
  return "?";
}

// One recursion level. Fields a branch never reaches stay empty.
struct TraceLevel {
  std::size_t bound = 0;
  std::size_t left_before = 0;
  std::size_t right_before = 0;
  Branch branch = Branch::base;
  std::optional<ElementSet> z;
  std::vector<ElementSet> maximal;  // C_1..C_m in prefix order
  std::optional<ElementSet> remainder;
  std::optional<std::size_t> t0;  // 1-based prefix length
  std::optional<ElementSet> c;
  std::size_t a1_size = 0;
  std::size_t a2_size = 0;
  // Rectangle sides for terminal levels, next level's sides for recursion.
  std::size_t left_after = 0;
  std::size_t right_after = 0;

  friend bool operator==(const TraceLevel&, const TraceLevel&) = default;
};

struct ExtractionTrace {
  std::vector<TraceLevel> levels;

  std::vector<Branch> branches() const {
    std::vector<Branch> out;
    for (const auto& l : levels) out.push_back(l.branch);
    return out;
  }

  friend bool operator==(const ExtractionTrace&, const ExtractionTrace&) = default;
};

struct ExtractionResult {
  HomogeneousRectangle rectangle;
  ExtractionTrace trace;
};

// Order in which the maximal balls C_1..C_m are accumulated for the t0 prefix.
enum class PrefixOrder { size_descending, size_ascending };

struct ExtractOptions {
  // Run both claim checkers at every level, not only on the branch taken.
  bool check_claims = false;
  // Re-minimize restricted neighbourhoods and compare with carried complexity.
  bool debug = false;
  PrefixOrder prefix_order = PrefixOrder::size_descending;
};

// part * 2^(bound+4) >= whole, exactly.
inline bool meets_fraction(std::size_t part, std::size_t whole, std::size_t bound) {
  const std::size_t shift = bound + 4;
  if (part == 0) return whole == 0;
  if (shift >= 63) return true;
  const auto scaled = static_cast<unsigned __int128>(part) << shift;
  return scaled >= whole;
}

enum class ClaimStatus { full, empty, counterexample };

struct ClaimReport {
  std::vector<std::size_t> vertices;
  std::vector<ClaimStatus> status;  // parallel to vertices
  std::optional<std::size_t> counterexample;

  std::size_t count(ClaimStatus s) const {
    return static_cast<std::size_t>(std::count(status.begin(), status.end(), s));
  }
};

namespace detail {

inline ClaimReport classify(const std::vector<ElementSet>& adjacency, const std::vector<std::size_t>& vertices,
                            const ElementSet& part) {
  ClaimReport r;
  r.vertices = vertices;
  r.status.reserve(vertices.size());
  const auto whole = part.size();
  for (auto a : vertices) {
    const auto hit = adjacency.at(a).intersection_size(part);
    ClaimStatus s = hit == 0 ? ClaimStatus::empty : hit == whole ? ClaimStatus::full : ClaimStatus::counterexample;
    if (s == ClaimStatus::counterexample && !r.counterexample) r.counterexample = a;
    r.status.push_back(s);
  }
  return r;
}

}  // namespace detail

// Every left vertex sees all of R or none of it.
inline ClaimReport check_claim_32(const ExtractionInstance& inst, const ElementSet& remainder) {
  std::vector<std::size_t> all(inst.left_size);
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  return detail::classify(inst.adjacency, all, remainder);
}

// Every vertex of A2 sees all of C or none of it.
inline ClaimReport check_claim_33(const ExtractionInstance& inst, const ElementSet& c,
                                  const std::vector<std::size_t>& a2) {
  return detail::classify(inst.adjacency, a2, c);
}

namespace detail {

struct WorkingLevel {
  std::vector<std::size_t> left;
  ElementSet right;
  std::vector<CheeseDecomposition> decomps;  // parallel to left
  DirectedFamily family;
  std::size_t bound;
};

inline HomogeneousRectangle majority_rectangle(const ClaimReport& split, const ElementSet& part) {
  HomogeneousRectangle full{{}, part, RectKind::complete};
  HomogeneousRectangle none{{}, part, RectKind::empty};
  for (std::size_t i = 0; i < split.vertices.size(); ++i)
    (split.status[i] == ClaimStatus::full ? full : none).left.push_back(split.vertices[i]);
  std::sort(full.left.begin(), full.left.end());
  std::sort(none.left.begin(), none.left.end());
  return full.left.size() > none.left.size() ? full : none;
}

[[noreturn]] inline void claim_failed(const char* claim, std::size_t vertex, std::size_t bound) {
  throw InvariantViolation(std::string(claim) + " failed for left vertex " + std::to_string(vertex) +
                           " at bound " + std::to_string(bound));
}

}  // namespace detail

// Finds X' and Y' with 2^(N+4)|X'| >= |X|, 2^(N+4)|Y'| >= |Y| and X' x Y'
// homogeneous, following the induction on N:
//   choose a smallest ball Z (or Y) with 8|Z| >= |Y|; its maximal proper
//   sub-balls C_1..C_m leave a remainder R on which every vertex is constant;
//   otherwise a short prefix C of the C_t either is seen uniformly by half
//   of X, or at least half of X loses a ball to C and the instance restricted
//   to Y \ C has complexity < N - 1.
// All thresholds are integer cross-multiplications.
inline ExtractionResult extract(const ExtractionInstance& inst, const ExtractOptions& opts = {}) {
  if (inst.left_size == 0 || inst.right_size == 0)
    throw ValidationError("extraction needs nonempty sides (|X| = " + std::to_string(inst.left_size) +
                          ", |Y| = " + std::to_string(inst.right_size) + ")");
  if (inst.bound == 1) {
    validate_shape(inst);
    for (std::size_t a = 0; a < inst.left_size; ++a)
      if (!inst.adjacency[a].empty())
        throw ComplexityBoundViolated("bound N = 1 requires empty neighbourhoods; left vertex " +
                                      std::to_string(a) + " has " + std::to_string(inst.adjacency[a].size()) +
                                      " neighbours");
  }
  validate(inst);

  ExtractionResult result;
  detail::WorkingLevel cur;
  cur.left.resize(inst.left_size);
  for (std::size_t a = 0; a < inst.left_size; ++a) cur.left[a] = a;
  cur.right = ElementSet::full(inst.right_size);
  cur.decomps = inst.decomps;
  cur.family = inst.family;
  cur.bound = inst.bound;

  std::size_t recursions = 0;
  while (true) {
    TraceLevel level;
    level.bound = cur.bound;
    level.left_before = cur.left.size();
    level.right_before = cur.right.size();
    const std::size_t ny = cur.right.size();
    const std::size_t nx = cur.left.size();

    if (cur.bound == 1) {
      for (std::size_t i = 0; i < nx; ++i) {
        const auto a = cur.left[i];
        if (!cur.decomps[i].cheeses.empty() || inst.adjacency[a].intersects(cur.right))
          throw ComplexityBoundViolated("bound 1 reached with nonempty neighbourhood at left vertex " +
                                        std::to_string(a));
      }
      level.branch = Branch::base;
      result.rectangle = {cur.left, cur.right, RectKind::empty};
      level.left_after = nx;
      level.right_after = ny;
      result.trace.levels.push_back(std::move(level));
      break;
    }

    // Balls used by the current decompositions, plus Y itself.
    std::unordered_set<ElementSet, ElementSetHash> used;
    used.insert(cur.right);
    for (const auto& d : cur.decomps) d.for_each_ball([&](const ElementSet& b) { used.insert(b); });

    // Smallest qualifying member; it is automatically inclusion-minimal.
    const ElementSet* z = nullptr;
    for (const auto& b : used)
      if (8 * b.size() >= ny && (z == nullptr || SizeDescLex{}(*z, b))) z = &b;
    level.z = *z;

    std::vector<ElementSet> inside;
    for (const auto& b : used)
      if (b.is_proper_subset_of(*z)) inside.push_back(b);
    std::sort(inside.begin(), inside.end(), SizeDescLex{});
    ElementSet covered(inst.right_size);
    std::vector<ElementSet> maximal;
    for (auto& b : inside)
      if (!b.intersects(covered)) {
        covered |= b;
        maximal.push_back(std::move(b));
      }
    if (opts.prefix_order == PrefixOrder::size_ascending)
      std::stable_sort(maximal.begin(), maximal.end(),
                       [](const ElementSet& a, const ElementSet& b) { return a.size() < b.size(); });
    ElementSet remainder = *z - covered;
    level.maximal = maximal;
    level.remainder = remainder;

    auto remainder_split = detail::classify(inst.adjacency, cur.left, remainder);
    const bool take_remainder = 16 * remainder.size() >= ny;
    if ((opts.check_claims || take_remainder) && remainder_split.counterexample)
      detail::claim_failed("E(a,R) in {R, empty}", *remainder_split.counterexample, cur.bound);

    if (take_remainder) {
      level.branch = Branch::remainder_r;
      result.rectangle = detail::majority_rectangle(remainder_split, remainder);
      level.left_after = result.rectangle.left.size();
      level.right_after = remainder.size();
      result.trace.levels.push_back(std::move(level));
      break;
    }

    // Least prefix reaching |Y|/32.
    ElementSet c(inst.right_size);
    std::size_t t0 = 0;
    while (t0 < maximal.size() && 32 * c.size() < ny) c |= maximal[t0++];
    if (32 * c.size() < ny)
      throw InvariantViolation("maximal balls inside Z cover less than |Y|/32 at bound " +
                               std::to_string(cur.bound));
    if (32 * c.size() > 5 * ny)
      throw InvariantViolation("prefix union exceeds (1/32 + 1/8)|Y| at bound " + std::to_string(cur.bound));
    level.t0 = t0;
    level.c = c;

    std::vector<std::size_t> a1_idx;
    std::vector<std::size_t> a2;
    for (std::size_t i = 0; i < nx; ++i) {
      bool hits = false;
      cur.decomps[i].for_each_ball([&](const ElementSet& b) { hits = hits || b.is_subset_of(c); });
      if (hits)
        a1_idx.push_back(i);
      else
        a2.push_back(cur.left[i]);
    }
    level.a1_size = a1_idx.size();
    level.a2_size = a2.size();

    auto c_split = detail::classify(inst.adjacency, a2, c);
    const bool take_a2 = 2 * a2.size() >= nx;
    if ((opts.check_claims || take_a2) && c_split.counterexample)
      detail::claim_failed("E(a,C) in {C, empty}", *c_split.counterexample, cur.bound);

    if (take_a2) {
      level.branch = Branch::a2_on_c;
      result.rectangle = detail::majority_rectangle(c_split, c);
      level.left_after = result.rectangle.left.size();
      level.right_after = c.size();
      result.trace.levels.push_back(std::move(level));
      break;
    }

    // Recurse on (A1, Y \ C) with bound N - 1.
    detail::WorkingLevel next;
    next.right = cur.right - c;
    next.family = restrict_family(cur.family, next.right);
    next.bound = cur.bound - 1;
    std::optional<LaminarForest> forest;
    if (opts.debug) forest.emplace(next.family);
    for (auto i : a1_idx) {
      const auto a = cur.left[i];
      auto restricted = restrict_decomposition(cur.decomps[i], next.right, next.family);
      if (restricted.complexity() + 1 > cur.decomps[i].complexity())
        throw InvariantViolation("restriction did not lower the complexity of left vertex " + std::to_string(a));
      if (restricted.complexity() >= next.bound)
        throw InvariantViolation("restricted complexity of left vertex " + std::to_string(a) +
                                 " is not below " + std::to_string(next.bound));
      if (opts.debug) {
        const auto target = inst.adjacency[a] & next.right;
        if (evaluate(restricted) != target)
          throw InvariantViolation("restricted decomposition of left vertex " + std::to_string(a) +
                                   " does not evaluate to its restricted neighbourhood");
        if (min_complexity(target, *forest) > restricted.complexity())
          throw InvariantViolation("carried complexity below the minimum for left vertex " + std::to_string(a));
      }
      next.left.push_back(a);
      next.decomps.push_back(std::move(restricted));
    }
    level.branch = Branch::recurse_a1;
    level.left_after = next.left.size();
    level.right_after = next.right.size();
    result.trace.levels.push_back(std::move(level));
    ++recursions;
    if (recursions + 1 > inst.bound)
      throw InvariantViolation("recursion depth exceeded N - 1");
    cur = std::move(next);
  }

  const auto& rect = result.rectangle;
  if (rect.left.empty() || rect.right.empty())
    throw InvariantViolation("extracted rectangle has an empty side");
  if (!meets_fraction(rect.left.size(), inst.left_size, inst.bound) ||
      !meets_fraction(rect.right.size(), inst.right_size, inst.bound))
    throw InvariantViolation("extracted rectangle misses the 2^(N+4) size guarantee");
  for (auto a : rect.left) {
    const bool ok = rect.kind == RectKind::complete ? rect.right.is_subset_of(inst.adjacency[a])
                                                    : !rect.right.intersects(inst.adjacency[a]);
    if (!ok) throw InvariantViolation("extracted rectangle is not homogeneous at left vertex " + std::to_string(a));
  }
  return result;
}

}  // namespace vcmin
