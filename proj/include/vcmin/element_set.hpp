#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "vcmin/error.hpp"

namespace vcmin {

// A subset of the ground set {0, ..., n-1}, stored as packed 64-bit words.
// Bits at or beyond the ground size are always zero.
class ElementSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ElementSet() = default;
  explicit ElementSet(std::size_t ground_size)
      : ground_size_(ground_size), words_((ground_size + kWordBits - 1) / kWordBits, 0) {}

  ElementSet(std::size_t ground_size, std::initializer_list<std::size_t> members)
      : ElementSet(ground_size) {
    for (auto m : members) insert(m);
  }

  // Throws MalformedInput for out-of-range indices. Duplicates are tolerated.
  static ElementSet from_members(std::size_t ground_size, std::span<const std::size_t> members) {
    ElementSet s(ground_size);
    for (auto m : members) s.insert(m);
    return s;
  }

  static ElementSet full(std::size_t ground_size) {
    ElementSet s(ground_size);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t ground_size() const noexcept { return ground_size_; }

  bool contains(std::size_t i) const noexcept {
    return i < ground_size_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
  }

  void insert(std::size_t i) {
    if (i >= ground_size_)
      throw MalformedInput("element index " + std::to_string(i) + " out of range for ground size " +
                           std::to_string(ground_size_));
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  void erase(std::size_t i) noexcept {
    if (i < ground_size_) words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool is_subset_of(const ElementSet& other) const {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }

  bool is_proper_subset_of(const ElementSet& other) const {
    return is_subset_of(other) && size() < other.size();
  }

  bool intersects(const ElementSet& other) const {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & other.words_[k]) != 0) return true;
    return false;
  }

  std::size_t intersection_size(const ElementSet& other) const {
    check_compatible(other);
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      n += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    return n;
  }

  ElementSet& operator&=(const ElementSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  // Set difference.
  ElementSet& operator-=(const ElementSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
  }
  ElementSet& operator^=(const ElementSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }

  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend ElementSet operator^(ElementSet a, const ElementSet& b) { return a ^= b; }

  ElementSet complement() const {
    ElementSet c = *this;
    for (auto& w : c.words_) w = ~w;
    c.trim();
    return c;
  }

  // Smallest member, or ground_size() when empty.
  std::size_t first() const noexcept { return next(0); }

  // Smallest member >= from, or ground_size() when none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= ground_size_) return ground_size_;
    std::size_t k = from / kWordBits;
    Word w = words_[k] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return ground_size_;
      w = words_[k];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w != 0) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::span<const Word> words() const noexcept { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  // Lexicographic comparison of the ascending member lists.
  friend bool lex_less(const ElementSet& a, const ElementSet& b) {
    std::size_t i = a.first();
    std::size_t j = b.first();
    while (i < a.ground_size_ && j < b.ground_size_) {
      if (i != j) return i < j;
      i = a.next(i + 1);
      j = b.next(j + 1);
    }
    return i >= a.ground_size_ && j < b.ground_size_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool sep = false;
    for_each([&](std::size_t i) {
      if (sep) s += ',';
      s += std::to_string(i);
      sep = true;
    });
    return s + "}";
  }

 private:
  void trim() noexcept {
    if (ground_size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (ground_size_ % kWordBits)) - 1;
  }

  void check_compatible(const ElementSet& other) const {
    if (other.ground_size_ != ground_size_)
      throw MalformedInput("set algebra over different ground sizes (" + std::to_string(ground_size_) +
                           " vs " + std::to_string(other.ground_size_) + ")");
  }

  std::size_t ground_size_ = 0;
  std::vector<Word> words_;
};

// Canonical order used everywhere nodes or balls are listed: larger sets first,
// then lexicographic member order.
struct SizeDescLex {
  bool operator()(const ElementSet& a, const ElementSet& b) const {
    const auto sa = a.size();
    const auto sb = b.size();
    if (sa != sb) return sa > sb;
    return lex_less(a, b);
  }
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.ground_size();
    for (auto w : s.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace vcmin
