#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "linvol/errors.hpp"

namespace linvol {

using LetterId = std::uint8_t;
using LetterMask = std::uint32_t;

inline constexpr int kMaxLetters = 16;

// Partition of the alphabet by where a letter's two occurrences live:
// one per row (a01), both on top (a0), both on bottom (a1).
struct AlphabetSplit {
  std::vector<LetterId> a01, a0, a1;
  LetterMask mask01 = 0, mask0 = 0, mask1 = 0;
};

// Fixed-size integer coding of a canonical generalized permutation; hashable
// and ordered, cheap enough for multi-million node visited sets.
struct GpKey {
  std::uint8_t top_len = 0;
  std::uint8_t total = 0;
  std::array<std::uint8_t, 2 * kMaxLetters> w{};

  friend bool operator==(const GpKey& a, const GpKey& b) = default;
  // Lexicographic on the letter word, then on the row split.
  friend bool operator<(const GpKey& a, const GpKey& b) {
    if (a.total != b.total) return a.total < b.total;
    if (a.w != b.w) return a.w < b.w;
    return a.top_len < b.top_len;
  }
};

struct GpKeyHash {
  std::size_t operator()(const GpKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t byte) {
      h ^= byte;
      h *= 1099511628211ull;
    };
    mix(k.top_len);
    mix(k.total);
    for (int i = 0; i < k.total; ++i) mix(k.w[i]);
    return static_cast<std::size_t>(h);
  }
};

// A generalized permutation of type (l, m): a two-to-one map from 2d
// positions (top row first) onto d letters. Immutable after construction.
class GenPerm {
 public:
  // `names` may be empty, in which case the letters are "1".."d".
  GenPerm(std::vector<std::string> names, std::vector<LetterId> word, int top_len);

  // Two rows of [A-Za-z0-9_]+ tokens separated by "/" or a newline.
  static GenPerm parse(std::string_view text);
  static GenPerm from_key(const GpKey& key);

  int d() const { return d_; }
  int top_len() const { return top_len_; }
  int bottom_len() const { return size_ - top_len_; }
  int size() const { return size_; }  // 2d

  LetterId word_at(int pos) const { return word_[pos]; }   // 0-based
  int twin(int pos) const { return twin_[pos]; }           // 0-based
  const std::vector<LetterId>& word() const { return word_; }

  std::string letter_name(LetterId id) const;

  bool is_true_permutation() const;
  // True permutations of d >= 2 qualify; otherwise both rows must contain a
  // same-row pair (the objects that come from linear involutions).
  bool convention_ok() const;

  AlphabetSplit split() const;

  // s(i) = 2d+1-i followed by the row split swap; an exact involution.
  GenPerm mirror_s() const;

  // Relabels by first occurrence scanning top row then bottom row.
  GenPerm canonical() const;
  bool is_canonical() const;

  GpKey key() const;  // key of the canonical form

  std::string str() const;  // single-space tokens, " / " row separator

  friend bool operator==(const GenPerm& a, const GenPerm& b);

 private:
  void build_twin();

  std::vector<std::string> names_;  // empty => implicit "1".."d"
  std::vector<LetterId> word_;
  std::vector<std::int16_t> twin_;
  int top_len_ = 0;
  int size_ = 0;
  int d_ = 0;
};

// Yields every canonical generalized permutation on d letters over all types
// (l, m), each exactly once, in a fixed deterministic order.
void enumerate_all(int d, bool require_convention,
                   const std::function<void(const GenPerm&)>& yield,
                   int max_d = 6);
std::vector<GenPerm> enumerate_all(int d, bool require_convention, int max_d = 6);

}  // namespace linvol
