#pragma once

// Integer compositions: the bit-cut bijection, exhaustive enumeration,
// multiplicity bookkeeping and exact small-n event probabilities.
//
// Cut convention: a composition of n is encoded by n-1 bits; bit i
// (1-based) set means a part boundary right after unit cell i. Packed word
// form stores bit i at position (i-1) % 64 of word (i-1) / 64.

#include <compana/bigrational.hpp>

#include <compare>
#include <cstdint>
#include <iterator>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace compana {

/// Default upper limit on n for exhaustive enumeration (2^(n-1) items).
inline constexpr std::uint32_t kDefaultEnumerationCap = 25;

/// Cap in effect: COMPANA_ENUM_CAP when set to a positive integer, otherwise
/// kDefaultEnumerationCap.
std::uint32_t enumeration_cap();

/// Thrown when an exhaustive computation is asked for n above the cap.
class CapExceeded : public std::out_of_range {
 public:
  CapExceeded(std::uint64_t n, std::uint32_t cap);
  std::uint64_t n() const noexcept { return n_; }
  std::uint32_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t n_;
  std::uint32_t cap_;
};

class Composition {
 public:
  /// Throws std::invalid_argument on an empty list or a zero part.
  explicit Composition(std::vector<std::uint64_t> parts);

  std::span<const std::uint64_t> parts() const noexcept { return parts_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t part_count() const noexcept { return parts_.size(); }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<std::uint64_t> parts_;
  std::uint64_t n_ = 0;
};

/// Part size -> multiplicity, for the sizes that occur.
class MultiplicityProfile {
 public:
  explicit MultiplicityProfile(std::map<std::uint64_t, std::uint64_t> counts);

  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }

  /// 0 for sizes that do not occur.
  std::uint64_t multiplicity(std::uint64_t size) const;

  /// |D|: number of distinct part sizes.
  std::size_t distinct_count() const noexcept { return counts_.size(); }

  /// M_m: the sizes with multiplicity exactly m, ascending.
  std::vector<std::uint64_t> sizes_with_multiplicity(std::uint64_t m) const;
  std::size_t count_with_multiplicity(std::uint64_t m) const;

  /// Sum of size * multiplicity (equals n of the source composition).
  std::uint64_t total() const;
  /// Sum of multiplicities (number of parts).
  std::uint64_t part_count() const;

  friend bool operator==(const MultiplicityProfile&, const MultiplicityProfile&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> counts_;
};

Composition bits_to_composition(std::uint64_t n, const std::vector<bool>& bits);

/// Packed-word form of bits_to_composition; words beyond bit n-2 must be 0.
Composition composition_from_cut_words(std::uint64_t n, std::span<const std::uint64_t> words);

MultiplicityProfile multiplicity_profile(const Composition& c);

/// Single-pass stream over all 2^(n-1) compositions of n, in order of the
/// cut pattern read as a binary number (bit i has weight 2^(i-1)).
class CompositionStream {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.mask_ == b.mask_;
    }

   private:
    friend class CompositionStream;
    iterator(std::uint32_t n, std::uint64_t mask);

    std::uint32_t n_ = 0;
    std::uint64_t mask_ = 0;
    Composition current_{std::vector<std::uint64_t>{1}};
  };

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const;
  std::uint64_t size() const noexcept { return std::uint64_t{1} << (n_ - 1); }

 private:
  friend CompositionStream enumerate_compositions(std::uint64_t, std::uint32_t);
  explicit CompositionStream(std::uint32_t n) : n_(n) {}
  std::uint32_t n_;
};

/// Throws std::invalid_argument for n == 0 and CapExceeded for n > cap.
CompositionStream enumerate_compositions(std::uint64_t n, std::uint32_t cap = enumeration_cap());

/// Calls f(parts) for every composition of n without materialising
/// Composition objects. `parts` is only valid during the call.
template <class F>
void for_each_composition_parts(std::uint32_t n, F&& f);

/// P(A_n^(m)): a uniform part size of a uniform composition of n has
/// multiplicity m. Exact, by enumeration.
Rational exact_event_probability(std::uint64_t n, std::uint64_t m,
                                 std::uint32_t cap = enumeration_cap());

/// P(A_n^(m)) for m = 0..n in one enumeration pass (index 0 is always 0).
std::vector<Rational> exact_event_distribution(std::uint64_t n,
                                               std::uint32_t cap = enumeration_cap());

/// Count table from one enumeration pass: entry [k][m] is the number of
/// compositions of n in which size k has multiplicity exactly m
/// (0 <= k, m <= n; row 0 unused).
std::vector<std::vector<std::uint64_t>> multiplicity_count_table(
    std::uint64_t n, std::uint32_t cap = enumeration_cap());

// -- implementation -------------------------------------------------------

template <class F>
void for_each_composition_parts(std::uint32_t n, F&& f) {
  std::vector<std::uint64_t> parts;
  parts.reserve(n);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    parts.clear();
    std::uint64_t prev = 0;
    std::uint64_t bits = mask;
    while (bits != 0) {
      const auto pos = static_cast<std::uint64_t>(__builtin_ctzll(bits)) + 1;
      parts.push_back(pos - prev);
      prev = pos;
      bits &= bits - 1;
    }
    parts.push_back(n - prev);
    f(std::span<const std::uint64_t>(parts));
  }
}

}  // namespace compana
