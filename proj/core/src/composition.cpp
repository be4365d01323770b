#include "compana/composition.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <string>

namespace compana {

namespace {

// Masks are 64-bit, so n - 1 cut bits must fit regardless of the cap.
constexpr std::uint64_t kHardEnumerationLimit = 63;

void check_enumerable(std::uint64_t n, std::uint32_t cap) {
  if (n == 0) throw std::invalid_argument("composition size n must be >= 1");
  if (n > cap || n > kHardEnumerationLimit) throw CapExceeded(n, cap);
}

}  // namespace

std::uint32_t enumeration_cap() {
  if (const char* env = std::getenv("COMPANA_ENUM_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0 && v <= kHardEnumerationLimit) {
      return static_cast<std::uint32_t>(v);
    }
  }
  return kDefaultEnumerationCap;
}

CapExceeded::CapExceeded(std::uint64_t n, std::uint32_t cap)
    : std::out_of_range("n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                        std::to_string(cap) +
                        " (set COMPANA_ENUM_CAP to raise it, at most 63)"),
      n_(n),
      cap_(cap) {}

Composition::Composition(std::vector<std::uint64_t> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("a composition has at least one part");
  for (const auto p : parts_) {
    if (p == 0) throw std::invalid_argument("composition parts must be positive");
    n_ += p;
  }
}

MultiplicityProfile::MultiplicityProfile(std::map<std::uint64_t, std::uint64_t> counts)
    : counts_(std::move(counts)) {
  for (const auto& [size, mult] : counts_) {
    if (size == 0 || mult == 0) {
      throw std::invalid_argument("profile entries need positive size and multiplicity");
    }
  }
}

std::uint64_t MultiplicityProfile::multiplicity(std::uint64_t size) const {
  const auto it = counts_.find(size);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::uint64_t> MultiplicityProfile::sizes_with_multiplicity(std::uint64_t m) const {
  std::vector<std::uint64_t> out;
  for (const auto& [size, mult] : counts_) {
    if (mult == m) out.push_back(size);
  }
  return out;
}

std::size_t MultiplicityProfile::count_with_multiplicity(std::uint64_t m) const {
  std::size_t c = 0;
  for (const auto& entry : counts_) c += entry.second == m ? 1 : 0;
  return c;
}

std::uint64_t MultiplicityProfile::total() const {
  std::uint64_t s = 0;
  for (const auto& [size, mult] : counts_) s += size * mult;
  return s;
}

std::uint64_t MultiplicityProfile::part_count() const {
  std::uint64_t s = 0;
  for (const auto& entry : counts_) s += entry.second;
  return s;
}

Composition bits_to_composition(std::uint64_t n, const std::vector<bool>& bits) {
  if (n == 0) throw std::invalid_argument("composition size n must be >= 1");
  if (bits.size() != n - 1) {
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " cut bits, got " +
                                std::to_string(bits.size()));
  }
  std::vector<std::uint64_t> parts;
  std::uint64_t prev = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (bits[i - 1]) {
      parts.push_back(i - prev);
      prev = i;
    }
  }
  parts.push_back(n - prev);
  return Composition(std::move(parts));
}

Composition composition_from_cut_words(std::uint64_t n, std::span<const std::uint64_t> words) {
  if (n == 0) throw std::invalid_argument("composition size n must be >= 1");
  if (words.size() * 64 < n - 1) throw std::invalid_argument("too few cut words for n");
  std::vector<std::uint64_t> parts;
  std::uint64_t prev = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const std::uint64_t pos = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits)) + 1;
      if (pos >= n) throw std::invalid_argument("cut bit beyond position n-1");
      parts.push_back(pos - prev);
      prev = pos;
      bits &= bits - 1;
    }
  }
  parts.push_back(n - prev);
  return Composition(std::move(parts));
}

MultiplicityProfile multiplicity_profile(const Composition& c) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto p : c.parts()) ++counts[p];
  return MultiplicityProfile(std::move(counts));
}

CompositionStream::iterator::iterator(std::uint32_t n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (mask_ < (std::uint64_t{1} << (n_ - 1))) {
    std::vector<bool> bits(n_ - 1);
    for (std::uint32_t i = 0; i + 1 < n_; ++i) bits[i] = ((mask_ >> i) & 1U) != 0;
    current_ = bits_to_composition(n_, bits);
  }
}

CompositionStream::iterator& CompositionStream::iterator::operator++() {
  *this = iterator(n_, mask_ + 1);
  return *this;
}

CompositionStream::iterator CompositionStream::end() const {
  return iterator(n_, std::uint64_t{1} << (n_ - 1));
}

CompositionStream enumerate_compositions(std::uint64_t n, std::uint32_t cap) {
  check_enumerable(n, cap);
  return CompositionStream(static_cast<std::uint32_t>(n));
}

std::vector<Rational> exact_event_distribution(std::uint64_t n, std::uint32_t cap) {
  check_enumerable(n, cap);
  // tally[m][d]: sum over compositions with |D| = d of |M_m|.
  std::vector<std::vector<std::uint64_t>> tally(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  std::array<std::uint32_t, kHardEnumerationLimit + 1> counts{};
  std::vector<std::uint64_t> seen;
  seen.reserve(n);
  for_each_composition_parts(static_cast<std::uint32_t>(n), [&](std::span<const std::uint64_t> parts) {
    seen.clear();
    for (const auto p : parts) {
      if (counts[p]++ == 0) seen.push_back(p);
    }
    const auto d = seen.size();
    for (const auto s : seen) {
      ++tally[counts[s]][d];
      counts[s] = 0;
    }
  });
  std::vector<Rational> out(n + 1, Rational(0));
  const Rational total(pow2(n - 1));
  for (std::uint64_t m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (tally[m][d] != 0) acc += Rational(BigInt(static_cast<unsigned long>(tally[m][d])), BigInt(static_cast<unsigned long>(d)));
    }
    acc /= total;
    acc.canonicalize();
    out[m] = acc;
  }
  return out;
}

Rational exact_event_probability(std::uint64_t n, std::uint64_t m, std::uint32_t cap) {
  check_enumerable(n, cap);
  if (m == 0 || m > n) return Rational(0);
  return exact_event_distribution(n, cap)[m];
}

std::vector<std::vector<std::uint64_t>> multiplicity_count_table(std::uint64_t n, std::uint32_t cap) {
  check_enumerable(n, cap);
  std::vector<std::vector<std::uint64_t>> table(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  std::array<std::uint32_t, kHardEnumerationLimit + 1> counts{};
  for_each_composition_parts(static_cast<std::uint32_t>(n), [&](std::span<const std::uint64_t> parts) {
    for (const auto p : parts) ++counts[p];
    for (std::uint64_t k = 1; k <= n; ++k) {
      ++table[k][counts[k]];
      counts[k] = 0;
    }
  });
  return table;
}

}  // namespace compana
