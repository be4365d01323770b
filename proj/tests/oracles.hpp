#pragma once

// Reference implementations used only by the tests. They are deliberately
// naive and share no code with the library.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Parts = std::vector<std::uint64_t>;

// All compositions of n, built recursively by choosing the first part.
inline void compositions(std::uint64_t n, const std::function<void(const Parts&)>& visit) {
  Parts prefix;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t rest) {
    if (rest == 0) {
      visit(prefix);
      return;
    }
    for (std::uint64_t first = 1; first <= rest; ++first) {
      prefix.push_back(first);
      rec(rest - first);
      prefix.pop_back();
    }
  };
  rec(n);
}

inline std::map<std::uint64_t, std::uint64_t> multiplicities(const Parts& parts) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (const auto p : parts) ++m[p];
  return m;
}

// P(A_n^(m)) averaged over compositions, each weighted 1/2^(n-1).
inline mpq_class event_probability(std::uint64_t n, std::uint64_t m) {
  mpq_class total = 0;
  std::uint64_t count = 0;
  compositions(n, [&](const Parts& parts) {
    ++count;
    const auto mult = multiplicities(parts);
    std::uint64_t hits = 0;
    for (const auto& [size, k] : mult) hits += (k == m);
    total += mpq_class(hits, mult.size());
  });
  total /= count;
  total.canonicalize();
  return total;
}

// Number of compositions of n in which size k occurs exactly m times.
inline std::uint64_t count_with_multiplicity(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  std::uint64_t c = 0;
  compositions(n, [&](const Parts& parts) {
    std::uint64_t occ = 0;
    for (const auto p : parts) occ += (p == k);
    c += (occ == m);
  });
  return c;
}

inline std::uint64_t fibonacci(unsigned i) {
  std::uint64_t a = 0;
  std::uint64_t b = 1;
  for (unsigned j = 0; j < i; ++j) {
    const std::uint64_t t = a + b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace oracle
