#include <compana/composition.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <set>

#include "oracles.hpp"

using namespace compana;

namespace {

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old, had_ = true;
    setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (had_) {
      setenv(name_, old_.c_str(), 1);
    } else {
      unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::string old_;
  bool had_ = false;
};

}  // namespace

TEST(Composition, RejectsEmptyAndZeroParts) {
  EXPECT_THROW(Composition({}), std::invalid_argument);
  EXPECT_THROW(Composition({2, 0, 1}), std::invalid_argument);
  const Composition c({2, 1, 2});
  EXPECT_EQ(c.n(), 5u);
  EXPECT_EQ(c.part_count(), 3u);
}

TEST(Composition, CutBitsPlaceBoundaries) {
  // n = 5, cuts after cells 2 and 3: 2 + 1 + 2.
  EXPECT_EQ(bits_to_composition(5, {false, true, true, false}), Composition({2, 1, 2}));
  EXPECT_EQ(bits_to_composition(4, {false, false, false}), Composition({4}));
  EXPECT_EQ(bits_to_composition(4, {true, true, true}), Composition({1, 1, 1, 1}));
  EXPECT_EQ(bits_to_composition(1, {}), Composition({1}));
  EXPECT_THROW(bits_to_composition(5, {true}), std::invalid_argument);
}

TEST(Composition, PackedWordsMatchBitVector) {
  const std::uint64_t n = 150;
  std::vector<std::uint64_t> words = {0x8000000000000011ULL, 0x0123456789abcdefULL, 0x5ULL};
  std::vector<bool> bits(n - 1);
  for (std::uint64_t i = 1; i < n; ++i) bits[i - 1] = (words[(i - 1) / 64] >> ((i - 1) % 64)) & 1;
  EXPECT_EQ(composition_from_cut_words(n, words), bits_to_composition(n, bits));
}

TEST(Enumeration, IsABijectionOntoAllCompositions) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& c : enumerate_compositions(n)) {
      EXPECT_EQ(c.n(), n);
      const auto parts = c.parts();
      seen.emplace(parts.begin(), parts.end());
    }
    EXPECT_EQ(seen.size(), std::uint64_t{1} << (n - 1)) << "n=" << n;

    std::set<std::vector<std::uint64_t>> expected;
    oracle::compositions(n, [&](const oracle::Parts& p) { expected.insert(p); });
    EXPECT_EQ(seen, expected) << "n=" << n;
  }
}

TEST(Enumeration, StreamSizeAndOrderAreStable) {
  const auto stream = enumerate_compositions(4);
  EXPECT_EQ(stream.size(), 8u);
  auto it = stream.begin();
  EXPECT_EQ(*it, Composition({4}));
  ++it;
  EXPECT_EQ(*it, Composition({1, 3}));
}

TEST(Enumeration, CapIsEnforced) {
  EXPECT_THROW(enumerate_compositions(30, 25), CapExceeded);
  try {
    enumerate_compositions(26, 25);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.n(), 26u);
    EXPECT_EQ(e.cap(), 25u);
  }
  EXPECT_THROW(enumerate_compositions(0, 25), std::invalid_argument);
}

TEST(Enumeration, CapComesFromEnvironment) {
  EXPECT_EQ(enumeration_cap(), kDefaultEnumerationCap);
  {
    ScopedEnv env("COMPANA_ENUM_CAP", "8");
    EXPECT_EQ(enumeration_cap(), 8u);
    EXPECT_THROW(exact_event_distribution(9), CapExceeded);
  }
  {
    ScopedEnv env("COMPANA_ENUM_CAP", "garbage");
    EXPECT_EQ(enumeration_cap(), kDefaultEnumerationCap);
  }
}

TEST(Profile, CountsMultiplicities) {
  const auto prof = multiplicity_profile(Composition({2, 1, 2, 5, 1, 2}));
  EXPECT_EQ(prof.multiplicity(2), 3u);
  EXPECT_EQ(prof.multiplicity(1), 2u);
  EXPECT_EQ(prof.multiplicity(5), 1u);
  EXPECT_EQ(prof.multiplicity(7), 0u);
  EXPECT_EQ(prof.distinct_count(), 3u);
  EXPECT_EQ(prof.count_with_multiplicity(1), 1u);
  EXPECT_EQ(prof.sizes_with_multiplicity(3), std::vector<std::uint64_t>{2});
  EXPECT_EQ(prof.total(), 13u);
  EXPECT_EQ(prof.part_count(), 6u);
}

TEST(Profile, TotalsMatchCompositionForEveryComposition) {
  for (const auto& c : enumerate_compositions(10)) {
    const auto prof = multiplicity_profile(c);
    EXPECT_EQ(prof.total(), c.n());
    EXPECT_EQ(prof.part_count(), c.part_count());
    std::size_t by_m = 0;
    for (std::uint64_t m = 1; m <= 10; ++m) by_m += prof.count_with_multiplicity(m);
    EXPECT_EQ(by_m, prof.distinct_count());
  }
}

TEST(ExactEvent, SizeFiveTable) {
  const auto dist = exact_event_distribution(5);
  ASSERT_EQ(dist.size(), 6u);
  EXPECT_EQ(dist[0], 0);
  EXPECT_EQ(dist[1], Rational(5, 8));
  EXPECT_EQ(dist[2], Rational(3, 16));
  EXPECT_EQ(dist[3], Rational(1, 8));
  EXPECT_EQ(dist[4], 0);
  EXPECT_EQ(dist[5], Rational(1, 16));
}

TEST(ExactEvent, SizeOneIsCertain) {
  EXPECT_EQ(exact_event_probability(1, 1), 1);
  EXPECT_EQ(exact_event_probability(1, 2), 0);
}

TEST(ExactEvent, DistributionSumsToOne) {
  for (std::uint64_t n = 1; n <= 16; ++n) {
    const auto dist = exact_event_distribution(n);
    const Rational total = std::accumulate(dist.begin(), dist.end(), Rational(0));
    EXPECT_EQ(total, 1) << "n=" << n;
  }
}

TEST(ExactEvent, MatchesRecursiveOracle) {
  for (std::uint64_t n = 1; n <= 11; ++n) {
    const auto dist = exact_event_distribution(n);
    for (std::uint64_t m = 1; m <= n; ++m) {
      EXPECT_EQ(dist[m], oracle::event_probability(n, m)) << "n=" << n << " m=" << m;
      EXPECT_EQ(exact_event_probability(n, m), dist[m]);
    }
  }
}

TEST(CountTable, MatchesRecursiveOracle) {
  const std::uint64_t n = 9;
  const auto table = multiplicity_count_table(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t row = 0;
    for (std::uint64_t m = 0; m <= n; ++m) {
      EXPECT_EQ(table[k][m], oracle::count_with_multiplicity(n, k, m)) << "k=" << k << " m=" << m;
      row += table[k][m];
    }
    EXPECT_EQ(row, std::uint64_t{1} << (n - 1));
  }
}
