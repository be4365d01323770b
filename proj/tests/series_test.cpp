#include <compana/composition.hpp>
#include <compana/series.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace compana;

TEST(Polynomial, Multiply) {
  const IntPolynomial a = {1, -2, 0, 1};
  const IntPolynomial b = {1, 1};
  EXPECT_EQ(multiply(a, b), (IntPolynomial{1, -1, -2, 1, 1}));
}

TEST(RationalFunction, RequiresUnitConstantTerm) {
  EXPECT_THROW(RationalFunctionSpec({1}, {2, 1}), std::invalid_argument);
  EXPECT_THROW(RationalFunctionSpec({1}, {}), std::invalid_argument);
  EXPECT_NO_THROW(RationalFunctionSpec({1}, {1, -1}));
}

TEST(RationalFunction, FibonacciCoefficients) {
  const RationalFunctionSpec fib({1}, {1, -1, -1});
  for (unsigned i = 0; i <= 90; ++i) {
    EXPECT_EQ(extract_coefficient(fib, i), BigInt(std::to_string(oracle::fibonacci(i + 1)))) << i;
  }
}

TEST(RationalFunction, NumeratorShiftAndGeometric) {
  // z^3 / (1 - 2z): coefficient of z^n is 2^(n-3) for n >= 3.
  const RationalFunctionSpec g({0, 0, 0, 1}, {1, -2});
  EXPECT_EQ(extract_coefficient(g, 2), 0);
  EXPECT_EQ(extract_coefficient(g, 3), 1);
  EXPECT_EQ(extract_coefficient(g, 70), pow2(67));
}

TEST(MultiplicityGf, DenominatorIsPowerOfQ) {
  const auto spec = build_multiplicity_gf(2, 1);
  // (1 - 2z + z^2 - z^3)^2
  EXPECT_EQ(spec.denominator(), (IntPolynomial{1, -4, 6, -6, 5, -2, 1}));
  // z^2 (1 - z)^2
  EXPECT_EQ(spec.numerator(), (IntPolynomial{0, 0, 1, -2, 1}));
}

TEST(MultiplicityGf, CoefficientsCountCompositions) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const auto table = multiplicity_count_table(n);
    for (std::uint64_t k = 1; k <= n; ++k) {
      for (std::uint64_t m = 0; m <= n; ++m) {
        const BigInt c = extract_coefficient(build_multiplicity_gf(k, m), n);
        ASSERT_EQ(c, BigInt(std::to_string(table[k][m]))) << "n=" << n << " k=" << k << " m=" << m;
      }
    }
  }
}

TEST(ProbMultiplicity, AgreesWithRecursiveOracle) {
  EXPECT_EQ(prob_multiplicity(5, 1, 1), Rational(5, 16));
  for (std::uint64_t k = 1; k <= 7; ++k) {
    for (std::uint64_t m = 0; m <= 7; ++m) {
      Rational expect(oracle::count_with_multiplicity(7, k, m), 64);
      expect.canonicalize();
      EXPECT_EQ(prob_multiplicity(7, k, m), expect) << "k=" << k << " m=" << m;
    }
  }
}

TEST(ProbMultiplicity, Normalised) {
  for (std::uint64_t n : {1u, 9u, 16u, 40u}) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      Rational total = 0;
      for (std::uint64_t m = 0; m * k <= n; ++m) total += prob_multiplicity(n, k, m);
      EXPECT_EQ(total, 1) << "n=" << n << " k=" << k;
    }
  }
}

TEST(ProbMultiplicity, ImpossibleEvents) {
  EXPECT_EQ(prob_multiplicity(10, 11, 1), 0);
  EXPECT_EQ(prob_multiplicity(10, 4, 3), 0);
  EXPECT_EQ(prob_multiplicity(10, 11, 0), 1);
  EXPECT_EQ(prob_multiplicity(10, 10, 1), Rational(1, 512));
}

TEST(ProbInD, LargePartsHaveClosedForm) {
  // For 2j > n at most one part can be j; the count of compositions using it
  // is (n - j + 3) 2^(n - j - 2) when j < n.
  const std::uint64_t n = 40;
  for (std::uint64_t j = n / 2 + 1; j < n; ++j) {
    Rational expect(BigInt(static_cast<unsigned long>(n - j + 3)), pow2(j + 1));
    expect.canonicalize();
    EXPECT_EQ(prob_in_D(n, j), expect) << "j=" << j;
  }
  EXPECT_EQ(prob_in_D(n, n), Rational(BigInt(1), pow2(n - 1)));
  EXPECT_EQ(prob_in_D(n, n + 1), 0);
}

TEST(ExpectedCount, MatchesEnumeration) {
  EXPECT_EQ(expected_Mm_exact(5, 1), Rational(19, 16));
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t m = 1; m <= 3; ++m) {
      Rational total = 0;
      std::uint64_t count = 0;
      oracle::compositions(n, [&](const oracle::Parts& parts) {
        ++count;
        for (const auto& [size, k] : oracle::multiplicities(parts)) total += (k == m);
      });
      total /= count;
      EXPECT_EQ(expected_Mm_exact(n, m), total) << "n=" << n << " m=" << m;
    }
  }
}

TEST(ScaledCoefficient, TracksExactProbability) {
  for (std::uint64_t n : {50u, 500u}) {
    for (std::uint64_t k : {1u, 3u, 8u}) {
      for (std::uint64_t m : {0u, 1u, 2u}) {
        const double exact = to_double(prob_multiplicity(n, k, m));
        const double scaled = scaled_coefficient(build_multiplicity_gf(k, m), n);
        EXPECT_NEAR(scaled, exact, 1e-14 + 1e-12 * exact) << n << " " << k << " " << m;
      }
    }
  }
}

TEST(WindowBounds, ValidatesArguments) {
  EXPECT_THROW(lemma3_window_bounds(10, 0, 3), std::invalid_argument);
  EXPECT_THROW(lemma3_window_bounds(10, 4, 3), std::invalid_argument);
  EXPECT_THROW(lemma3_window_bounds(10, 2, 11), std::invalid_argument);
  EXPECT_THROW(lemma3_window_bounds_numeric(10, 4, 3), std::invalid_argument);
}

TEST(WindowBounds, SumsMatchDefinition) {
  const std::uint64_t n = 30;
  const WindowBounds w = lemma3_window_bounds(n, 3, 7);
  Rational below = 0;
  for (std::uint64_t j = 1; j <= 3; ++j) below += 1 - prob_in_D(n, j);
  Rational above = 0;
  for (std::uint64_t j = 8; j <= n; ++j) above += prob_in_D(n, j);
  EXPECT_EQ(w.below, below);
  EXPECT_EQ(w.above, above);
  EXPECT_EQ(w.lower_bound(), 1 - below - above);
}

TEST(WindowBounds, NumericRouteMatchesExact) {
  const std::uint64_t n = 400;
  const auto [a, b] = distinct_window(n);
  const WindowBounds exact = lemma3_window_bounds(n, a, b);
  const NumericWindowBounds num = lemma3_window_bounds_numeric(n, a, b);
  EXPECT_NEAR(num.below, to_double(exact.below), 1e-13);
  // The numeric route adds a tail bound of at most 1e-18.
  EXPECT_LE(num.tail_bound, 1e-18);
  EXPECT_NEAR(num.above, to_double(exact.above), 1e-13);
  EXPECT_GE(num.above + 1e-15, to_double(exact.above));
}

TEST(WindowBounds, WindowEndpoints) {
  EXPECT_EQ(distinct_window(1000000), (std::pair<std::uint64_t, std::uint64_t>{16, 22}));
  EXPECT_EQ(distinct_window(5), (std::pair<std::uint64_t, std::uint64_t>{1, 3}));
  for (std::uint64_t n = 1; n <= 100; ++n) {
    const auto [a, b] = distinct_window(n);
    EXPECT_GE(a, 1u);
    EXPECT_LE(a, b);
    EXPECT_LE(b, n);
  }
}
