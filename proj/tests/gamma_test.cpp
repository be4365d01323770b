#include <compana/gamma.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace compana;
using cd = std::complex<double>;

namespace {

double rel(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(Gamma, Factorials) {
  EXPECT_NEAR(complex_gamma({1, 0}).real(), 1.0, 1e-14);
  EXPECT_NEAR(complex_gamma({5, 0}).real(), 24.0, 24e-14);
  EXPECT_NEAR(complex_gamma({0.5, 0}).real(), std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_EQ(complex_gamma({5, 0}).imag(), 0.0);
}

TEST(Gamma, HighPrecisionReferenceValues) {
  const double theta = 2 * std::numbers::pi / std::numbers::ln2;
  struct Case {
    cd z;
    cd value;
  };
  // Reference values computed to 20 digits with an arbitrary-precision library.
  const Case cases[] = {
      {{1, theta}, {3.176622645215371521e-6, -3.7861079985648222373e-6}},
      {{2, theta}, {0.000037496632615912032745, 0.000025009087727034811422}},
      {{3, theta}, {-0.00015170711956312039444, 0.00038991466169626410676}},
      {{1, 2 * theta}, {-3.7130273099474193897e-12, -2.6764601770054968314e-12}},
      {{0.5, 3}, {0.02144567055243064606, 0.0068653648372616779142}},
      {{10, 200}, {3.6041845681484976209e-115, 5.5879354297795858953e-115}},
      {{5.5, -37.25}, {-1.5112413935807170467e-18, 6.9101608917553738052e-18}},
      {{-2.5, 1.5}, {0.0034121395642391490286, -0.024053490434664735984}},
      {{0.25, 0}, {3.6256099082219083119, 0.0}},
  };
  for (const auto& c : cases) {
    EXPECT_LE(rel(complex_gamma(c.z), c.value), 1e-13) << c.z;
  }
}

TEST(Gamma, ModulusOnTheLineOnePlusIy) {
  const double theta = 2 * std::numbers::pi / std::numbers::ln2;
  for (double y : {1.0, theta, 2 * theta, 0.1, 20.0}) {
    const double g = std::abs(complex_gamma({1, y}));
    const double expect = std::numbers::pi * y / std::sinh(std::numbers::pi * y);
    EXPECT_LE(std::fabs(g * g - expect) / expect, 1e-10) << "y=" << y;
  }
}

TEST(Gamma, RecurrenceOnUsageStrip) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> re(0.5, 10.0);
  std::uniform_real_distribution<double> im(-200.0, 200.0);
  for (int i = 0; i < 100; ++i) {
    const cd z(re(gen), im(gen));
    const cd ratio = complex_gamma(z + 1.0) / (z * complex_gamma(z));
    EXPECT_LE(std::abs(ratio - 1.0), 1e-12) << z;
  }
}

TEST(Gamma, Reflection) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> re(0.05, 0.95);
  std::uniform_real_distribution<double> im(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const cd z(re(gen), im(gen));
    const cd lhs = complex_gamma(z) * complex_gamma(1.0 - z);
    const cd rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
    EXPECT_LE(rel(lhs, rhs), 1e-10) << z;
  }
}

TEST(Gamma, ConjugateSymmetry) {
  const cd z(2.5, 13.0);
  EXPECT_LE(rel(complex_gamma(std::conj(z)), std::conj(complex_gamma(z))), 1e-15);
}

TEST(Gamma, PolesAreDomainErrors) {
  EXPECT_THROW(complex_gamma({0, 0}), std::domain_error);
  EXPECT_THROW(complex_gamma({-3, 0}), std::domain_error);
  EXPECT_NO_THROW(complex_gamma({-3, 1e-3}));
}
