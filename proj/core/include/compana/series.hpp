#pragma once

// Exact coefficient extraction for the rational generating function
//
//     z^(km) (1-z)^(m+1) / (1 - 2z + z^k (1-z))^(m+1)
//
// whose [z^n] coefficient counts compositions of n in which part size k has
// multiplicity exactly m. Coefficients come from the linear recurrence of
// the denominator, kept in a ring buffer of exact integers.

#include <compana/bigrational.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace compana {

/// Integer polynomial, coefficients by ascending degree.
using IntPolynomial = std::vector<BigInt>;

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b);

class RationalFunctionSpec {
 public:
  /// Throws std::invalid_argument unless denominator[0] == 1.
  RationalFunctionSpec(IntPolynomial numerator, IntPolynomial denominator);

  const IntPolynomial& numerator() const noexcept { return numerator_; }
  const IntPolynomial& denominator() const noexcept { return denominator_; }
  std::size_t denominator_degree() const noexcept { return denominator_.size() - 1; }

 private:
  IntPolynomial numerator_;
  IntPolynomial denominator_;
};

RationalFunctionSpec build_multiplicity_gf(std::uint64_t k, std::uint64_t m);

/// Streams the power-series coefficients c_0, c_1, ... of a
/// RationalFunctionSpec. Holds the last deg(denominator) coefficients;
/// only nonzero denominator terms take part in the recurrence.
class CoefficientWindow {
 public:
  explicit CoefficientWindow(const RationalFunctionSpec& spec);

  /// Index of the coefficient returned by the next call to advance().
  std::uint64_t index() const noexcept { return index_; }

  /// Computes c_index() and moves on.
  const BigInt& advance();

  /// Skips ahead to `target` when every coefficient before it is known to
  /// be zero (valid while target <= first nonzero numerator index).
  void skip_zero_prefix(std::uint64_t target);

 private:
  struct Term {
    std::size_t offset;
    long small;  // coefficient when it fits in a long
    BigInt big;
    bool fits;
  };
  std::vector<Term> recurrence_;                        // denominator[j] != 0, j >= 1
  std::vector<std::pair<std::size_t, BigInt>> forcing_;  // numerator[i] != 0
  std::vector<BigInt> ring_;
  std::uint64_t index_ = 0;
  BigInt scratch_;
};

/// [z^n] of the spec's series.
BigInt extract_coefficient(const RationalFunctionSpec& spec, std::uint64_t n);

/// P(k in M_m(kappa)) for a uniform composition of n.
Rational prob_multiplicity(std::uint64_t n, std::uint64_t k, std::uint64_t m);

/// P(k in D(kappa)) = 1 - P(k in M_0(kappa)).
Rational prob_in_D(std::uint64_t n, std::uint64_t k);

/// E|M_m| = sum over k = 1..floor(n/m) of P(k in M_m).
Rational expected_Mm_exact(std::uint64_t n, std::uint64_t m);

/// Union-bound terms for the event a <= |D| <= b.
struct WindowBounds {
  Rational below;  // sum over j <= a of (1 - p_j)
  Rational above;  // sum over b < j <= n of p_j
  Rational lower_bound() const { return Rational(1) - below - above; }
};

/// Exact union-bound terms with p_j = prob_in_D(n, j).
/// Throws std::invalid_argument unless 1 <= a <= b <= n.
WindowBounds lemma3_window_bounds(std::uint64_t n, std::uint64_t a, std::uint64_t b);

// -- floating-point companions for n beyond the exact range ----------------

/// [z^n] / 2^(n-1) by the same recurrence run on 2^-i scaled coefficients
/// in long double. All modes of the scaled recurrence decay, so rounding
/// errors stay at the n * epsilon level.
double scaled_coefficient(const RationalFunctionSpec& spec, std::uint64_t n);

double prob_in_D_numeric(std::uint64_t n, std::uint64_t k);

/// Union-bound terms in floating point. Sizes with expected count below
/// tail_tolerance are not evaluated one by one; their contribution to
/// `above` is replaced by the closed-form bound sum_{j>J} (n-j+3)/2^(j+1),
/// which dominates the exact tail, so the reported lower bound stays valid.
struct NumericWindowBounds {
  double below = 0.0;
  double above = 0.0;
  std::uint64_t evaluated_up_to = 0;  // J; sizes above J use the tail bound
  double tail_bound = 0.0;
  double lower_bound() const { return 1.0 - below - above; }
};

NumericWindowBounds lemma3_window_bounds_numeric(std::uint64_t n, std::uint64_t a, std::uint64_t b,
                                                 double tail_tolerance = 1e-18);

/// [a, b] = [floor(log2 n) - ceil(log log n), floor(log2 n) + ceil(log log n)],
/// clamped to 1 <= a <= b <= n.
std::pair<std::uint64_t, std::uint64_t> distinct_window(std::uint64_t n);

}  // namespace compana
