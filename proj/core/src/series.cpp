#include "compana/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace compana {

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  IntPolynomial out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) != 0) out[i + j] += a[i] * b[j];
    }
  }
  while (out.size() > 1 && sgn(out.back()) == 0) out.pop_back();
  return out;
}

namespace {

IntPolynomial power(const IntPolynomial& base, std::uint64_t e) {
  IntPolynomial result{BigInt(1)};
  for (std::uint64_t i = 0; i < e; ++i) result = multiply(result, base);
  return result;
}

void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

// P(j in D) when j > n/2: at most one part of size j fits, and the pairs
// (prefix, suffix) of total n - j number (N+3) 2^(N-2) for N = n - j >= 1.
Rational prob_in_D_large_part(std::uint64_t n, std::uint64_t j) {
  if (j > n) return Rational(0);
  if (j == n) return Rational(BigInt(1), pow2(n - 1));
  const std::uint64_t rest = n - j;
  Rational q(BigInt(static_cast<unsigned long>(rest + 3)), pow2(j + 1));
  q.canonicalize();
  return q;
}

}  // namespace

RationalFunctionSpec::RationalFunctionSpec(IntPolynomial numerator, IntPolynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (denominator_.empty() || denominator_[0] != 1) {
    throw std::invalid_argument("denominator must have constant term 1");
  }
  if (numerator_.empty()) numerator_.emplace_back(0);
}

RationalFunctionSpec build_multiplicity_gf(std::uint64_t k, std::uint64_t m) {
  require_positive(k, "part size k");
  // Q(z) = 1 - 2z + z^k - z^(k+1); for k = 1 the z terms merge.
  IntPolynomial q(k + 2, BigInt(0));
  q[0] += 1;
  q[1] -= 2;
  q[k] += 1;
  q[k + 1] -= 1;
  IntPolynomial numerator(k * m, BigInt(0));
  const IntPolynomial one_minus_z_power = power(IntPolynomial{BigInt(1), BigInt(-1)}, m + 1);
  numerator.insert(numerator.end(), one_minus_z_power.begin(), one_minus_z_power.end());
  return RationalFunctionSpec(std::move(numerator), power(q, m + 1));
}

CoefficientWindow::CoefficientWindow(const RationalFunctionSpec& spec) {
  const auto& den = spec.denominator();
  for (std::size_t j = 1; j < den.size(); ++j) {
    if (sgn(den[j]) == 0) continue;
    Term t{j, 0, den[j], den[j].fits_slong_p()};
    if (t.fits) t.small = den[j].get_si();
    recurrence_.push_back(std::move(t));
  }
  const auto& num = spec.numerator();
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (sgn(num[i]) != 0) forcing_.emplace_back(i, num[i]);
  }
  ring_.assign(std::max<std::size_t>(spec.denominator_degree(), 1), BigInt(0));
}

void CoefficientWindow::skip_zero_prefix(std::uint64_t target) {
  if (target < index_) throw std::logic_error("cannot move a coefficient window backwards");
  if (!forcing_.empty() && target > forcing_.front().first) {
    throw std::logic_error("skipped range contains nonzero coefficients");
  }
  index_ = target;
}

const BigInt& CoefficientWindow::advance() {
  const std::size_t len = ring_.size();
  const auto it = std::lower_bound(forcing_.begin(), forcing_.end(), index_,
                                   [](const auto& term, std::uint64_t i) { return term.first < i; });
  if (it != forcing_.end() && it->first == index_) {
    scratch_ = it->second;
  } else {
    scratch_ = 0;
  }
  for (const auto& term : recurrence_) {
    if (term.offset > index_) continue;
    const BigInt& prev = ring_[(index_ - term.offset) % len];
    if (term.fits) {
      if (term.small > 0) {
        mpz_submul_ui(scratch_.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(term.small));
      } else {
        mpz_addmul_ui(scratch_.get_mpz_t(), prev.get_mpz_t(),
                      static_cast<unsigned long>(-(term.small + 1)) + 1UL);
      }
    } else {
      mpz_submul(scratch_.get_mpz_t(), term.big.get_mpz_t(), prev.get_mpz_t());
    }
  }
  BigInt& slot = ring_[index_ % len];
  mpz_swap(slot.get_mpz_t(), scratch_.get_mpz_t());
  ++index_;
  return slot;
}

BigInt extract_coefficient(const RationalFunctionSpec& spec, std::uint64_t n) {
  const auto& num = spec.numerator();
  std::uint64_t first = 0;
  while (first < num.size() && sgn(num[first]) == 0) ++first;
  if (first == num.size() || n < first) return BigInt(0);
  CoefficientWindow window(spec);
  window.skip_zero_prefix(first);
  while (window.index() < n) window.advance();
  return window.advance();
}

Rational prob_multiplicity(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  require_positive(n, "composition size n");
  require_positive(k, "part size k");
  if (k > n && m > 0) return Rational(0);
  if (m > 0 && k * m > n) return Rational(0);
  Rational q(extract_coefficient(build_multiplicity_gf(k, m), n), pow2(n - 1));
  q.canonicalize();
  return q;
}

Rational prob_in_D(std::uint64_t n, std::uint64_t k) {
  require_positive(n, "composition size n");
  require_positive(k, "part size k");
  if (k > n) return Rational(0);
  return Rational(1) - prob_multiplicity(n, k, 0);
}

Rational expected_Mm_exact(std::uint64_t n, std::uint64_t m) {
  require_positive(n, "composition size n");
  require_positive(m, "multiplicity m");
  Rational sum = 0;
  for (std::uint64_t k = 1; k <= n / m; ++k) sum += prob_multiplicity(n, k, m);
  return sum;
}

WindowBounds lemma3_window_bounds(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  if (a < 1 || a > b || b > n) {
    throw std::invalid_argument("window needs 1 <= a <= b <= n (got a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ", n=" + std::to_string(n) + ")");
  }
  WindowBounds w{Rational(0), Rational(0)};
  for (std::uint64_t j = 1; j <= a; ++j) w.below += prob_multiplicity(n, j, 0);
  for (std::uint64_t j = b + 1; j <= n; ++j) {
    w.above += 2 * j > n ? prob_in_D_large_part(n, j) : prob_in_D(n, j);
  }
  return w;
}

double scaled_coefficient(const RationalFunctionSpec& spec, std::uint64_t n) {
  const auto& num = spec.numerator();
  const auto& den = spec.denominator();
  std::uint64_t first = 0;
  while (first < num.size() && sgn(num[first]) == 0) ++first;
  if (first == num.size() || n < first) return 0.0;

  // v_i = c_i / 2^(i - first), so v_first = numerator[first].
  std::vector<std::pair<std::size_t, long double>> rec;
  for (std::size_t j = 1; j < den.size(); ++j) {
    if (sgn(den[j]) != 0) rec.emplace_back(j, std::ldexp(static_cast<long double>(den[j].get_d()), -static_cast<int>(j)));
  }
  const std::size_t len = std::max<std::size_t>(den.size() - 1, 1);
  std::vector<long double> ring(len, 0.0L);
  long double v = 0.0L;
  for (std::uint64_t i = first; i <= n; ++i) {
    v = 0.0L;
    const std::uint64_t rel = i - first;
    if (i < num.size() && sgn(num[i]) != 0) {
      v = std::ldexp(static_cast<long double>(num[i].get_d()), -static_cast<int>(rel));
    }
    for (const auto& [j, c] : rec) {
      if (j <= rel) v -= c * ring[(rel - j) % len];
    }
    ring[rel % len] = v;
  }
  // c_n / 2^(n-1) = v_n * 2^(1 - first)
  return static_cast<double>(std::ldexp(v, 1 - static_cast<int>(first)));
}

double prob_in_D_numeric(std::uint64_t n, std::uint64_t k) {
  require_positive(n, "composition size n");
  require_positive(k, "part size k");
  if (k > n) return 0.0;
  if (2 * k > n) return to_double(prob_in_D_large_part(n, k));
  return 1.0 - scaled_coefficient(build_multiplicity_gf(k, 0), n);
}

NumericWindowBounds lemma3_window_bounds_numeric(std::uint64_t n, std::uint64_t a, std::uint64_t b,
                                                 double tail_tolerance) {
  if (a < 1 || a > b || b > n) {
    throw std::invalid_argument("window needs 1 <= a <= b <= n");
  }
  NumericWindowBounds w;
  for (std::uint64_t j = 1; j <= a; ++j) {
    w.below += scaled_coefficient(build_multiplicity_gf(j, 0), n);
  }
  // Smallest J >= b with (n+3)/2^(J+1) <= tolerance, capped at n.
  std::uint64_t last = b;
  const double nn = static_cast<double>(n) + 3.0;
  while (last < n && std::ldexp(nn, -static_cast<int>(std::min<std::uint64_t>(last + 1, 4000))) > tail_tolerance) {
    ++last;
  }
  w.evaluated_up_to = last;
  for (std::uint64_t j = b + 1; j <= last; ++j) w.above += prob_in_D_numeric(n, j);
  if (last < n) {
    w.tail_bound = std::ldexp(nn, -static_cast<int>(std::min<std::uint64_t>(last + 1, 4000)));
    w.above += w.tail_bound;
  }
  return w;
}

std::pair<std::uint64_t, std::uint64_t> distinct_window(std::uint64_t n) {
  require_positive(n, "composition size n");
  const auto log2n = static_cast<std::uint64_t>(std::bit_width(n) - 1);
  std::uint64_t offset = 0;
  if (n >= 3) {
    const double ll = std::log(std::log(static_cast<double>(n)));
    offset = ll > 0.0 ? static_cast<std::uint64_t>(std::ceil(ll)) : 0;
  }
  const std::uint64_t a = log2n > offset ? log2n - offset : 1;
  const std::uint64_t b = std::min<std::uint64_t>(std::max<std::uint64_t>(log2n + offset, a), n);
  return {std::max<std::uint64_t>(a, 1), b};
}

}  // namespace compana
