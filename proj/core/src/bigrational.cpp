#include "compana/bigrational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace compana {

BigInt pow2(unsigned long e) {
  BigInt r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

namespace {

double log_abs_integer(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double log_of(const Rational& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  if (sgn(q) < 0) return std::numeric_limits<double>::quiet_NaN();
  return log_abs_integer(q.get_num()) - log_abs_integer(q.get_den());
}

double to_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0;
  const double l = log_of(q);
  // mpq_get_d truncates; it is accurate enough inside the normal range.
  if (l > -700.0 && l < 700.0) return q.get_d();
  return std::exp(l);
}

double relative_error_log(double log_approx, const Rational& exact) {
  return std::fabs(std::expm1(log_approx - log_of(exact)));
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const Rational& q, int digits) {
  if (sgn(q) == 0) return "0";
  // Enough binary precision for the requested decimal digits plus guard bits.
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  f = q;
  mp_exp_t exp10 = 0;
  std::string mant = f.get_str(exp10, 10, static_cast<std::size_t>(digits));
  bool neg = false;
  if (!mant.empty() && mant[0] == '-') {
    neg = true;
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::ostringstream out;
  if (neg) out << '-';
  // mpf gives 0.mant * 10^exp10; print as d.ddd e(exp10-1) unless it fits
  // plainly, mirroring %g.
  const long sci = static_cast<long>(exp10) - 1;
  if (sci < -5 || sci >= digits) {
    out << mant[0];
    if (mant.size() > 1) out << '.' << mant.substr(1);
    out << 'e' << (sci < 0 ? "-" : "+");
    const long a = sci < 0 ? -sci : sci;
    if (a < 10) out << '0';
    out << a;
  } else if (sci < 0) {
    out << "0." << std::string(static_cast<std::size_t>(-sci - 1), '0') << mant;
  } else {
    const auto int_len = static_cast<std::size_t>(sci + 1);
    if (mant.size() <= int_len) {
      out << mant << std::string(int_len - mant.size(), '0');
    } else {
      out << mant.substr(0, int_len) << '.' << mant.substr(int_len);
    }
  }
  return out.str();
}

}  // namespace compana
