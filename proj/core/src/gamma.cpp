#include "compana/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace compana {

namespace {

using cld = std::complex<long double>;

// B_2j / (2j (2j - 1)), j = 1..11.
constexpr std::array<long double, 11> kStirling = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
    77683.0L / 5796.0L,
};

// Stirling's series is used once |w| >= this; the first omitted term is then
// below 1e-25 relative.
constexpr long double kStirlingRadius = 20.0L;

cld log_gamma_stirling(cld w) {
  const long double half_log_two_pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  const cld inv = 1.0L / w;
  const cld inv2 = inv * inv;
  cld correction = 0.0L;
  cld power = inv;
  for (const long double c : kStirling) {
    correction += c * power;
    power *= inv2;
  }
  return (w - 0.5L) * std::log(w) - w + half_log_two_pi + correction;
}

// log Gamma(w) for Re w >= 1/2, up to multiples of 2 pi i.
cld log_gamma_right_half(cld w) {
  if (std::abs(w) >= kStirlingRadius) return log_gamma_stirling(w);
  // Gamma(w) = Gamma(w + N) / (w (w + 1) ... (w + N - 1))
  cld product = 1.0L;
  cld shifted = w;
  while (std::abs(shifted) < kStirlingRadius) {
    product *= shifted;
    shifted += 1.0L;
  }
  return log_gamma_stirling(shifted) - std::log(product);
}

std::complex<double> narrow(cld g) { return {static_cast<double>(g.real()), static_cast<double>(g.imag())}; }

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw std::domain_error("Gamma has a pole at non-positive integers");
  }
  const cld w(z.real(), z.imag());
  if (z.real() >= 0.5) return narrow(std::exp(log_gamma_right_half(w)));
  // Reflection: Gamma(w) Gamma(1 - w) = pi / sin(pi w).
  const long double pi = std::numbers::pi_v<long double>;
  return narrow(pi / (std::sin(pi * w) * std::exp(log_gamma_right_half(1.0L - w))));
}

}  // namespace compana
