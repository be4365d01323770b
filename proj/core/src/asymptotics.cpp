#include "compana/asymptotics.hpp"

#include "compana/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace compana {

namespace {

constexpr double kTruncation = 1e-20;

void check_args(double n, std::uint64_t m) {
  if (!(n >= 2.0)) throw std::invalid_argument("harmonic sum needs n >= 2");
  if (m == 0) throw std::invalid_argument("multiplicity m must be >= 1");
}

double factorial(std::uint64_t m) { return std::tgamma(static_cast<double>(m) + 1.0); }

std::complex<double> residue_gamma(std::uint64_t m, std::uint64_t p) {
  return complex_gamma({static_cast<double>(m), static_cast<double>(p) * residue_frequency()});
}

}  // namespace

double residue_frequency() { return 2.0 * std::numbers::pi / std::numbers::ln2; }

double fluctuation_alpha() { return 2.0 * std::numbers::pi * std::numbers::pi / std::numbers::ln2; }

double frac_log2(double n) {
  if (!(n > 0.0)) throw std::invalid_argument("frac_log2 needs n > 0");
  int e = 0;
  const double f = std::frexp(n, &e);  // n = f 2^e, f in [1/2, 1)
  if (f == 0.5) return 0.0;
  return 1.0 + std::log2(f);
}

HarmonicSumResult harmonic_sum_direct_detail(double n, std::uint64_t m) {
  check_args(n, m);
  const double md = static_cast<double>(m);
  const double log_prefactor = md * std::log(n) - std::lgamma(md + 1.0);
  auto log_term = [&](std::uint64_t k) {
    return log_prefactor - static_cast<double>(k) * md * std::numbers::ln2 -
           std::ldexp(n, -static_cast<int>(std::min<std::uint64_t>(k, 4000)));
  };
  // Terms rise until k ~ log2(n / (m log 2)) and fall geometrically after.
  const double peak = std::log2(n / (md * std::numbers::ln2));
  const auto k_peak = static_cast<std::uint64_t>(std::max(1.0, std::round(peak)));
  double log_max = log_term(k_peak);
  for (std::uint64_t k = k_peak > 1 ? k_peak - 1 : 1; k <= k_peak + 1; ++k) {
    log_max = std::max(log_max, log_term(k));
  }
  const double log_cut = log_max + std::log(kTruncation);

  std::vector<double> terms;
  HarmonicSumResult r;
  r.n = n;
  r.m = m;
  for (std::uint64_t k = 1;; ++k) {
    const double lt = log_term(k);
    if (lt >= log_cut) {
      if (terms.empty()) r.k_lo = k;
      r.k_hi = k;
      terms.push_back(std::exp(lt));
    } else if (static_cast<double>(k) > peak) {
      break;
    }
  }
  // Smallest first, with Neumaier compensation.
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  double comp = 0.0;
  for (const double t : terms) {
    const double s = sum + t;
    comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  r.direct = sum + comp;
  return r;
}

double harmonic_sum_direct(double n, std::uint64_t m) { return harmonic_sum_direct_detail(n, m).direct; }

double harmonic_sum_residues(double n, std::uint64_t m, unsigned p_max) {
  check_args(n, m);
  const double x = frac_log2(n);
  double oscillation = 0.0;
  for (unsigned p = 1; p <= p_max; ++p) {
    const std::complex<double> phase =
        std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(p) * x);
    oscillation += (phase * residue_gamma(m, p)).real();
  }
  const double md = static_cast<double>(m);
  return 1.0 / (md * std::numbers::ln2) + 2.0 * oscillation / (factorial(m) * std::numbers::ln2);
}

HarmonicSumResult harmonic_sum(double n, std::uint64_t m, unsigned p_max) {
  HarmonicSumResult r = harmonic_sum_direct_detail(n, m);
  r.residue = harmonic_sum_residues(n, m, p_max);
  r.p_max = p_max;
  return r;
}

HarmonicTerm first_harmonic_amplitude(std::uint64_t m, std::uint64_t p) {
  if (m == 0 || p == 0) throw std::invalid_argument("m and p must be >= 1");
  const std::complex<double> g = residue_gamma(m, p);
  HarmonicTerm h;
  h.phase = std::arg(g);
  if (m == 1) {
    // (x / sinh x)^(1/2) = exp((log 2x - x - log1p(-e^(-2x))) / 2)
    const double x = static_cast<double>(p) * fluctuation_alpha();
    h.amplitude = 2.0 * std::exp(0.5 * (std::log(2.0 * x) - x - std::log1p(-std::exp(-2.0 * x))));
  } else {
    h.amplitude = 2.0 / factorial(m) * std::abs(g);
  }
  return h;
}

FluctuationParams fluctuation_params(std::uint64_t m, unsigned p_max) {
  if (m == 0) throw std::invalid_argument("multiplicity m must be >= 1");
  FluctuationParams f;
  f.m = m;
  f.p_max = p_max;
  f.alpha = fluctuation_alpha();
  for (unsigned p = 1; p <= p_max; ++p) {
    const std::complex<double> g = residue_gamma(m, p);
    f.amplitudes.push_back(2.0 / factorial(m) * std::abs(g));
    f.phases.push_back(std::arg(g));
  }
  return f;
}

double fluctuation_F(double x, std::uint64_t m, unsigned p_max) {
  if (m == 0) throw std::invalid_argument("multiplicity m must be >= 1");
  x -= std::floor(x);
  double sum = 0.0;
  for (unsigned p = 1; p <= p_max; ++p) {
    const std::complex<double> phase =
        std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(p) * x);
    sum += (phase * residue_gamma(m, p)).real();
  }
  return 2.0 / factorial(m) * sum;
}

double fluctuation_F(double x, const FluctuationParams& params) {
  x -= std::floor(x);
  double sum = 0.0;
  for (std::size_t i = 0; i < params.amplitudes.size(); ++i) {
    const double p = static_cast<double>(i + 1);
    sum += params.amplitudes[i] * std::cos(2.0 * std::numbers::pi * p * x - params.phases[i]);
  }
  return sum;
}

double fluctuation_max_abs(std::uint64_t m, unsigned p_max, std::size_t grid) {
  if (grid == 0) throw std::invalid_argument("grid must be non-empty");
  const FluctuationParams params = fluctuation_params(m, p_max);
  double best = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    best = std::max(best, std::fabs(fluctuation_F(x, params)));
  }
  return best;
}

double theorem1_prediction(double n, std::uint64_t m) {
  if (!(n >= 3.0)) throw std::invalid_argument("prediction needs n >= 3");
  if (m == 0) throw std::invalid_argument("multiplicity m must be >= 1");
  return (1.0 / static_cast<double>(m) + fluctuation_F(frac_log2(n), m)) / std::log(n);
}

double expected_Mm_asymptotic(double n, std::uint64_t m) { return harmonic_sum_direct(n, m); }

}  // namespace compana
