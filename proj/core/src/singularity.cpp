#include "compana/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace compana {

std::string_view to_string(RootMethod method) {
  switch (method) {
    case RootMethod::bisection_newton:
      return "bisection+newton";
    case RootMethod::series_expansion:
      return "series-expansion";
  }
  return "unknown";
}

double q_value(std::uint64_t k, double z) {
  return 1.0 - 2.0 * z + std::pow(z, static_cast<double>(k)) * (1.0 - z);
}

double q_derivative(std::uint64_t k, double z) {
  const double kd = static_cast<double>(k);
  return -2.0 + kd * std::pow(z, kd - 1.0) - (kd + 1.0) * std::pow(z, kd);
}

RhoSolution solve_rho(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("part size k must be >= 1");
  RhoSolution s;
  s.k = k;
  const int e = static_cast<int>(std::min<std::uint64_t>(k + 1, 2000));
  s.bracket_lo = 1.0 / (2.0 - std::ldexp(1.0, -e));
  s.bracket_hi = 0.5 + std::ldexp(1.0, -e);

  if (k > kMaxNewtonK) {
    s.method = RootMethod::series_expansion;
    s.epsilon = std::ldexp(1.0, -(e + 1));
    s.rho = 0.5 + s.epsilon;
    s.residual = std::fabs(q_value(k, s.rho));
    return s;
  }

  // Solve for eps = z - 1/2 directly: Q(1/2 + eps) = -2 eps + (1/2 + eps)^k (1/2 - eps).
  // Near 1/2 this avoids the cancellation in 1 - 2z, so eps keeps full
  // relative precision and rho = 1/2 + eps is rounded once.
  const double kd = static_cast<double>(k);
  auto g = [&](double eps) { return -2.0 * eps + std::pow(0.5 + eps, kd) * (0.5 - eps); };
  auto dg = [&](double eps) {
    return -2.0 + std::pow(0.5 + eps, kd - 1.0) * (kd * (0.5 - eps) - (0.5 + eps));
  };
  double lo = s.bracket_lo - 0.5;  // g(lo) > 0 > g(hi); g is decreasing
  double hi = s.bracket_hi - 0.5;
  double eps = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = g(eps);
    if (f == 0.0) break;
    (f > 0.0 ? lo : hi) = eps;
    double next = eps - f / dg(eps);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - eps);
    eps = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * eps) break;
  }
  // One more Newton step settles the last bit.
  if (const double polished = eps - g(eps) / dg(eps); polished > lo && polished < hi) eps = polished;
  s.method = RootMethod::bisection_newton;
  s.epsilon = eps;
  s.rho = 0.5 + eps;
  s.residual = std::fabs(q_value(k, s.rho));
  return s;
}

namespace {

// Winding number of Q around 0 along |z| = 1 with `samples` points.
double winding(std::uint64_t k, std::size_t samples) {
  const double kd = static_cast<double>(k);
  auto q_on_circle = [&](std::size_t j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
    const std::complex<double> z = std::polar(1.0, t);
    // z^k straight from the angle keeps the phase exact for large k.
    const std::complex<double> zk = std::polar(1.0, std::fmod(kd * t, 2.0 * std::numbers::pi));
    return 1.0 - 2.0 * z + zk * (1.0 - z);
  };
  double total = 0.0;
  std::complex<double> prev = q_on_circle(0);
  for (std::size_t j = 1; j <= samples; ++j) {
    const std::complex<double> cur = q_on_circle(j % samples);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace

int check_unique_root(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("part size k must be >= 1");
  constexpr std::size_t kFirst = std::size_t{1} << 12;
  constexpr std::size_t kLast = std::size_t{1} << 22;
  bool have_previous = false;
  long previous = 0;
  for (std::size_t samples = kFirst; samples <= kLast; samples *= 2) {
    const double w = winding(k, samples);
    const long rounded = std::lround(w);
    if (std::fabs(w - static_cast<double>(rounded)) > 1e-6) {
      have_previous = false;
      continue;
    }
    if (have_previous && previous == rounded) return static_cast<int>(rounded);
    previous = rounded;
    have_previous = true;
  }
  throw NumericalInstability("winding number of Q did not settle to an integer for k = " +
                             std::to_string(k));
}

GeometricBounds geometric_bounds(double n, std::uint64_t k) {
  if (!(n >= 1.0)) throw std::invalid_argument("n must be >= 1");
  const RhoSolution root = solve_rho(k);
  const int e = static_cast<int>(std::min<std::uint64_t>(k, 4000));
  GeometricBounds g;
  g.log_lower = -std::ldexp(n, -e);
  g.log_mid = -n * std::log1p(2.0 * root.epsilon);
  g.log_upper = -std::ldexp(n, -(e + 2));
  g.lower = std::exp(g.log_lower);
  g.mid = std::exp(g.log_mid);
  g.upper = std::exp(g.log_upper);
  return g;
}

SingularityApprox singularity_approx_prob(double n, std::uint64_t k, std::uint64_t m) {
  if (!(n >= 1.0)) throw std::invalid_argument("n must be >= 1");
  SingularityApprox a;
  a.n = n;
  a.k = k;
  a.m = m;
  a.root = solve_rho(k);
  const double rho = a.root.rho;
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);

  a.log_p_at_rho = kd * md * std::log(rho) + (md + 1.0) * std::log1p(-rho);
  a.p_at_rho = std::exp(a.log_p_at_rho);
  a.q_prime_at_rho = q_derivative(k, rho);
  a.log_geometric = -n * std::log1p(2.0 * a.root.epsilon);
  if (m <= 64) {
    double lb = 0.0;
    for (std::uint64_t i = 1; i <= m; ++i) lb += std::log1p(n / static_cast<double>(i));
    a.log_binomial = lb;
  } else {
    a.log_binomial = std::lgamma(n + md + 1.0) - std::lgamma(md + 1.0) - std::lgamma(n + 1.0);
  }
  a.log_value = a.log_binomial + std::numbers::ln2 + a.log_p_at_rho -
                (md + 1.0) * std::log(-rho * a.q_prime_at_rho) + a.log_geometric;
  if (m >= 1 && kd * md > n) a.log_value = -std::numeric_limits<double>::infinity();
  a.value = std::exp(a.log_value);
  return a;
}

}  // namespace compana
