#pragma once

// The dominant zero rho_k of Q(z) = 1 - 2z + z^k (1 - z) and the
// leading-pole approximation of P(k in M_m) that it controls.

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace compana {

/// Raised when a numerical procedure cannot reach a trustworthy answer.
class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RootMethod { bisection_newton, series_expansion };

std::string_view to_string(RootMethod method);

/// Largest k solved by bisection + Newton; beyond it rho is the two-term
/// expansion 1/2 + 2^-(k+2).
inline constexpr unsigned kMaxNewtonK = 40;

struct RhoSolution {
  std::uint64_t k = 0;
  double rho = 0.0;
  /// rho - 1/2, kept separately so that log(2 rho) = log1p(2 epsilon) stays
  /// accurate when rho itself rounds to 1/2.
  double epsilon = 0.0;
  double bracket_lo = 0.0;  // 1 / (2 - 2^-(k+1))
  double bracket_hi = 0.0;  // 1/2 + 2^-(k+1)
  double residual = 0.0;    // |Q(rho)|
  RootMethod method = RootMethod::bisection_newton;
};

double q_value(std::uint64_t k, double z);
double q_derivative(std::uint64_t k, double z);

/// Throws std::invalid_argument for k == 0.
RhoSolution solve_rho(std::uint64_t k);

/// Number of zeros of Q inside the unit circle, from the winding of Q(e^it)
/// sampled at 2^12, 2^13, ... points until two successive counts agree.
/// Throws NumericalInstability if no stable integer emerges by 2^22 samples.
int check_unique_root(std::uint64_t k);

/// (exp(-n/2^k), (2 rho_k)^-n, exp(-n/2^(k+2))) with their natural logs.
struct GeometricBounds {
  double lower = 0.0;
  double mid = 0.0;
  double upper = 0.0;
  double log_lower = 0.0;
  double log_mid = 0.0;
  double log_upper = 0.0;
};

GeometricBounds geometric_bounds(double n, std::uint64_t k);

/// Leading-pole estimate
///
///   P(k in M_m) ~ C(n+m, m) * 2 P(rho) / (-rho Q'(rho))^(m+1) * (2 rho)^-n
///
/// with P(z) = z^(km) (1-z)^(m+1). Everything is carried in log space;
/// `value` underflows to 0 where log_value is still meaningful.
struct SingularityApprox {
  double n = 0.0;
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  double value = 0.0;
  double log_value = 0.0;
  double p_at_rho = 0.0;          // P(rho)
  double log_p_at_rho = 0.0;
  double q_prime_at_rho = 0.0;    // Q'(rho)
  double log_geometric = 0.0;     // log (2 rho)^-n
  double log_binomial = 0.0;      // log C(n+m, m)
  RhoSolution root;
};

/// Leading-pole approximation to P(size k has multiplicity m). When m >= 1
/// and k*m > n the event is impossible and value is exactly 0 (log_value
/// -infinity); the root fields are still filled in.
SingularityApprox singularity_approx_prob(double n, std::uint64_t k, std::uint64_t m);

}  // namespace compana
