#pragma once

// Large-n behaviour of the multiplicity problem.
//
// The harmonic sum  S_m(n) = n^m/m! * sum_{k>=1} 2^(-km) exp(-n/2^k)
// approximates E|M_m|. Its Mellin transform has poles at
// z = m + i*theta_p, theta_p = 2*pi*p/log 2, whose residues give
//
//   S_m(n) = (1/(m! log 2)) * ((m-1)! + 2 Re sum_p e^(-2 pi i p log2 n) Gamma(m + i theta_p))
//
// up to terms of order exp(-n). log n * P(A_n^(m)) then oscillates around
// 1/m with the 1-periodic fluctuation F({log2 n}).

#include <complex>
#include <cstdint>
#include <vector>

namespace compana {

inline constexpr unsigned kDefaultHarmonics = 5;

/// 2 pi / log 2: frequency of the p-th residue pole is p times this.
double residue_frequency();

/// alpha = 2 pi^2 / log 2.
double fluctuation_alpha();

struct HarmonicSumResult {
  double n = 0.0;
  std::uint64_t m = 0;
  double direct = 0.0;
  double residue = 0.0;
  std::uint64_t k_lo = 0;
  std::uint64_t k_hi = 0;
  unsigned p_max = 0;
};

/// S_m(n) by summing over k, dropping terms below 1e-20 of the largest.
/// Requires n >= 2, m >= 1.
double harmonic_sum_direct(double n, std::uint64_t m);

/// Same, with the k range actually summed.
HarmonicSumResult harmonic_sum_direct_detail(double n, std::uint64_t m);

/// S_m(n) from the residue series truncated after p_max harmonics
/// (p_max = 0 leaves the constant 1/(m log 2)).
double harmonic_sum_residues(double n, std::uint64_t m, unsigned p_max = kDefaultHarmonics);

/// Both routes side by side.
HarmonicSumResult harmonic_sum(double n, std::uint64_t m, unsigned p_max = kDefaultHarmonics);

struct FluctuationParams {
  std::uint64_t m = 0;
  unsigned p_max = 0;
  double alpha = 0.0;
  std::vector<double> amplitudes;  // (2/m!) |Gamma(m + i theta_p)|, p = 1..p_max
  std::vector<double> phases;      // arg Gamma(m + i theta_p)
};

FluctuationParams fluctuation_params(std::uint64_t m, unsigned p_max = kDefaultHarmonics);

/// F(x) = (2/m!) Re sum_{p=1}^{p_max} e^(-2 pi i p x) Gamma(m + i theta_p).
/// x is reduced mod 1 first.
double fluctuation_F(double x, std::uint64_t m, unsigned p_max = kDefaultHarmonics);

/// Evaluates F from precomputed parameters (cosine form).
double fluctuation_F(double x, const FluctuationParams& params);

/// max |F| over `grid` equispaced points of [0, 1).
double fluctuation_max_abs(std::uint64_t m, unsigned p_max = kDefaultHarmonics,
                           std::size_t grid = 4096);

struct HarmonicTerm {
  double amplitude = 0.0;
  double phase = 0.0;
};

/// p-th harmonic of F: amplitude (2/m!) |Gamma(m + i theta_p)| (for m = 1 via
/// the closed form 2 (p alpha / sinh(p alpha))^(1/2)) and phase
/// arg Gamma(m + i theta_p).
HarmonicTerm first_harmonic_amplitude(std::uint64_t m, std::uint64_t p);

/// {log2 n}, taken from the mantissa of n so that large n lose nothing to
/// the integer part.
double frac_log2(double n);

/// (1/m + F({log2 n})) / log n. Requires n >= 3.
double theorem1_prediction(double n, std::uint64_t m);

/// Leading-order E|M_m|: harmonic_sum_direct(n, m).
double expected_Mm_asymptotic(double n, std::uint64_t m);

}  // namespace compana
