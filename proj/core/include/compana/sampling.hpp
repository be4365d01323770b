#pragma once

// Uniform random compositions and Monte Carlo estimates of the multiplicity
// events. A sample is n-1 fair cut bits; the census scanner reads |D| and
// |M_m| straight off the packed bits so that n ~ 10^6 stays cheap.

#include <compana/composition.hpp>
#include <compana/rng.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace compana {

/// Monte Carlo estimate of a probability or mean.
struct EventEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Fills `words` with n-1 fair cut bits drawn from rng (ceil((n-1)/64)
/// draws; unused high bits of the last word cleared).
void draw_cut_words(std::uint64_t n, Xoshiro256ss& rng, std::vector<std::uint64_t>& words);

/// Uniform composition of n: n-1 independent fair bits through the cut
/// bijection.
Composition sample_composition(std::uint64_t n, Xoshiro256ss& rng);

/// |D| and |M_m| for m = 1..max_m of one composition.
struct Census {
  std::uint64_t distinct = 0;
  std::vector<std::uint64_t> with_multiplicity;  // index m; entry 0 unused
};

/// Census from the multiplicity profile (reference path).
Census census_of(const MultiplicityProfile& profile, std::uint64_t max_m);

/// Computes censuses from packed cut words.
///
/// Sizes below small_size_limit() are scanned from the front only until
/// each has been seen more than max_m times; past that point they can no
/// longer land in any M_m with m <= max_m, and only gaps of at least
/// small_size_limit() are tracked, found as long zero runs with word-level
/// shift-and passes. If the front scan never saturates, the whole
/// composition is counted exactly.
class CensusScanner {
 public:
  CensusScanner(std::uint64_t n, std::uint64_t max_m);

  Census scan(std::span<const std::uint64_t> words);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t max_multiplicity() const noexcept { return max_m_; }
  std::uint64_t small_size_limit() const noexcept { return small_limit_; }

 private:
  void record(std::uint64_t size);
  void tail_scan(std::span<const std::uint64_t> words, std::uint64_t from);

  std::uint64_t n_;
  std::uint64_t max_m_;
  std::uint64_t small_limit_;
  std::vector<std::uint64_t> dense_;
  std::vector<std::uint64_t> large_;
  std::vector<std::uint64_t> cuts_;
  std::vector<std::uint64_t> runs_;
  std::uint64_t unsaturated_ = 0;
};

struct SamplingConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Runs config.trials samples split over config.workers threads (worker w
/// takes the w-th contiguous share and the stream for (seed, w)). The
/// callback is invoked from worker w only with worker == w, in trial order.
void for_each_census(std::uint64_t n, std::uint64_t max_m, const SamplingConfig& config,
                     const std::function<void(unsigned worker, const Census&)>& callback);

/// Per requested m: P(A_n^(m)) estimated by the mean of |M_m|/|D|, and
/// E|M_m| estimated by the mean of |M_m|, from the same samples.
struct MultiplicityEstimates {
  std::vector<std::uint64_t> m;
  std::vector<EventEstimate> event_probability;
  std::vector<EventEstimate> expected_count;
};

MultiplicityEstimates mc_multiplicity_estimates(std::uint64_t n, std::span<const std::uint64_t> ms,
                                                const SamplingConfig& config);

EventEstimate mc_event_probability(std::uint64_t n, std::uint64_t m, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers = 1);

/// Empirical law of |D| over config.trials samples.
struct DistinctSample {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;

  EventEstimate mean() const;
  /// Fraction of samples with a <= |D| <= b.
  EventEstimate window_probability(std::uint64_t a, std::uint64_t b) const;
};

DistinctSample mc_distinct(std::uint64_t n, const SamplingConfig& config);

}  // namespace compana
