#include "compana/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace compana {

namespace {

constexpr std::size_t kDenseSizes = 64;
// Below this n the scanner counts every part exactly.
constexpr std::uint64_t kSaturationMinN = 2048;

struct Welford {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }

  EventEstimate estimate(std::uint64_t seed) const {
    EventEstimate e;
    e.value = mean;
    e.trials = count;
    e.seed = seed;
    if (count > 1) {
      const double var = std::max(0.0, m2 / static_cast<double>(count - 1));
      e.std_error = std::sqrt(var / static_cast<double>(count));
    }
    return e;
  }
};

}  // namespace

void draw_cut_words(std::uint64_t n, Xoshiro256ss& rng, std::vector<std::uint64_t>& words) {
  if (n == 0) throw std::invalid_argument("composition size n must be >= 1");
  const std::uint64_t bits = n - 1;
  words.resize((bits + 63) / 64);
  for (auto& w : words) w = rng();
  if (const auto rem = bits % 64; rem != 0) words.back() &= (std::uint64_t{1} << rem) - 1;
}

Composition sample_composition(std::uint64_t n, Xoshiro256ss& rng) {
  std::vector<std::uint64_t> words;
  draw_cut_words(n, rng, words);
  return composition_from_cut_words(n, words);
}

Census census_of(const MultiplicityProfile& profile, std::uint64_t max_m) {
  Census c;
  c.distinct = profile.distinct_count();
  c.with_multiplicity.assign(max_m + 1, 0);
  for (const auto& entry : profile.counts()) {
    if (entry.second <= max_m) ++c.with_multiplicity[entry.second];
  }
  return c;
}

CensusScanner::CensusScanner(std::uint64_t n, std::uint64_t max_m)
    : n_(n), max_m_(max_m), small_limit_(1), dense_(kDenseSizes, 0) {
  if (n == 0) throw std::invalid_argument("composition size n must be >= 1");
  if (n >= kSaturationMinN) {
    // Sizes up to ~log2(n) - 9 occur about n / 2^(k+1) >= 256 times.
    small_limit_ = static_cast<std::uint64_t>(std::bit_width(n) - 1) - 8;
  }
}

void CensusScanner::record(std::uint64_t size) {
  if (size < kDenseSizes) {
    if (++dense_[size] == max_m_ + 1 && size < small_limit_) --unsaturated_;
  } else {
    large_.push_back(size);
  }
}

Census CensusScanner::scan(std::span<const std::uint64_t> words) {
  std::fill(dense_.begin(), dense_.end(), 0);
  large_.clear();
  const bool can_saturate = small_limit_ >= 2;
  unsaturated_ = can_saturate ? small_limit_ - 1 : 0;

  std::uint64_t prev = 0;  // last boundary position visited
  bool saturated = false;

  // Front scan: every part counted.
  for (std::size_t wi = 0; wi < words.size() && !saturated; ++wi) {
    std::uint64_t bits = words[wi];
    while (bits != 0) {
      const std::uint64_t pos = wi * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)) + 1;
      record(pos - prev);
      prev = pos;
      bits &= bits - 1;
      if (can_saturate && unsaturated_ == 0) {
        saturated = true;
        break;
      }
    }
  }

  if (!saturated) {
    record(n_ - prev);
  } else {
    tail_scan(words, prev);
  }

  Census c;
  c.with_multiplicity.assign(max_m_ + 1, 0);
  for (std::size_t s = 1; s < kDenseSizes; ++s) {
    const auto mult = dense_[s];
    if (mult == 0) continue;
    ++c.distinct;
    if (mult <= max_m_) ++c.with_multiplicity[mult];
  }
  std::sort(large_.begin(), large_.end());
  for (std::size_t i = 0; i < large_.size();) {
    std::size_t j = i;
    while (j < large_.size() && large_[j] == large_[i]) ++j;
    ++c.distinct;
    if (j - i <= max_m_) ++c.with_multiplicity[j - i];
    i = j;
  }
  return c;
}

// Records every part of size >= small_limit_ that starts at or after
// boundary position `from`. A part of size g is a run of g - 1 zero cut
// bits, so the parts wanted are the zero runs of length >= small_limit_ - 1.
// Runs are flagged for the whole array with shift-and passes, then only the
// flagged runs are measured.
void CensusScanner::tail_scan(std::span<const std::uint64_t> words, std::uint64_t from) {
  const std::uint64_t run = small_limit_ - 1;
  // Cut bits with the end sentinel (bit n-1) and every padding bit set.
  const std::size_t count = static_cast<std::size_t>(n_ / 64 + 1);
  cuts_.assign(count, ~std::uint64_t{0});
  std::copy(words.begin(), words.end(), cuts_.begin());
  {
    const std::uint64_t sentinel = n_ - 1;
    const std::size_t w = static_cast<std::size_t>(sentinel / 64);
    cuts_[w] |= ~std::uint64_t{0} << (sentinel % 64);
  }

  const std::size_t first_word = static_cast<std::size_t>(from / 64);
  runs_.resize(count);
  for (std::size_t i = first_word; i < count; ++i) runs_[i] = ~cuts_[i];
  runs_[first_word] &= ~std::uint64_t{0} << (from % 64);

  // After the passes, bit s of runs_ is set iff bits s .. s+run-1 are all
  // zero cut bits. Ascending order reads runs_[i+1] before it is updated.
  for (std::uint64_t covered = 1; covered < run;) {
    const std::uint64_t step = std::min(covered, run - covered);
    const int back = static_cast<int>(64 - step);
    for (std::size_t i = first_word; i + 1 < count; ++i) {
      runs_[i] &= (runs_[i] >> step) | (runs_[i + 1] << back);
    }
    runs_[count - 1] &= runs_[count - 1] >> step;
    covered += step;
  }

  for (std::size_t i = first_word; i < count; ++i) {
    while (runs_[i] != 0) {
      const std::uint64_t start = i * 64 + static_cast<std::uint64_t>(std::countr_zero(runs_[i]));
      const std::uint64_t probe = start + run;
      std::size_t j = static_cast<std::size_t>(probe / 64);
      std::uint64_t bits = cuts_[j] & (~std::uint64_t{0} << (probe % 64));
      while (bits == 0) bits = cuts_[++j];
      const std::uint64_t next_cut = j * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
      // Boundary positions are start and next_cut + 1.
      record(next_cut + 1 - start);
      i = std::max(i, j);
      runs_[i] &= ~std::uint64_t{0} << (next_cut % 64);
    }
  }
}

void for_each_census(std::uint64_t n, std::uint64_t max_m, const SamplingConfig& config,
                     const std::function<void(unsigned, const Census&)>& callback) {
  if (config.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (config.workers == 0) throw std::invalid_argument("workers must be >= 1");
  const unsigned workers = config.workers;
  auto run = [&](unsigned w) {
    const std::uint64_t share =
        config.trials / workers + (w < config.trials % workers ? 1 : 0);
    auto rng = Xoshiro256ss::for_stream(config.seed, w);
    CensusScanner scanner(n, max_m);
    std::vector<std::uint64_t> words;
    for (std::uint64_t t = 0; t < share; ++t) {
      draw_cut_words(n, rng, words);
      callback(w, scanner.scan(words));
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
}

MultiplicityEstimates mc_multiplicity_estimates(std::uint64_t n, std::span<const std::uint64_t> ms,
                                                const SamplingConfig& config) {
  if (ms.empty()) throw std::invalid_argument("at least one multiplicity m is required");
  for (const auto m : ms) {
    if (m == 0) throw std::invalid_argument("multiplicity m must be >= 1");
  }
  const std::uint64_t max_m = *std::max_element(ms.begin(), ms.end());
  struct Acc {
    std::vector<Welford> ratio;
    std::vector<Welford> count;
  };
  std::vector<Acc> acc(config.workers, Acc{std::vector<Welford>(ms.size()), std::vector<Welford>(ms.size())});
  for_each_census(n, max_m, config, [&](unsigned w, const Census& c) {
    auto& a = acc[w];
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto hits = static_cast<double>(c.with_multiplicity[ms[i]]);
      a.ratio[i].add(hits / static_cast<double>(c.distinct));
      a.count[i].add(hits);
    }
  });
  MultiplicityEstimates out;
  out.m.assign(ms.begin(), ms.end());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Welford ratio;
    Welford count;
    for (const auto& a : acc) {
      ratio.merge(a.ratio[i]);
      count.merge(a.count[i]);
    }
    out.event_probability.push_back(ratio.estimate(config.seed));
    out.expected_count.push_back(count.estimate(config.seed));
  }
  return out;
}

EventEstimate mc_event_probability(std::uint64_t n, std::uint64_t m, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers) {
  const std::uint64_t ms[] = {m};
  return mc_multiplicity_estimates(n, ms, SamplingConfig{trials, seed, workers}).event_probability[0];
}

EventEstimate DistinctSample::mean() const {
  double total = 0.0;
  for (const auto& [d, count] : histogram) total += static_cast<double>(d) * static_cast<double>(count);
  EventEstimate e;
  e.trials = trials;
  e.seed = seed;
  if (trials == 0) return e;
  const double t = static_cast<double>(trials);
  e.value = total / t;
  if (trials > 1) {
    double ss = 0.0;
    for (const auto& [d, count] : histogram) {
      const double dev = static_cast<double>(d) - e.value;
      ss += dev * dev * static_cast<double>(count);
    }
    e.std_error = std::sqrt(ss / (t - 1.0) / t);
  }
  return e;
}

EventEstimate DistinctSample::window_probability(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t inside = 0;
  for (const auto& [d, count] : histogram) {
    if (d >= a && d <= b) inside += count;
  }
  EventEstimate e;
  e.trials = trials;
  e.seed = seed;
  if (trials == 0) return e;
  const double p = static_cast<double>(inside) / static_cast<double>(trials);
  e.value = p;
  if (trials > 1) {
    // Sample variance of a 0/1 variable.
    const double var = p * (1.0 - p) * static_cast<double>(trials) / static_cast<double>(trials - 1);
    e.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return e;
}

DistinctSample mc_distinct(std::uint64_t n, const SamplingConfig& config) {
  std::vector<std::map<std::uint64_t, std::uint64_t>> per_worker(config.workers);
  for_each_census(n, 1, config, [&](unsigned w, const Census& c) { ++per_worker[w][c.distinct]; });
  DistinctSample s;
  s.n = n;
  s.trials = config.trials;
  s.seed = config.seed;
  for (const auto& h : per_worker) {
    for (const auto& [d, count] : h) s.histogram[d] += count;
  }
  return s;
}

}  // namespace compana
