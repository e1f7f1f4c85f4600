#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "prw/core_model.hpp"

namespace prw {

// Aggregated sufficient statistics of a sample of equal-length walks.
struct SampleStats {
  int n = 0;
  std::uint64_t num_walks = 0;
  double mean_x_per_n = 0.0;  // a = <x>/n
  double mean_k_per_n = 0.0;  // b = <k>/n
};

class InadmissibleStatistics : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Throws std::invalid_argument on an empty sample or mixed walk lengths.
SampleStats summarize_sample(std::span<const WalkOutcome> outcomes);

// Moment inversion of the exact means:
//   eps_r = 1 - b / (1 + a),  eps_l = 1 - b / (1 - a).
// Requires 0 < b < 1 - |a|; otherwise throws InadmissibleStatistics naming
// the violated inequality.
ModelParams estimate_params(const SampleStats& stats);

struct Interval {
  double lower;
  double upper;

  double width() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

struct BootstrapResult {
  ModelParams point;  // estimate on the full sample
  Interval eps_r;
  Interval eps_l;
  std::size_t resamples_used;
  std::size_t resamples_skipped;  // inadmissible resamples
};

// Nonparametric bootstrap, 2.5% / 97.5% percentile intervals (linear
// interpolation between order statistics). Resample r draws from an engine
// seeded with (seed, r), so the result does not depend on `threads`.
BootstrapResult estimate_confidence(std::span<const WalkOutcome> outcomes, std::size_t resamples,
                                    std::uint64_t seed, unsigned threads = 0);

}  // namespace prw
