#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "prw/core_model.hpp"
#include "prw/joint_pmf.hpp"

namespace prw {

inline constexpr int kMaxEnumerationSteps = 24;

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Sums the probability of every one of the 2^n step sequences, multiplied
// by the weight of sigma0 under `initial`. Throws EnumerationTooLarge for
// n > kMaxEnumerationSteps.
JointPmf enumerate_exact(int n, const ModelParams& params,
                         InitialCondition initial = InitialCondition::stationary);

// Same enumeration in exact rational arithmetic; keys are (x, k).
std::map<std::pair<int, int>, BigRational> enumerate_exact_rational(
    int n, const RationalParams& params, InitialCondition initial = InitialCondition::stationary);

// Number of step sequences preceded by sigma0 for each (x, k_plus, k_minus).
std::map<std::tuple<int, int, int>, std::uint64_t> enumerate_reversal_counts(int n, Direction sigma0);

// Number of step sequences whose first step is sigma1 for each (x, s), with
// s the number of segments (the initial reversal is not counted).
std::map<std::pair<int, int>, std::uint64_t> enumerate_segment_counts(int n, Direction sigma1);

struct SimConfig {
  int n = 1;
  std::uint64_t num_walks = 1;
  std::uint64_t seed = 0;
  ModelParams params{0.5, 0.5};
  InitialCondition sigma0_mode = InitialCondition::stationary;
};

void validate(const SimConfig& config);

// sigma0 plus the n steps sigma_1..sigma_n.
struct WalkTrace {
  Direction sigma0;
  std::vector<std::int8_t> steps;
};

// x_n = sum sigma_j, k_n = (1/2) sum (1 - sigma_{j-1} sigma_j), j = 1..n.
WalkOutcome summarize(const WalkTrace& trace);

// Walks are generated in fixed-size chunks; chunk c draws from an engine
// seeded with (seed, c), so the stream depends only on the config and not on
// the number of worker threads.
std::vector<WalkOutcome> simulate(const SimConfig& config, unsigned threads = 0);

// Full sign sequences for the same stream as simulate().
std::vector<WalkTrace> simulate_traces(const SimConfig& config);

class EmpiricalDist {
 public:
  void add(const WalkOutcome& outcome);
  void merge(const EmpiricalDist& other);

  const std::map<std::pair<int, int>, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  double frequency(int x, int k) const;

 private:
  std::map<std::pair<int, int>, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

EmpiricalDist tabulate(std::span<const WalkOutcome> outcomes);

// (1/2) sum |empirical - exact| over the union of supports.
double total_variation(const EmpiricalDist& empirical, const JointPmf& exact);

}  // namespace prw
