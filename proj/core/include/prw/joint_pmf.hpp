#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "prw/core_model.hpp"

namespace prw {

enum class Precision {
  linear,  // dense table, probabilities computed directly
  log,     // log-domain evaluation, columns trimmed below kLogModeFloor
};

// Entries with log-probability below this are not stored in log mode.
inline constexpr double kLogModeFloor = -230.0;

struct PmfEntry {
  int x;
  int k;
  double prob;
  double log_prob;
};

// Table of p_n(x,k) (or of q_n^sigma0(x,k) for a forced initial direction)
// over x in [-n, n] with x = n (mod 2) and k in [0, n]. Every cell holds both
// the linear and the log-domain value.
class JointPmf {
 public:
  JointPmf(int n, ModelParams params, InitialCondition initial, Precision precision);

  int steps() const { return n_; }
  const ModelParams& params() const { return params_; }
  InitialCondition initial() const { return initial_; }
  Precision precision() const { return precision_; }

  // Zero / -inf off support.
  double prob(int x, int k) const;
  double log_prob(int x, int k) const;

  // Dense assignment; the column must not have been trimmed.
  void set(int x, int k, double prob, double log_prob);

  // Replaces column x with entries k_begin, k_begin+1, ... given in the log
  // domain; linear values are exp(log_prob).
  void set_log_column(int x, int k_begin, std::vector<double> log_probs);

  // Visits stored entries with nonzero probability (or finite log value), in
  // increasing x then k.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      const auto& c = columns_[j];
      const int x = 2 * static_cast<int>(j) - n_;
      for (std::size_t i = 0; i < c.log_prob.size(); ++i) {
        if (c.prob[i] > 0.0 || c.log_prob[i] > kNegInf)
          fn(PmfEntry{x, c.k_begin + static_cast<int>(i), c.prob[i], c.log_prob[i]});
      }
    }
  }

  std::vector<PmfEntry> entries() const;
  std::size_t support_size() const;

  double total_mass() const;
  double log_total_mass() const;
  double normalization_defect() const;

  int x_min() const;
  int x_max() const;
  int k_max() const;

 private:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  struct Column {
    int k_begin = 0;
    std::vector<double> prob;
    std::vector<double> log_prob;
  };

  const Column& column(int x) const;
  Column& column(int x);

  int n_;
  ModelParams params_;
  InitialCondition initial_;
  Precision precision_;
  std::vector<Column> columns_;  // index (x + n) / 2
};

// Elementwise max |a - b| over the union of supports (linear values).
double max_abs_difference(const JointPmf& a, const JointPmf& b);

}  // namespace prw
