#pragma once

#include <vector>

#include "prw/core_model.hpp"

namespace prw {

// Walk counts are exact for n up to this bound; beyond it the pmf builders
// switch to log-gamma evaluation of the same counts.
inline constexpr int kExactCountLimit = 300;

// n!! with 0!! = (-1)!! = 1. Throws std::domain_error for n < -1.
BigInt double_factorial(int n);

// C(n,m) = n!! / (m!! (n-m)!!). For even arguments C(2a,2b) = binom(a,b).
// Zero when m < 0, m > n or n < 0, except on the diagonal m = n >= -2 where
// it is 1 (the empty composition; needed by monotone walks). Throws
// std::domain_error if the quotient is not an integer.
BigInt double_fact_C(int n, int m);

// 1 iff an n-step walk whose first step is sigma ends at x after exactly s
// segments (maximal runs of equal steps).
bool theta(int n, Direction sigma, int x, int s);

// 1 iff k_plus == k_minus or k_plus - k_minus == sigma0.
bool xi(Direction sigma0, int k_plus, int k_minus);

// Probability that an unbiased n-step walk (every step a fair coin) has
// exactly s segments: binom(n-1, s-1) / 2^(n-1).
BigRational segment_count_prob(int n, int s);

// Number of n-step walks starting with step direction sigma1, ending at x,
// with s segments.
BigInt count_by_segments(int n, Direction sigma1, int x, int s);

// Number of n-step walks, preceded by direction sigma0, ending at x with
// k_plus right-to-left and k_minus left-to-right reversals.
BigInt count_D(int n, Direction sigma0, int x, int k_plus, int k_minus);

struct ReversalSplit {
  int k_plus;
  int k_minus;
};

// Right-to-left / left-to-right reversal counts implied by sigma0 and k.
ReversalSplit split_reversals(Direction sigma0, int k);

// Evaluates count_D for many signatures of one walk length without
// recomputing binomials. Exact binomials are cached for n <= kExactCountLimit;
// log_count() uses log-gamma values above that.
class WalkCounter {
 public:
  explicit WalkCounter(int n);

  int steps() const { return n_; }
  bool exact() const { return n_ <= kExactCountLimit; }

  // count_D converted to double; requires exact().
  double count(Direction sigma0, int x, int k_plus, int k_minus) const;

  // log(count_D), -infinity when the count is zero.
  long double log_count(Direction sigma0, int x, int k_plus, int k_minus) const;

 private:
  // Composition count binom(total-1, parts-1), with binom(-1,-1) = 1.
  double compositions(int total, int parts) const;
  long double log_compositions(int total, int parts) const;
  bool admissible(Direction sigma0, int x, int k_plus, int k_minus) const;

  int n_;
  std::vector<std::vector<double>> binom_;  // exact rows, rounded once
  std::vector<long double> log_factorial_;
};

}  // namespace prw
