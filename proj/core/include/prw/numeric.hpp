#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace prw {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(sum_i exp(args[i])); -inf for an empty range or all -inf.
inline double log_sum_exp(std::span<const double> args) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (args.empty()) return kNegInf;
  const double max_arg = *std::max_element(args.begin(), args.end());
  if (max_arg == kNegInf) return kNegInf;
  CompensatedSum s;
  for (double a : args) s.add(std::exp(a - max_arg));
  return max_arg + std::log(s.value());
}

inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace prw
