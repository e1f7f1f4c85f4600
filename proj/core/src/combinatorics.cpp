#include "prw/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace prw {

namespace {

BigInt binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (int i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

}  // namespace

BigInt double_factorial(int n) {
  if (n < -1) throw std::domain_error("double factorial undefined for " + std::to_string(n));
  BigInt r = 1;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigInt double_fact_C(int n, int m) {
  if (m == n && n >= -2) return 1;
  if (n < 0 || m < 0 || m > n) return 0;
  if (n % 2 == 0 && m % 2 == 0) return binomial(n / 2, m / 2);

  BigInt num = double_factorial(n);
  BigInt den = double_factorial(m) * double_factorial(n - m);
  if (num % den != 0) {
    throw std::domain_error("C(" + std::to_string(n) + "," + std::to_string(m) +
                            ") is not an integer");
  }
  return num / den;
}

bool theta(int n, Direction sigma, int x, int s) {
  if (s < 1 || s > n || !on_lattice(n, x)) return false;
  const int forward_steps = (n + sign(sigma) * x) / 2;
  const int backward_steps = (n - sign(sigma) * x) / 2;
  const int forward_runs = (s + 1) / 2;
  const int backward_runs = s / 2;
  if (forward_steps < forward_runs || backward_steps < backward_runs) return false;
  return (backward_steps == 0) == (backward_runs == 0);
}

bool xi(Direction sigma0, int k_plus, int k_minus) {
  return k_plus == k_minus || k_plus - k_minus == sign(sigma0);
}

BigRational segment_count_prob(int n, int s) {
  if (n < 1) throw std::invalid_argument("segment_count_prob requires n >= 1");
  if (s < 1 || s > n) return 0;
  BigInt pow2 = BigInt(1) << (n - 1);
  return BigRational(binomial(n - 1, s - 1), pow2);
}

BigInt count_by_segments(int n, Direction sigma1, int x, int s) {
  if (!theta(n, sigma1, x, s)) return 0;
  if (s == 1) return 1;
  const int sx = sign(sigma1) * x;
  if (s % 2 == 0) return double_fact_C(n + sx - 2, s - 2) * double_fact_C(n - sx - 2, s - 2);
  return double_fact_C(n + sx - 2, s - 1) * double_fact_C(n - sx - 2, s - 3);
}

BigInt count_D(int n, Direction sigma0, int x, int k_plus, int k_minus) {
  if (n < 1) throw std::invalid_argument("count_D requires n >= 1");
  if (k_plus < 0 || k_minus < 0) return 0;
  const int s0 = sign(sigma0);
  if (!theta(n + 1, sigma0, x + s0, k_plus + k_minus + 1)) return 0;
  if (!xi(sigma0, k_plus, k_minus)) return 0;
  return double_fact_C(n - 1 + x + s0, 2 * k_minus + s0 - 1) *
         double_fact_C(n - 1 - x - s0, 2 * k_plus - s0 - 1);
}

ReversalSplit split_reversals(Direction sigma0, int k) {
  if (k < 0) throw std::invalid_argument("reversal count must be nonnegative");
  if (k % 2 == 0) return {k / 2, k / 2};
  return {(k + sign(sigma0)) / 2, (k - sign(sigma0)) / 2};
}

WalkCounter::WalkCounter(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("WalkCounter requires n >= 1");
  // Compositions of at most n+1 steps use binomial rows up to n.
  if (exact()) {
    binom_.resize(static_cast<std::size_t>(n_) + 1);
    std::vector<BigInt> row{1};
    for (int a = 0; a <= n_; ++a) {
      auto& out = binom_[static_cast<std::size_t>(a)];
      out.reserve(row.size());
      for (const auto& v : row) out.push_back(v.convert_to<double>());
      std::vector<BigInt> next(row.size() + 1);
      next.front() = 1;
      next.back() = 1;
      for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] + row[i];
      row = std::move(next);
    }
  }
  log_factorial_.resize(static_cast<std::size_t>(n_) + 2);
  for (std::size_t i = 0; i < log_factorial_.size(); ++i)
    log_factorial_[i] = std::lgamma(static_cast<long double>(i) + 1.0L);
}

bool WalkCounter::admissible(Direction sigma0, int x, int k_plus, int k_minus) const {
  return on_lattice(n_, x) && k_plus >= 0 && k_minus >= 0 && k_plus + k_minus <= n_ &&
         xi(sigma0, k_plus, k_minus);
}

double WalkCounter::compositions(int total, int parts) const {
  if (parts == 0) return total == 0 ? 1.0 : 0.0;
  if (parts < 0 || total < parts) return 0.0;
  return binom_[static_cast<std::size_t>(total - 1)][static_cast<std::size_t>(parts - 1)];
}

long double WalkCounter::log_compositions(int total, int parts) const {
  if (parts == 0) return total == 0 ? 0.0L : -std::numeric_limits<long double>::infinity();
  if (parts < 0 || total < parts) return -std::numeric_limits<long double>::infinity();
  const auto a = static_cast<std::size_t>(total - 1);
  const auto b = static_cast<std::size_t>(parts - 1);
  return log_factorial_[a] - log_factorial_[b] - log_factorial_[a - b];
}

// The walk is extended by the sigma0 step in front of it. Runs in direction
// sigma0 are opened by reversals back into sigma0 (plus the leading run);
// runs in the opposite direction are opened by reversals away from sigma0.
double WalkCounter::count(Direction sigma0, int x, int k_plus, int k_minus) const {
  if (!exact()) throw std::logic_error("WalkCounter::count requires n <= kExactCountLimit");
  if (!admissible(sigma0, x, k_plus, k_minus)) return 0.0;
  const int s = sign(sigma0);
  const int forward_steps = (n_ + s * x) / 2 + 1;
  const int backward_steps = (n_ - s * x) / 2;
  const int away = sigma0 == Direction::plus ? k_plus : k_minus;
  const int back = sigma0 == Direction::plus ? k_minus : k_plus;
  return compositions(forward_steps, back + 1) * compositions(backward_steps, away);
}

long double WalkCounter::log_count(Direction sigma0, int x, int k_plus, int k_minus) const {
  if (!admissible(sigma0, x, k_plus, k_minus)) return -std::numeric_limits<long double>::infinity();
  const int s = sign(sigma0);
  const int forward_steps = (n_ + s * x) / 2 + 1;
  const int backward_steps = (n_ - s * x) / 2;
  const int away = sigma0 == Direction::plus ? k_plus : k_minus;
  const int back = sigma0 == Direction::plus ? k_minus : k_plus;
  if (exact()) {
    const double c = compositions(forward_steps, back + 1) * compositions(backward_steps, away);
    return c > 0.0 ? std::log(static_cast<long double>(c))
                   : -std::numeric_limits<long double>::infinity();
  }
  return log_compositions(forward_steps, back + 1) + log_compositions(backward_steps, away);
}

}  // namespace prw
