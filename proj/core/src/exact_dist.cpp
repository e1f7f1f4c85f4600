#include "prw/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "prw/numeric.hpp"

namespace prw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_walk_domain(int n, int x, int k_plus, int k_minus) {
  if (!on_lattice(n, x) || k_plus < 0 || k_minus < 0) {
    throw std::domain_error("walk signature outside the lattice: n=" + std::to_string(n) +
                            " x=" + std::to_string(x) + " k+=" + std::to_string(k_plus) +
                            " k-=" + std::to_string(k_minus));
  }
}

void check_steps(int n) {
  if (n < 1) throw std::invalid_argument("walk length must be >= 1, got " + std::to_string(n));
}

// Exponents after cancelling the reversal ratios against the step factors:
// eps_r^(right - k_minus) eps_l^(left - k_plus) (1-eps_r)^k_plus (1-eps_l)^k_minus.
struct WeightExponents {
  int persist_right;
  int persist_left;
  int reverse_to_left;
  int reverse_to_right;
};

WeightExponents exponents(int n, int x, int k_plus, int k_minus) {
  return {(n + x) / 2 - k_minus, (n - x) / 2 - k_plus, k_plus, k_minus};
}

struct LogFactors {
  long double persist_right;
  long double persist_left;
  long double reverse_to_left;
  long double reverse_to_right;

  explicit LogFactors(const ModelParams& p)
      : persist_right(std::log(static_cast<long double>(p.eps_r()))),
        persist_left(std::log(static_cast<long double>(p.eps_l()))),
        reverse_to_left(std::log1p(-static_cast<long double>(p.eps_r()))),
        reverse_to_right(std::log1p(-static_cast<long double>(p.eps_l()))) {}

  long double weight(int n, int x, int k_plus, int k_minus) const {
    const auto e = exponents(n, x, k_plus, k_minus);
    return e.persist_right * persist_right + e.persist_left * persist_left +
           e.reverse_to_left * reverse_to_left + e.reverse_to_right * reverse_to_right;
  }
};

double linear_weight(int n, int x, int k_plus, int k_minus, const ModelParams& p) {
  const auto e = exponents(n, x, k_plus, k_minus);
  return std::pow(p.eps_r(), e.persist_right) * std::pow(p.eps_l(), e.persist_left) *
         std::pow(1.0 - p.eps_r(), e.reverse_to_left) *
         std::pow(1.0 - p.eps_l(), e.reverse_to_right);
}

BigRational rational_pow(const BigRational& base, int e) {
  BigRational r = 1;
  BigRational b = e >= 0 ? base : BigRational(1) / base;
  for (unsigned u = static_cast<unsigned>(e >= 0 ? e : -e); u > 0; u >>= 1) {
    if (u & 1U) r *= b;
    b *= b;
  }
  return r;
}

struct Branch {
  Direction sigma0;
  double weight;
};

std::vector<Branch> branches(InitialCondition initial, const ModelParams& params) {
  const auto st = stationary_dist(params);
  switch (initial) {
    case InitialCondition::forced_plus: return {{Direction::plus, 1.0}};
    case InitialCondition::forced_minus: return {{Direction::minus, 1.0}};
    case InitialCondition::stationary: break;
  }
  return {{Direction::plus, st.p_plus}, {Direction::minus, st.p_minus}};
}

JointPmf build_linear(int n, const ModelParams& params, InitialCondition initial) {
  if (n > kExactCountLimit) {
    throw std::invalid_argument("linear tables are limited to n <= " +
                                std::to_string(kExactCountLimit) + "; use log precision");
  }
  JointPmf pmf(n, params, initial, Precision::linear);
  const WalkCounter counter(n);
  const auto parts = branches(initial, params);
  for (int x = -n; x <= n; x += 2) {
    for (int k = 0; k <= n; ++k) {
      double p = 0.0;
      for (const auto& b : parts) {
        const auto split = split_reversals(b.sigma0, k);
        const double c = counter.count(b.sigma0, x, split.k_plus, split.k_minus);
        if (c > 0.0) p += b.weight * c * linear_weight(n, x, split.k_plus, split.k_minus, params);
      }
      if (p > 0.0) pmf.set(x, k, p, std::log(p));
    }
  }
  return pmf;
}

JointPmf build_log(int n, const ModelParams& params, InitialCondition initial) {
  JointPmf pmf(n, params, initial, Precision::log);
  const WalkCounter counter(n);
  const LogFactors factors(params);
  const auto parts = branches(initial, params);
  std::vector<long double> log_branch_weight;
  for (const auto& b : parts) log_branch_weight.push_back(std::log(static_cast<long double>(b.weight)));

  std::vector<double> column(static_cast<std::size_t>(n) + 1);
  for (int x = -n; x <= n; x += 2) {
    // Beyond 2*min(right, left) + 1 reversals no walk exists.
    const int k_cap = std::min(n, 2 * std::min((n + x) / 2, (n - x) / 2) + 1);
    int first = -1;
    int last = -1;
    for (int k = 0; k <= k_cap; ++k) {
      long double best = -std::numeric_limits<long double>::infinity();
      long double terms[2];
      std::size_t used = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto split = split_reversals(parts[i].sigma0, k);
        const long double lc = counter.log_count(parts[i].sigma0, x, split.k_plus, split.k_minus);
        if (lc == -std::numeric_limits<long double>::infinity()) continue;
        terms[used] = log_branch_weight[i] + lc + factors.weight(n, x, split.k_plus, split.k_minus);
        best = std::max(best, terms[used]);
        ++used;
      }
      long double lp = best;
      if (used == 2) {
        const long double lo = std::min(terms[0], terms[1]);
        lp = best + std::log1p(std::exp(lo - best));
      }
      const double v = used == 0 ? kNegInf : static_cast<double>(lp);
      column[static_cast<std::size_t>(k)] = v;
      if (v >= kLogModeFloor) {
        if (first < 0) first = k;
        last = k;
      }
    }
    if (first >= 0) {
      pmf.set_log_column(x, first,
                         std::vector<double>(column.begin() + first, column.begin() + last + 1));
    }
  }
  return pmf;
}

}  // namespace

double log_gamma_weight(int n, int x, int k_plus, int k_minus, const ModelParams& params) {
  check_walk_domain(n, x, k_plus, k_minus);
  return static_cast<double>(LogFactors(params).weight(n, x, k_plus, k_minus));
}

double gamma_weight(int n, int x, int k_plus, int k_minus, const ModelParams& params) {
  check_walk_domain(n, x, k_plus, k_minus);
  return linear_weight(n, x, k_plus, k_minus, params);
}

double q_pmf(int n, Direction sigma0, int x, int k, const ModelParams& params) {
  check_steps(n);
  check_walk_domain(n, x, 0, 0);
  if (k < 0 || k > n) return 0.0;
  const auto split = split_reversals(sigma0, k);
  const BigInt count = count_D(n, sigma0, x, split.k_plus, split.k_minus);
  if (count == 0) return 0.0;
  return count.convert_to<double>() * gamma_weight(n, x, split.k_plus, split.k_minus, params);
}

double joint_pmf(int n, int x, int k, const ModelParams& params) {
  check_steps(n);
  if (!on_lattice(n, x) || k < 0 || k > n) return 0.0;
  const auto st = stationary_dist(params);
  return st.p_plus * q_pmf(n, Direction::plus, x, k, params) +
         st.p_minus * q_pmf(n, Direction::minus, x, k, params);
}

BigRational q_pmf_exact(int n, Direction sigma0, int x, int k, const RationalParams& params) {
  check_steps(n);
  check_walk_domain(n, x, 0, 0);
  if (k < 0 || k > n) return 0;
  const auto split = split_reversals(sigma0, k);
  const BigInt count = count_D(n, sigma0, x, split.k_plus, split.k_minus);
  if (count == 0) return 0;
  const auto e = exponents(n, x, split.k_plus, split.k_minus);
  const BigRational one = 1;
  return BigRational(count) * rational_pow(params.eps_r(), e.persist_right) *
         rational_pow(params.eps_l(), e.persist_left) *
         rational_pow(one - params.eps_r(), e.reverse_to_left) *
         rational_pow(one - params.eps_l(), e.reverse_to_right);
}

BigRational joint_pmf_exact(int n, int x, int k, const RationalParams& params) {
  check_steps(n);
  if (!on_lattice(n, x) || k < 0 || k > n) return 0;
  const BigRational one = 1;
  const BigRational denom = 2 - params.eps_r() - params.eps_l();
  const BigRational p_plus = (one - params.eps_l()) / denom;
  const BigRational p_minus = (one - params.eps_r()) / denom;
  return p_plus * q_pmf_exact(n, Direction::plus, x, k, params) +
         p_minus * q_pmf_exact(n, Direction::minus, x, k, params);
}

JointPmf closed_form_pmf(int n, const ModelParams& params, Precision precision) {
  check_steps(n);
  return precision == Precision::linear ? build_linear(n, params, InitialCondition::stationary)
                                        : build_log(n, params, InitialCondition::stationary);
}

JointPmf conditional_pmf(int n, Direction sigma0, const ModelParams& params, Precision precision) {
  check_steps(n);
  return precision == Precision::linear ? build_linear(n, params, forced(sigma0))
                                        : build_log(n, params, forced(sigma0));
}

DenseGrid::DenseGrid(int n)
    : n_(n), cells_(static_cast<std::size_t>(2 * n + 1) * static_cast<std::size_t>(n + 1), 0.0) {}

double DenseGrid::at(int x, int k) const {
  if (x < -n_ || x > n_ || k < 0 || k > n_) return 0.0;
  return cells_[static_cast<std::size_t>(x + n_) * static_cast<std::size_t>(n_ + 1) +
                static_cast<std::size_t>(k)];
}

double& DenseGrid::at(int x, int k) {
  if (x < -n_ || x > n_ || k < 0 || k > n_) throw std::out_of_range("DenseGrid index");
  return cells_[static_cast<std::size_t>(x + n_) * static_cast<std::size_t>(n_ + 1) +
                static_cast<std::size_t>(k)];
}

double DenseGrid::total() const {
  CompensatedSum s;
  for (double v : cells_) s.add(v);
  return s.value();
}

DpTables dp_pmf(int n, const ModelParams& params, InitialCondition initial) {
  check_steps(n);
  const double er = params.eps_r();
  const double el = params.eps_l();

  DenseGrid plus(n);
  DenseGrid minus(n);
  double seed_plus = 0.0;
  double seed_minus = 0.0;
  for (const auto& b : branches(initial, params))
    (b.sigma0 == Direction::plus ? seed_plus : seed_minus) = b.weight;
  plus.at(0, 0) = seed_plus;
  minus.at(0, 0) = seed_minus;

  for (int step = 1; step <= n; ++step) {
    DenseGrid next_plus(n);
    DenseGrid next_minus(n);
    const DenseGrid& prev_plus = plus;
    const DenseGrid& prev_minus = minus;
    for (int x = -step; x <= step; x += 2) {
      for (int k = 0; k <= step; ++k) {
        // Arriving with a right step: persist after a right step, or reverse
        // after a left step.
        double to_right = er * prev_plus.at(x - 1, k);
        if (k > 0) to_right += (1.0 - el) * prev_minus.at(x - 1, k - 1);
        double to_left = el * prev_minus.at(x + 1, k);
        if (k > 0) to_left += (1.0 - er) * prev_plus.at(x + 1, k - 1);
        next_plus.at(x, k) = to_right;
        next_minus.at(x, k) = to_left;
      }
    }
    plus = std::move(next_plus);
    minus = std::move(next_minus);
  }

  JointPmf joint(n, params, initial, Precision::linear);
  for (int x = -n; x <= n; x += 2) {
    for (int k = 0; k <= n; ++k) {
      const double p = std::as_const(plus).at(x, k) + std::as_const(minus).at(x, k);
      if (p > 0.0) joint.set(x, k, p, std::log(p));
    }
  }
  return {std::move(joint), std::move(plus), std::move(minus)};
}

std::map<int, double> marginal_x(const JointPmf& pmf) {
  std::map<int, CompensatedSum> acc;
  pmf.for_each([&](const PmfEntry& e) { acc[e.x].add(e.prob); });
  std::map<int, double> out;
  for (const auto& [x, s] : acc) out[x] = s.value();
  return out;
}

std::map<int, double> marginal_k(const JointPmf& pmf) {
  std::map<int, CompensatedSum> acc;
  pmf.for_each([&](const PmfEntry& e) { acc[e.k].add(e.prob); });
  std::map<int, double> out;
  for (const auto& [k, s] : acc) out[k] = s.value();
  return out;
}

double delta_prob(const JointPmf& pmf) {
  CompensatedSum s;
  pmf.for_each([&](const PmfEntry& e) {
    if (e.k % 2 == 1) s.add(e.prob);
  });
  return s.value();
}

double delta_prob_conditional(const JointPmf& pmf, Direction sigma0) {
  if (pmf.initial() != forced(sigma0))
    throw std::invalid_argument("table is not conditioned on sigma0 = " +
                                std::to_string(sign(sigma0)));
  return delta_prob(pmf);
}

double delta_prob_conditional(int n, Direction sigma0, const ModelParams& params) {
  return delta_prob(conditional_pmf(n, sigma0, params));
}

TableMoments table_moments(const JointPmf& pmf) {
  CompensatedSum sx;
  CompensatedSum sk;
  CompensatedSum odd;
  pmf.for_each([&](const PmfEntry& e) {
    sx.add(e.x * e.prob);
    sk.add(e.k * e.prob);
    if (e.k % 2 == 1) odd.add(e.prob);
  });
  return {sx.value(), sk.value(), odd.value()};
}

}  // namespace prw
