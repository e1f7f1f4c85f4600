#include "prw/joint_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prw/numeric.hpp"

namespace prw {

JointPmf::JointPmf(int n, ModelParams params, InitialCondition initial, Precision precision)
    : n_(n), params_(params), initial_(initial), precision_(precision) {
  if (n < 0) throw std::invalid_argument("JointPmf requires n >= 0");
  columns_.resize(static_cast<std::size_t>(n) + 1);
  if (precision == Precision::linear) {
    for (auto& c : columns_) {
      c.prob.assign(static_cast<std::size_t>(n) + 1, 0.0);
      c.log_prob.assign(static_cast<std::size_t>(n) + 1, kNegInf);
    }
  }
}

const JointPmf::Column& JointPmf::column(int x) const {
  return columns_[static_cast<std::size_t>((x + n_) / 2)];
}

JointPmf::Column& JointPmf::column(int x) {
  return columns_[static_cast<std::size_t>((x + n_) / 2)];
}

double JointPmf::prob(int x, int k) const {
  if (!on_lattice(n_, x) || k < 0) return 0.0;
  const auto& c = column(x);
  const int i = k - c.k_begin;
  if (i < 0 || i >= static_cast<int>(c.prob.size())) return 0.0;
  return c.prob[static_cast<std::size_t>(i)];
}

double JointPmf::log_prob(int x, int k) const {
  if (!on_lattice(n_, x) || k < 0) return kNegInf;
  const auto& c = column(x);
  const int i = k - c.k_begin;
  if (i < 0 || i >= static_cast<int>(c.log_prob.size())) return kNegInf;
  return c.log_prob[static_cast<std::size_t>(i)];
}

void JointPmf::set(int x, int k, double prob, double log_prob) {
  if (!on_lattice(n_, x) || k < 0 || k > n_)
    throw std::out_of_range("JointPmf::set outside the lattice (x=" + std::to_string(x) +
                            ", k=" + std::to_string(k) + ")");
  auto& c = column(x);
  const int i = k - c.k_begin;
  if (i < 0 || i >= static_cast<int>(c.prob.size()))
    throw std::out_of_range("JointPmf::set on a trimmed column");
  c.prob[static_cast<std::size_t>(i)] = prob;
  c.log_prob[static_cast<std::size_t>(i)] = log_prob;
}

void JointPmf::set_log_column(int x, int k_begin, std::vector<double> log_probs) {
  if (!on_lattice(n_, x)) throw std::out_of_range("JointPmf::set_log_column outside the lattice");
  if (k_begin < 0 || k_begin + static_cast<int>(log_probs.size()) > n_ + 1)
    throw std::out_of_range("JointPmf::set_log_column k range outside [0, n]");
  auto& c = column(x);
  c.k_begin = k_begin;
  c.prob.resize(log_probs.size());
  std::transform(log_probs.begin(), log_probs.end(), c.prob.begin(),
                 [](double l) { return std::exp(l); });
  c.log_prob = std::move(log_probs);
}

std::vector<PmfEntry> JointPmf::entries() const {
  std::vector<PmfEntry> out;
  for_each([&](const PmfEntry& e) { out.push_back(e); });
  return out;
}

std::size_t JointPmf::support_size() const {
  std::size_t count = 0;
  for_each([&](const PmfEntry&) { ++count; });
  return count;
}

double JointPmf::total_mass() const {
  CompensatedSum s;
  for_each([&](const PmfEntry& e) { s.add(e.prob); });
  return s.value();
}

double JointPmf::log_total_mass() const {
  std::vector<double> logs;
  for_each([&](const PmfEntry& e) { logs.push_back(e.log_prob); });
  return log_sum_exp(logs);
}

double JointPmf::normalization_defect() const {
  if (precision_ == Precision::log) return std::expm1(log_total_mass());
  return total_mass() - 1.0;
}

int JointPmf::x_min() const {
  int best = n_ + 1;
  for_each([&](const PmfEntry& e) { best = std::min(best, e.x); });
  return best;
}

int JointPmf::x_max() const {
  int best = -n_ - 1;
  for_each([&](const PmfEntry& e) { best = std::max(best, e.x); });
  return best;
}

int JointPmf::k_max() const {
  int best = -1;
  for_each([&](const PmfEntry& e) { best = std::max(best, e.k); });
  return best;
}

double max_abs_difference(const JointPmf& a, const JointPmf& b) {
  if (a.steps() != b.steps()) throw std::invalid_argument("tables have different n");
  double worst = 0.0;
  const int n = a.steps();
  for (int x = -n; x <= n; x += 2)
    for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(a.prob(x, k) - b.prob(x, k)));
  return worst;
}

}  // namespace prw
