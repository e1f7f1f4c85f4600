#pragma once

#include <map>
#include <vector>

#include "prw/combinatorics.hpp"
#include "prw/joint_pmf.hpp"

namespace prw {

// Probability weight of any single n-step walk ending at x with k_plus
// right-to-left and k_minus left-to-right reversals:
//   eps_r^((n+x)/2) eps_l^((n-x)/2) ((1-eps_r)/eps_l)^k_plus ((1-eps_l)/eps_r)^k_minus
// Throws std::domain_error unless |x| <= n, x = n (mod 2), k_plus, k_minus >= 0.
double log_gamma_weight(int n, int x, int k_plus, int k_minus, const ModelParams& params);
double gamma_weight(int n, int x, int k_plus, int k_minus, const ModelParams& params);

// q_n^sigma0(x,k): pmf of (x_n, k_n) given the pre-walk direction sigma0.
// Same domain errors as gamma_weight; k outside [0, n] gives 0.
double q_pmf(int n, Direction sigma0, int x, int k, const ModelParams& params);

// p_n(x,k) with the stationary initial direction; 0 off support.
double joint_pmf(int n, int x, int k, const ModelParams& params);

// Exact rational evaluation of p_n(x,k).
BigRational joint_pmf_exact(int n, int x, int k, const RationalParams& params);
BigRational q_pmf_exact(int n, Direction sigma0, int x, int k, const RationalParams& params);

// Closed-form tables. Linear precision requires n <= kExactCountLimit.
JointPmf closed_form_pmf(int n, const ModelParams& params, Precision precision = Precision::linear);
JointPmf conditional_pmf(int n, Direction sigma0, const ModelParams& params,
                         Precision precision = Precision::linear);

// Dense (x,k) grid without normalization guarantees; used for the
// final-direction split of the recursion.
class DenseGrid {
 public:
  explicit DenseGrid(int n);
  int steps() const { return n_; }
  double at(int x, int k) const;
  double& at(int x, int k);
  double total() const;

 private:
  int n_;
  std::vector<double> cells_;
};

struct DpTables {
  JointPmf joint;
  DenseGrid ending_plus;   // p_n^+(x,k): sigma_n = +1
  DenseGrid ending_minus;  // p_n^-(x,k): sigma_n = -1
};

// Forward recursion over steps seeded with p_0^+(0,0), p_0^-(0,0) given by
// the initial condition.
DpTables dp_pmf(int n, const ModelParams& params,
                InitialCondition initial = InitialCondition::stationary);

std::map<int, double> marginal_x(const JointPmf& pmf);
std::map<int, double> marginal_k(const JointPmf& pmf);

// P(k_n odd).
double delta_prob(const JointPmf& pmf);
// P(k_n odd | sigma0); pmf must be the q table for sigma0.
double delta_prob_conditional(const JointPmf& pmf, Direction sigma0);
double delta_prob_conditional(int n, Direction sigma0, const ModelParams& params);

struct TableMoments {
  double mean_x;
  double mean_k;
  double delta;  // P(k odd)
};

TableMoments table_moments(const JointPmf& pmf);

}  // namespace prw
