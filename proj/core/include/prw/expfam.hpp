#pragma once

#include <stdexcept>

#include "prw/core_model.hpp"
#include "prw/joint_pmf.hpp"

namespace prw {

// Exponential-family coordinates of the model at walk length n:
//   F       = (1/2) ln(eps_r / eps_l)                               external force
//   beta    = -(1/2) ln[eps_r eps_l / ((1-eps_r)(1-eps_l))]         inverse temperature
//   gamma_b = (1/2) ln[(1-eps_r) eps_r / ((1-eps_l) eps_l)]         boundary (odd-k) term
//   G       = (n/2) ln(eps_r eps_l)
// gamma_b is unrelated to the walk weight of exact_dist (gamma_weight).
struct ThermoParams {
  int n;
  double F;
  double beta;
  double gamma_b;
  double G;
};

ThermoParams to_thermo(const ModelParams& params, int n);

class NoAdmissibleSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class AmbiguousSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ThermoInversion {
  ModelParams params;
  // Of c(1-t) e^2 + t(1+c) e - t = 0 in e = eps_l, c = e^{2F}, t = e^{-2 beta}.
  double discriminant;
  int admissible_roots;
};

// Solves eps_r / eps_l = e^{2F} and eps_r eps_l / ((1-eps_r)(1-eps_l)) = e^{-2 beta}.
// Throws NoAdmissibleSolution if no root lands in (0,1)^2 and
// AmbiguousSolution if two do.
ThermoInversion solve_from_thermo(double beta, double F);
ModelParams from_thermo(double beta, double F);

// binom((n+x)/2, k/2) binom((n-x)/2, k/2) exp(G + beta k + F x) on the
// support of p_n, 0 elsewhere. Odd k uses the log-gamma extension of the
// binomials.
double approx_pmf(int n, int x, int k, const ModelParams& params);
double log_approx_pmf(int n, int x, int k, const ModelParams& params);

// D_n^sigma0(x, (k+-Delta)/2, (k-+Delta)/2) exp(G + beta k + F x +- gamma_b Delta),
// Delta = k mod 2. Equal to q_pmf by construction of the coordinates.
double exact_threeparam_pmf(int n, Direction sigma0, int x, int k, const ModelParams& params);

struct BoundaryAverages {
  double mean_x_plus;
  double mean_x_minus;
  double mean_k_plus;
  double mean_k_minus;
  double delta_plus;  // P(k odd | sigma0 = +1)
  double delta_minus;
};

// Conditional means from the closed forms
//   <x>^+- = n (eps_r - eps_l)/D -+ 2 (1 - eps_r - eps_l)/D <Delta>^+-
//   <k>^+- = 2n (1-eps_r)(1-eps_l)/D -+ (eps_r - eps_l)/D <Delta>^+-
// with D = 2 - eps_r - eps_l and <Delta>^+- tabulated from q_n^+-.
BoundaryAverages boundary_averages(int n, const ModelParams& params);

// <Delta>^+- predicted from the unconditional odd-k probability:
// <Delta>^+ = D / (2(1-eps_l)) <Delta>, <Delta>^- = D / (2(1-eps_r)) <Delta>.
struct DeltaSplit {
  double plus;
  double minus;
};
DeltaSplit delta_split_from_total(double delta, const ModelParams& params);

// How far the two-parameter form is from the exact table at one n.
struct ApproxDeviation {
  int n;
  double mass;                     // sum of approx_pmf over the support
  double raw_modal_rel_error;      // |approx/exact - 1| at the exact mode
  double normalized_modal_rel_error;
  double normalized_tv;            // TV(approx / mass, exact)
  int modal_x;
  int modal_k;
};

ApproxDeviation approx_deviation(int n, const ModelParams& params);

}  // namespace prw
