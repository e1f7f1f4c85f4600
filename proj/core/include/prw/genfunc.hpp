#pragma once

#include <array>

#include "prw/core_model.hpp"

namespace prw {

// M(w,z) maps (f_+^(n-1), f_-^(n-1)) to (f_+^(n), f_-^(n)) where
// f_sigma^(n)(w,z) = sum_{x,k} w^x z^k p_n^sigma(x,k):
//   [ eps_r w          (1-eps_l) w z ]
//   [ (1-eps_r) z / w  eps_l / w     ]
// Only real w > 0 and real z are supported, so nu is real.
struct GenFuncMatrix {
  double w;
  double z;
  Matrix2 m;
  double nu;
  double lambda_plus;
  double lambda_minus;

  double trace() const { return m[0][0] + m[1][1]; }
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// Throws std::domain_error for w <= 0 or non-finite arguments.
GenFuncMatrix genfunc_matrix(double w, double z, const ModelParams& params);

// M^n from the eigenvalues. Near nu = 0 the (lambda_+^n - lambda_-^n)/nu
// ratio is replaced by its limit n lambda^(n-1).
Matrix2 matrix_power(const GenFuncMatrix& g, int n);

// f^(n)(w,z) from the closed form with the stationary initial vector.
double matrix_power_f(int n, double w, double z, const ModelParams& params);

// M^n applied to `initial` by n explicit multiplications.
std::array<double, 2> iterate_genfunc(int n, double w, double z, const ModelParams& params,
                                      std::array<double, 2> initial);

// f^(n)(w,z) by explicit iteration from the stationary vector.
double iterated_f(int n, double w, double z, const ModelParams& params);

// <k_n> = 2n (1-eps_r)(1-eps_l) / (2 - eps_r - eps_l)
double mean_k(int n, const ModelParams& params);
// <x_n> = n (eps_r - eps_l) / (2 - eps_r - eps_l)
double mean_x(int n, const ModelParams& params);

}  // namespace prw
