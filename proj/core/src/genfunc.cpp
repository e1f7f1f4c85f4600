#include "prw/genfunc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace prw {

namespace {

constexpr double kDegenerateNu = 1e-12;

void check_steps(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0, got " + std::to_string(n));
}

// (lambda_+^n - lambda_-^n) / nu, and its limit at nu -> 0.
double eigen_difference_quotient(const GenFuncMatrix& g, int n) {
  if (g.nu < kDegenerateNu * (std::abs(g.lambda_plus) + std::abs(g.lambda_minus))) {
    const double lambda = 0.5 * g.trace();
    return n == 0 ? 0.0 : n * std::pow(lambda, n - 1);
  }
  return (std::pow(g.lambda_plus, n) - std::pow(g.lambda_minus, n)) / g.nu;
}

}  // namespace

GenFuncMatrix genfunc_matrix(double w, double z, const ModelParams& params) {
  if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(z))
    throw std::domain_error("generating function needs finite w > 0 and finite z");
  const double er = params.eps_r();
  const double el = params.eps_l();

  GenFuncMatrix g{};
  g.w = w;
  g.z = z;
  g.m = {{{er * w, (1.0 - el) * w * z}, {(1.0 - er) * z / w, el / w}}};
  const double spread = er * w - el / w;
  g.nu = std::sqrt(spread * spread + 4.0 * (1.0 - er) * (1.0 - el) * z * z);
  const double tr = er * w + el / w;
  g.lambda_plus = 0.5 * (tr + g.nu);
  g.lambda_minus = 0.5 * (tr - g.nu);
  return g;
}

Matrix2 matrix_power(const GenFuncMatrix& g, int n) {
  check_steps(n);
  const double even = 0.5 * (std::pow(g.lambda_plus, n) + std::pow(g.lambda_minus, n));
  const double odd = 0.5 * eigen_difference_quotient(g, n);
  const double spread = g.m[0][0] - g.m[1][1];
  return {{{even + odd * spread, odd * 2.0 * g.m[0][1]},
           {odd * 2.0 * g.m[1][0], even - odd * spread}}};
}

double matrix_power_f(int n, double w, double z, const ModelParams& params) {
  check_steps(n);
  const auto g = genfunc_matrix(w, z, params);
  const auto st = stationary_dist(params);
  const double er = params.eps_r();
  const double el = params.eps_l();

  const double even = 0.5 * (std::pow(g.lambda_plus, n) + std::pow(g.lambda_minus, n));
  const double odd = 0.5 * eigen_difference_quotient(g, n);
  const double bracket = (er * w - el / w) * (st.p_plus - st.p_minus) +
                         2.0 * (1.0 - er) * st.p_plus * z / w +
                         2.0 * (1.0 - el) * st.p_minus * w * z;
  return even + odd * bracket;
}

std::array<double, 2> iterate_genfunc(int n, double w, double z, const ModelParams& params,
                                      std::array<double, 2> initial) {
  check_steps(n);
  const auto m = genfunc_matrix(w, z, params).m;
  for (int i = 0; i < n; ++i) {
    initial = {m[0][0] * initial[0] + m[0][1] * initial[1],
               m[1][0] * initial[0] + m[1][1] * initial[1]};
  }
  return initial;
}

double iterated_f(int n, double w, double z, const ModelParams& params) {
  const auto st = stationary_dist(params);
  const auto f = iterate_genfunc(n, w, z, params, {st.p_plus, st.p_minus});
  return f[0] + f[1];
}

double mean_k(int n, const ModelParams& params) {
  check_steps(n);
  const double a = 1.0 - params.eps_r();
  const double b = 1.0 - params.eps_l();
  return 2.0 * n * (a * b) / (a + b);
}

double mean_x(int n, const ModelParams& params) {
  check_steps(n);
  const double a = 1.0 - params.eps_r();
  const double b = 1.0 - params.eps_l();
  return n * (params.eps_r() - params.eps_l()) / (a + b);
}

}  // namespace prw
