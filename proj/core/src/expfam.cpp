#include "prw/expfam.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "prw/combinatorics.hpp"
#include "prw/exact_dist.hpp"
#include "prw/numeric.hpp"

namespace prw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log binom(a, b) for real a, b via the gamma function; -inf where the
// continuous extension leaves the positive branch.
double log_binom_real(double a, double b) {
  if (b < 0.0 || a - b + 1.0 <= 0.0) return kNegInf;
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

bool on_support(int n, int x, int k) {
  if (!on_lattice(n, x) || k < 0 || k > n) return false;
  for (Direction d : {Direction::plus, Direction::minus}) {
    const auto s = split_reversals(d, k);
    if (theta(n + 1, d, x + sign(d), k + 1) && xi(d, s.k_plus, s.k_minus)) return true;
  }
  return false;
}

}  // namespace

ThermoParams to_thermo(const ModelParams& params, int n) {
  const double log_er = std::log(params.eps_r());
  const double log_el = std::log(params.eps_l());
  const double log_rev_r = std::log1p(-params.eps_r());
  const double log_rev_l = std::log1p(-params.eps_l());
  ThermoParams t{};
  t.n = n;
  t.F = 0.5 * (log_er - log_el);
  t.beta = -0.5 * ((log_er - log_rev_l) + (log_el - log_rev_r));
  t.gamma_b = 0.5 * ((log_rev_r - log_rev_l) + (log_er - log_el));
  t.G = 0.5 * n * (log_er + log_el);
  return t;
}

ThermoInversion solve_from_thermo(double beta, double F) {
  if (!std::isfinite(beta) || !std::isfinite(F))
    throw NoAdmissibleSolution("beta and F must be finite");
  const double c = std::exp(2.0 * F);
  const double t = std::exp(-2.0 * beta);
  // eps_r = c eps_l turns the beta equation into a quadratic in eps_l.
  const double a = -c * std::expm1(-2.0 * beta);
  const double b = t * (1.0 + c);
  const double constant = -t;
  const double disc = b * b - 4.0 * a * constant;
  if (!std::isfinite(c) || !std::isfinite(t) || !std::isfinite(disc) || disc < 0.0) {
    std::ostringstream os;
    os << "no real solution for beta=" << beta << ", F=" << F << " (discriminant " << disc << ")";
    throw NoAdmissibleSolution(os.str());
  }
  const double q = -0.5 * (b + std::sqrt(disc));
  double roots[2];
  int num_roots = 0;
  roots[num_roots++] = constant / q;
  if (a != 0.0) roots[num_roots++] = q / a;

  auto admissible = [&](double e) { return e > 0.0 && e < 1.0 && c * e > 0.0 && c * e < 1.0; };
  int count = 0;
  double chosen = 0.0;
  for (int i = 0; i < num_roots; ++i) {
    if (admissible(roots[i]) && !(count == 1 && roots[i] == chosen)) {
      ++count;
      chosen = roots[i];
    }
  }
  std::ostringstream os;
  os << "beta=" << beta << ", F=" << F << ", discriminant " << disc;
  if (count == 0) throw NoAdmissibleSolution("no root in (0,1)^2 for " + os.str());
  if (count > 1) throw AmbiguousSolution("two roots in (0,1)^2 for " + os.str());
  return {ModelParams(c * chosen, chosen), disc, count};
}

ModelParams from_thermo(double beta, double F) { return solve_from_thermo(beta, F).params; }

double log_approx_pmf(int n, int x, int k, const ModelParams& params) {
  if (!on_support(n, x, k)) return kNegInf;
  const auto t = to_thermo(params, n);
  return log_binom_real(0.5 * (n + x), 0.5 * k) + log_binom_real(0.5 * (n - x), 0.5 * k) + t.G +
         t.beta * k + t.F * x;
}

double approx_pmf(int n, int x, int k, const ModelParams& params) {
  return std::exp(log_approx_pmf(n, x, k, params));
}

double exact_threeparam_pmf(int n, Direction sigma0, int x, int k, const ModelParams& params) {
  if (!on_lattice(n, x) || k < 0 || k > n) return 0.0;
  const auto split = split_reversals(sigma0, k);
  const BigInt count = count_D(n, sigma0, x, split.k_plus, split.k_minus);
  if (count == 0) return 0.0;
  const auto t = to_thermo(params, n);
  const int delta = k % 2;
  return count.convert_to<double>() *
         std::exp(t.G + t.beta * k + t.F * x + sign(sigma0) * t.gamma_b * delta);
}

BoundaryAverages boundary_averages(int n, const ModelParams& params) {
  const Precision precision = n <= kExactCountLimit ? Precision::linear : Precision::log;
  const double delta_plus =
      delta_prob(conditional_pmf(n, Direction::plus, params, precision));
  const double delta_minus =
      delta_prob(conditional_pmf(n, Direction::minus, params, precision));

  const double er = params.eps_r();
  const double el = params.eps_l();
  const double d = (1.0 - er) + (1.0 - el);
  const double x_bulk = n * (er - el) / d;
  const double k_bulk = 2.0 * n * (1.0 - er) * (1.0 - el) / d;
  const double x_edge = 2.0 * (1.0 - er - el) / d;
  const double k_edge = (er - el) / d;

  BoundaryAverages b{};
  b.delta_plus = delta_plus;
  b.delta_minus = delta_minus;
  b.mean_x_plus = x_bulk - x_edge * delta_plus;
  b.mean_x_minus = x_bulk + x_edge * delta_minus;
  b.mean_k_plus = k_bulk - k_edge * delta_plus;
  b.mean_k_minus = k_bulk + k_edge * delta_minus;
  return b;
}

DeltaSplit delta_split_from_total(double delta, const ModelParams& params) {
  const double d = (1.0 - params.eps_r()) + (1.0 - params.eps_l());
  return {d / (2.0 * (1.0 - params.eps_l())) * delta, d / (2.0 * (1.0 - params.eps_r())) * delta};
}

ApproxDeviation approx_deviation(int n, const ModelParams& params) {
  const Precision precision = n <= kExactCountLimit ? Precision::linear : Precision::log;
  const JointPmf exact = closed_form_pmf(n, params, precision);

  ApproxDeviation dev{};
  dev.n = n;
  double best = -1.0;
  CompensatedSum mass;
  std::vector<std::pair<PmfEntry, double>> paired;
  exact.for_each([&](const PmfEntry& e) {
    const double a = approx_pmf(n, e.x, e.k, params);
    mass.add(a);
    paired.emplace_back(e, a);
    if (e.prob > best) {
      best = e.prob;
      dev.modal_x = e.x;
      dev.modal_k = e.k;
    }
  });
  dev.mass = mass.value();

  CompensatedSum tv;
  double modal_approx = 0.0;
  for (const auto& [e, a] : paired) {
    tv.add(std::abs(a / dev.mass - e.prob));
    if (e.x == dev.modal_x && e.k == dev.modal_k) modal_approx = a;
  }
  dev.normalized_tv = 0.5 * tv.value();
  dev.raw_modal_rel_error = std::abs(modal_approx / best - 1.0);
  dev.normalized_modal_rel_error = std::abs(modal_approx / dev.mass / best - 1.0);
  return dev;
}

}  // namespace prw
