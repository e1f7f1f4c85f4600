#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace prw {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Step direction sigma. The underlying value is the lattice increment.
enum class Direction : int { minus = -1, plus = 1 };

constexpr int sign(Direction d) { return static_cast<int>(d); }
constexpr Direction opposite(Direction d) {
  return d == Direction::plus ? Direction::minus : Direction::plus;
}
Direction direction_from_sign(int s);

// How sigma_0 is chosen before the first step.
enum class InitialCondition { stationary, forced_plus, forced_minus };

InitialCondition forced(Direction d);
std::string to_string(InitialCondition c);
InitialCondition initial_condition_from_string(const std::string& s);

// Persistence probabilities: eps_r is the probability of stepping right again
// after a right step, eps_l the probability of stepping left again after a
// left step. Both must lie strictly inside (0, 1).
class ModelParams {
 public:
  ModelParams(double eps_r, double eps_l);

  double eps_r() const { return eps_r_; }
  double eps_l() const { return eps_l_; }

  // eps_r <-> eps_l; maps the walk onto its reflection x -> -x.
  ModelParams mirrored() const { return ModelParams(eps_l_, eps_r_); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double eps_r_;
  double eps_l_;
};

// Exact parameters for rational-arithmetic evaluation (enumeration, exact
// pmf column of the CLI).
class RationalParams {
 public:
  RationalParams(BigRational eps_r, BigRational eps_l);

  // Accepts "p/q" or a terminating decimal such as "0.25".
  static RationalParams parse(const std::string& eps_r, const std::string& eps_l);

  const BigRational& eps_r() const { return eps_r_; }
  const BigRational& eps_l() const { return eps_l_; }
  ModelParams to_double() const;

 private:
  BigRational eps_r_;
  BigRational eps_l_;
};

BigRational parse_rational(const std::string& text);

// Row-stochastic; row 0 conditions on a previous right step.
using Matrix2 = std::array<std::array<double, 2>, 2>;

Matrix2 transition_matrix(const ModelParams& params);

struct StationaryDist {
  double p_plus;
  double p_minus;

  double operator[](Direction d) const { return d == Direction::plus ? p_plus : p_minus; }
};

StationaryDist stationary_dist(const ModelParams& params);

// Summary of one realized walk.
struct WalkOutcome {
  Direction sigma0 = Direction::plus;
  int x = 0;
  int k = 0;
  int n = 0;

  friend bool operator==(const WalkOutcome&, const WalkOutcome&) = default;
};

// |x| <= n, x = n (mod 2), 0 <= k <= n.
bool is_consistent(const WalkOutcome& outcome);

// Lattice-support predicate shared by the pmf evaluators.
constexpr bool on_lattice(int n, int x) {
  return n >= 0 && x >= -n && x <= n && ((n + x) % 2 == 0);
}

}  // namespace prw
