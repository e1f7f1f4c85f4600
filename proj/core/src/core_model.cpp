#include "prw/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prw {

Direction direction_from_sign(int s) {
  if (s == 1) return Direction::plus;
  if (s == -1) return Direction::minus;
  throw std::invalid_argument("direction must be +1 or -1, got " + std::to_string(s));
}

InitialCondition forced(Direction d) {
  return d == Direction::plus ? InitialCondition::forced_plus : InitialCondition::forced_minus;
}

std::string to_string(InitialCondition c) {
  switch (c) {
    case InitialCondition::stationary: return "stationary";
    case InitialCondition::forced_plus: return "plus";
    case InitialCondition::forced_minus: return "minus";
  }
  return "stationary";
}

InitialCondition initial_condition_from_string(const std::string& s) {
  if (s == "stationary") return InitialCondition::stationary;
  if (s == "plus" || s == "forced_plus" || s == "+1") return InitialCondition::forced_plus;
  if (s == "minus" || s == "forced_minus" || s == "-1") return InitialCondition::forced_minus;
  throw std::invalid_argument("unknown sigma0 mode '" + s + "'");
}

namespace {

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << name << " must lie in the open interval (0,1), got " << v;
    throw std::invalid_argument(os.str());
  }
}

void check_open_unit(const BigRational& v, const char* name) {
  if (!(v > 0 && v < 1)) {
    std::ostringstream os;
    os << name << " must lie in the open interval (0,1), got " << v;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ModelParams::ModelParams(double eps_r, double eps_l) : eps_r_(eps_r), eps_l_(eps_l) {
  check_open_unit(eps_r_, "eps_r");
  check_open_unit(eps_l_, "eps_l");
}

RationalParams::RationalParams(BigRational eps_r, BigRational eps_l)
    : eps_r_(std::move(eps_r)), eps_l_(std::move(eps_l)) {
  check_open_unit(eps_r_, "eps_r");
  check_open_unit(eps_l_, "eps_l");
}

BigRational parse_rational(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) fail();

  auto parse_int = [&](const std::string& s) -> BigInt {
    if (s.empty()) fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail();
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') fail();
    // Leading zeros would select octal in the BigInt string constructor.
    const std::size_t first = std::min(s.find_first_not_of('0', i), s.size() - 1);
    BigInt v(s.substr(first));
    return s[0] == '-' ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return BigRational(num, den);
  }

  std::string digits = text;
  BigInt scale = 1;
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    digits = text.substr(0, dot) + frac;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    if (digits == "-" || digits == "+" || digits.empty()) fail();
  }
  return BigRational(parse_int(digits), scale);
}

RationalParams RationalParams::parse(const std::string& eps_r, const std::string& eps_l) {
  return RationalParams(parse_rational(eps_r), parse_rational(eps_l));
}

ModelParams RationalParams::to_double() const {
  return ModelParams(eps_r_.convert_to<double>(), eps_l_.convert_to<double>());
}

Matrix2 transition_matrix(const ModelParams& params) {
  const double er = params.eps_r();
  const double el = params.eps_l();
  return {{{er, 1.0 - er}, {1.0 - el, el}}};
}

StationaryDist stationary_dist(const ModelParams& params) {
  const double a = 1.0 - params.eps_r();
  const double b = 1.0 - params.eps_l();
  const double denom = a + b;
  return {b / denom, a / denom};
}

bool is_consistent(const WalkOutcome& o) {
  return o.n >= 0 && on_lattice(o.n, o.x) && o.k >= 0 && o.k <= o.n;
}

}  // namespace prw
