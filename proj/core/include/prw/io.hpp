#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prw/core_model.hpp"
#include "prw/joint_pmf.hpp"
#include "prw/oracle_sim.hpp"

namespace prw {

class CsvFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits (printf "%.17g"); round-trips every finite double.
// Infinities are written as "inf" / "-inf".
std::string format_double(double v);
double parse_double(std::string_view text);

// Schema: n,x,k,prob,log_prob  (one row per support cell, x then k ascending)
// With `exact`, a prob_exact column holds the rational value "p/q".
inline constexpr std::string_view kPmfCsvHeader = "n,x,k,prob,log_prob";

void write_pmf_csv(std::ostream& out, const JointPmf& pmf,
                   const std::map<std::pair<int, int>, BigRational>* exact = nullptr);

struct PmfRow {
  int n;
  int x;
  int k;
  double prob;
  double log_prob;
};

std::vector<PmfRow> read_pmf_csv(std::istream& in);

// {"n":..,"eps_r":..,"eps_l":..,"initial":..,"precision":..,"entries":[{"x","k","prob","log_prob"}]}
void write_pmf_json(std::ostream& out, const JointPmf& pmf);
std::vector<PmfRow> read_pmf_json(std::istream& in);

// Schema: sigma0,x,k
inline constexpr std::string_view kOutcomeCsvHeader = "sigma0,x,k";

void write_outcomes_csv(std::ostream& out, std::span<const WalkOutcome> outcomes);
// Walk length is not part of the schema and is supplied by the caller.
std::vector<WalkOutcome> read_outcomes_csv(std::istream& in, int n);

// Schema: n,x,k,prob,log_prob,count  (prob is the empirical frequency)
inline constexpr std::string_view kEmpiricalCsvHeader = "n,x,k,prob,log_prob,count";

void write_empirical_csv(std::ostream& out, const EmpiricalDist& dist, int n);

}  // namespace prw
