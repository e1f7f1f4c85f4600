#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "prw/exact_dist.hpp"
#include "prw/io.hpp"
#include "prw/oracle_sim.hpp"

#ifndef PRW_GOLDEN_DIR
#error "PRW_GOLDEN_DIR must be defined"
#endif

using namespace prw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  EXPECT_EQ(format_double(0.0625), "0.0625");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(2.0 / 3), "0.66666666666666663");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  for (double v : {1.0 / 3, -2.7725887222397811, 6.02214076e23, 5e-324})
    EXPECT_EQ(parse_double(format_double(v)), v);
  EXPECT_THROW(parse_double("1.5x"), CsvFormatError);
  EXPECT_THROW(parse_double(""), CsvFormatError);
}

TEST(PmfCsv, GoldenFile) {
  std::ostringstream out;
  write_pmf_csv(out, closed_form_pmf(4, ModelParams(0.5, 0.5)));
  EXPECT_EQ(out.str(), slurp(std::string(PRW_GOLDEN_DIR) + "/pmf_n4_half.csv"));
}

TEST(PmfCsv, RoundTrip) {
  const auto table = closed_form_pmf(9, ModelParams(0.37, 0.81));
  std::stringstream buf;
  write_pmf_csv(buf, table);
  const auto rows = read_pmf_csv(buf);
  ASSERT_EQ(rows.size(), table.support_size());
  const auto entries = table.entries();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, 9);
    EXPECT_EQ(rows[i].x, entries[i].x);
    EXPECT_EQ(rows[i].k, entries[i].k);
    EXPECT_EQ(rows[i].prob, entries[i].prob);
    EXPECT_EQ(rows[i].log_prob, entries[i].log_prob);
  }
}

TEST(PmfCsv, ExactColumn) {
  const auto exact = enumerate_exact_rational(4, RationalParams::parse("1/2", "1/2"));
  std::ostringstream out;
  write_pmf_csv(out, closed_form_pmf(4, ModelParams(0.5, 0.5)), &exact);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,x,k,prob,log_prob,prob_exact");
  EXPECT_NE(text.find("4,2,3,0.0625,-2.7725887222397811,1/16\n"), std::string::npos);
}

TEST(PmfCsv, RejectsMalformedInput) {
  std::istringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_pmf_csv(bad_header), CsvFormatError);
  std::istringstream bad_row("n,x,k,prob,log_prob\n4,2,3,zz,1\n");
  try {
    read_pmf_csv(bad_row);
    FAIL();
  } catch (const CsvFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(PmfJson, RoundTrip) {
  const auto table = closed_form_pmf(6, ModelParams(0.2, 0.9), Precision::log);
  std::stringstream buf;
  write_pmf_json(buf, table);
  const auto rows = read_pmf_json(buf);
  ASSERT_EQ(rows.size(), table.support_size());
  for (const auto& r : rows) EXPECT_EQ(r.log_prob, table.log_prob(r.x, r.k));
}

TEST(OutcomeCsv, RoundTripAndValidation) {
  const auto outcomes = simulate({15, 300, 4, ModelParams(0.6, 0.2), InitialCondition::stationary});
  std::stringstream buf;
  write_outcomes_csv(buf, outcomes);
  EXPECT_EQ(read_outcomes_csv(buf, 15), outcomes);

  std::istringstream parity("sigma0,x,k\n1,2,1\n");
  EXPECT_THROW(read_outcomes_csv(parity, 15), CsvFormatError);
  std::istringstream sigma("sigma0,x,k\n0,1,1\n");
  EXPECT_THROW(read_outcomes_csv(sigma, 15), CsvFormatError);
}

TEST(EmpiricalCsv, Schema) {
  EmpiricalDist d;
  d.add({Direction::plus, 2, 1, 4});
  d.add({Direction::plus, 2, 1, 4});
  d.add({Direction::minus, 0, 2, 4});
  d.add({Direction::minus, 0, 2, 4});
  std::ostringstream out;
  write_empirical_csv(out, d, 4);
  EXPECT_EQ(out.str(),
            "n,x,k,prob,log_prob,count\n"
            "4,0,2,0.5,-0.69314718055994529,2\n"
            "4,2,1,0.5,-0.69314718055994529,2\n");
}
