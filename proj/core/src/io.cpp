#include "prw/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace prw {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw CsvFormatError("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

void expect_header(std::istream& in, std::string_view header, std::string& line) {
  if (!std::getline(in, line)) throw CsvFormatError("missing header '" + std::string(header) + "'");
  const auto got = trim_cr(line);
  if (got.substr(0, header.size()) != header)
    throw CsvFormatError("unexpected header '" + std::string(got) + "', want '" +
                         std::string(header) + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw CsvFormatError("not a number: '" + std::string(text) + "'");
  return v;
}

void write_pmf_csv(std::ostream& out, const JointPmf& pmf,
                   const std::map<std::pair<int, int>, BigRational>* exact) {
  out << kPmfCsvHeader << (exact ? ",prob_exact" : "") << '\n';
  const int n = pmf.steps();
  pmf.for_each([&](const PmfEntry& e) {
    out << n << ',' << e.x << ',' << e.k << ',' << format_double(e.prob) << ','
        << format_double(e.log_prob);
    if (exact) {
      const auto it = exact->find({e.x, e.k});
      out << ',' << (it == exact->end() ? BigRational(0) : it->second);
    }
    out << '\n';
  });
}

std::vector<PmfRow> read_pmf_csv(std::istream& in) {
  std::string line;
  expect_header(in, kPmfCsvHeader, line);
  std::vector<PmfRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim_cr(line);
    if (body.empty()) continue;
    const auto f = split_fields(body);
    if (f.size() < 5) throw CsvFormatError("line " + std::to_string(line_no) + ": too few columns");
    try {
      rows.push_back({parse_int(f[0]), parse_int(f[1]), parse_int(f[2]), parse_double(f[3]),
                      parse_double(f[4])});
    } catch (const CsvFormatError& e) {
      throw CsvFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

void write_pmf_json(std::ostream& out, const JointPmf& pmf) {
  nlohmann::json doc;
  doc["n"] = pmf.steps();
  doc["eps_r"] = pmf.params().eps_r();
  doc["eps_l"] = pmf.params().eps_l();
  doc["initial"] = to_string(pmf.initial());
  doc["precision"] = pmf.precision() == Precision::linear ? "linear" : "log";
  auto& entries = doc["entries"];
  entries = nlohmann::json::array();
  pmf.for_each([&](const PmfEntry& e) {
    entries.push_back({{"x", e.x}, {"k", e.k}, {"prob", e.prob}, {"log_prob", e.log_prob}});
  });
  out << doc.dump() << '\n';
}

std::vector<PmfRow> read_pmf_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CsvFormatError(std::string("malformed pmf JSON: ") + e.what());
  }
  std::vector<PmfRow> rows;
  const int n = doc.at("n").get<int>();
  for (const auto& e : doc.at("entries")) {
    rows.push_back({n, e.at("x").get<int>(), e.at("k").get<int>(), e.at("prob").get<double>(),
                    e.at("log_prob").get<double>()});
  }
  return rows;
}

void write_outcomes_csv(std::ostream& out, std::span<const WalkOutcome> outcomes) {
  out << kOutcomeCsvHeader << '\n';
  for (const auto& o : outcomes) out << sign(o.sigma0) << ',' << o.x << ',' << o.k << '\n';
}

std::vector<WalkOutcome> read_outcomes_csv(std::istream& in, int n) {
  std::string line;
  expect_header(in, kOutcomeCsvHeader, line);
  std::vector<WalkOutcome> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim_cr(line);
    if (body.empty()) continue;
    const auto f = split_fields(body);
    if (f.size() != 3)
      throw CsvFormatError("line " + std::to_string(line_no) + ": expected 3 columns");
    WalkOutcome o;
    o.n = n;
    try {
      const int s = parse_int(f[0]);
      if (s != 1 && s != -1) throw CsvFormatError("sigma0 must be 1 or -1");
      o.sigma0 = direction_from_sign(s);
      o.x = parse_int(f[1]);
      o.k = parse_int(f[2]);
    } catch (const CsvFormatError& e) {
      throw CsvFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!is_consistent(o))
      throw CsvFormatError("line " + std::to_string(line_no) + ": outcome (x=" +
                           std::to_string(o.x) + ", k=" + std::to_string(o.k) +
                           ") impossible for n=" + std::to_string(n));
    out.push_back(o);
  }
  return out;
}

void write_empirical_csv(std::ostream& out, const EmpiricalDist& dist, int n) {
  out << kEmpiricalCsvHeader << '\n';
  for (const auto& [key, count] : dist.counts()) {
    const double p = dist.frequency(key.first, key.second);
    out << n << ',' << key.first << ',' << key.second << ',' << format_double(p) << ','
        << format_double(std::log(p)) << ',' << count << '\n';
  }
}

}  // namespace prw
