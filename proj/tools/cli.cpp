#include "prw/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prw/exact_dist.hpp"
#include "prw/expfam.hpp"
#include "prw/genfunc.hpp"
#include "prw/inference.hpp"
#include "prw/io.hpp"
#include "prw/oracle_sim.hpp"

namespace prw {

namespace {

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CliConfig {
  std::string eps_r = "0.5";
  std::string eps_l = "0.5";
  int n = 0;
  std::string output_path;
  std::string output_format;  // empty: the subcommand's first format
  std::uint64_t seed = 0;
  std::uint64_t num_walks = 10000;
  std::string precision_mode = "exact";
  std::string initial = "stationary";
  unsigned threads = 0;

  // estimate
  std::string input_path;
  std::size_t resamples = 0;

  // figure1
  std::vector<double> betas{-1.0, 1.0};
  double f_min = -3.0;
  double f_max = 3.0;
  double f_step = 0.05;

  // thermo
  std::optional<double> beta;
  std::optional<double> force;

  bool table = false;
};

bool is_fraction(const std::string& s) { return s.find('/') != std::string::npos; }

ModelParams model_params(const CliConfig& c) {
  if (is_fraction(c.eps_r) || is_fraction(c.eps_l))
    return RationalParams::parse(c.eps_r, c.eps_l).to_double();
  double r = 0.0, l = 0.0;
  try {
    r = parse_double(c.eps_r);
    l = parse_double(c.eps_l);
  } catch (const CsvFormatError& e) {
    throw std::invalid_argument(std::string("invalid parameter: ") + e.what());
  }
  return ModelParams(r, l);
}

Precision precision(const CliConfig& c) {
  return c.precision_mode == "log" ? Precision::log : Precision::linear;
}

void require_n(const CliConfig& c) {
  if (c.n < 1) throw UsageError("--n must be given and >= 1");
}

// Owns the file stream when output is redirected away from `fallback`.
class Output {
 public:
  Output(const CliConfig& c, const std::string& subcommand, const std::string& ext,
         std::ostream& fallback)
      : stream_(&fallback) {
    std::string path = c.output_path;
    if (path.empty()) {
      if (const char* dir = std::getenv("PRW_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
        path = (std::filesystem::path(dir) / (subcommand + "." + ext)).string();
    }
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoFailure("cannot open output file '" + path + "'");
    stream_ = file_.get();
    path_ = path;
  }

  std::ostream& get() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoFailure(path_.empty() ? "write to standard output failed"
                                                 : "write to '" + path_ + "' failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

void write_json(Output& o, const nlohmann::json& doc) { o.get() << doc.dump(2) << '\n'; }

int cmd_pmf(const CliConfig& c, std::ostream& out, std::ostream& err) {
  require_n(c);
  const ModelParams params = model_params(c);
  const InitialCondition init = initial_condition_from_string(c.initial);
  const Precision prec = precision(c);
  if (prec == Precision::linear && c.n > kExactCountLimit)
    throw UsageError("--precision-mode exact supports n <= " + std::to_string(kExactCountLimit) +
                     "; use --precision-mode log");

  const JointPmf table = init == InitialCondition::stationary
                             ? closed_form_pmf(c.n, params, prec)
                             : conditional_pmf(c.n, init == InitialCondition::forced_plus
                                                        ? Direction::plus
                                                        : Direction::minus,
                                               params, prec);

  std::map<std::pair<int, int>, BigRational> exact;
  const bool with_exact =
      prec == Precision::linear && is_fraction(c.eps_r) && is_fraction(c.eps_l);
  if (with_exact && c.output_format == "json")
    throw UsageError("the exact rational column is only written in csv format");
  if (with_exact) {
    const auto rp = RationalParams::parse(c.eps_r, c.eps_l);
    table.for_each([&](const PmfEntry& e) {
      exact[{e.x, e.k}] =
          init == InitialCondition::stationary
              ? joint_pmf_exact(c.n, e.x, e.k, rp)
              : q_pmf_exact(c.n, init == InitialCondition::forced_plus ? Direction::plus : Direction::minus,
                            e.x, e.k, rp);
    });
  }

  Output o(c, "pmf", c.output_format, out);
  if (c.output_format == "json") {
    write_pmf_json(o.get(), table);
  } else {
    write_pmf_csv(o.get(), table, with_exact ? &exact : nullptr);
  }
  o.finish();
  err << "normalization defect: " << format_double(table.normalization_defect()) << '\n';
  return kExitOk;
}

int cmd_moments(const CliConfig& c, std::ostream& out) {
  require_n(c);
  const ModelParams p = model_params(c);
  const auto t = to_thermo(p, c.n);
  nlohmann::json doc{{"n", c.n},
                     {"eps_r", p.eps_r()},
                     {"eps_l", p.eps_l()},
                     {"mean_x", mean_x(c.n, p)},
                     {"mean_k", mean_k(c.n, p)},
                     {"F", t.F},
                     {"beta", t.beta},
                     {"gamma_b", t.gamma_b},
                     {"G", t.G}};
  if (c.table) {
    const Precision prec = precision(c);
    if (prec == Precision::linear && c.n > kExactCountLimit)
      throw UsageError("--table with --precision-mode exact supports n <= " +
                       std::to_string(kExactCountLimit));
    const auto table = closed_form_pmf(c.n, p, prec);
    const auto m = table_moments(table);
    doc["table_mean_x"] = m.mean_x;
    doc["table_mean_k"] = m.mean_k;
    doc["delta"] = m.delta;
    doc["normalization_defect"] = table.normalization_defect();
  }

  Output o(c, "moments", c.output_format, out);
  if (c.output_format == "json") {
    write_json(o, doc);
  } else {
    std::string header, row;
    for (const auto& [key, value] : doc.items()) {
      header += (header.empty() ? "" : ",") + key;
      row += (row.empty() ? "" : ",") +
             (value.is_number_integer() ? std::to_string(value.get<int>())
                                        : format_double(value.get<double>()));
    }
    o.get() << header << '\n' << row << '\n';
  }
  o.finish();
  return kExitOk;
}

int cmd_simulate(const CliConfig& c, std::ostream& out) {
  require_n(c);
  if (c.output_format != "csv") throw UsageError("simulate writes csv only");
  SimConfig sim{c.n, c.num_walks, c.seed, model_params(c), initial_condition_from_string(c.initial)};
  validate(sim);
  const auto outcomes = simulate(sim, c.threads);
  Output o(c, "simulate", "csv", out);
  if (c.table)
    write_empirical_csv(o.get(), tabulate(outcomes), c.n);
  else
    write_outcomes_csv(o.get(), outcomes);
  o.finish();
  return kExitOk;
}

int cmd_estimate(const CliConfig& c, std::istream& in_default, std::ostream& out) {
  require_n(c);
  if (c.output_format != "json") throw UsageError("estimate writes json only");
  std::vector<WalkOutcome> outcomes;
  if (c.input_path.empty() || c.input_path == "-") {
    outcomes = read_outcomes_csv(in_default, c.n);
  } else {
    std::ifstream in(c.input_path);
    if (!in) throw IoFailure("cannot open input file '" + c.input_path + "'");
    outcomes = read_outcomes_csv(in, c.n);
  }
  const SampleStats stats = summarize_sample(outcomes);
  const ModelParams est = estimate_params(stats);
  nlohmann::json doc{{"n", stats.n},
                     {"num_walks", stats.num_walks},
                     {"mean_x_per_n", stats.mean_x_per_n},
                     {"mean_k_per_n", stats.mean_k_per_n},
                     {"eps_r", est.eps_r()},
                     {"eps_l", est.eps_l()}};
  if (c.resamples > 0) {
    const auto b = estimate_confidence(outcomes, c.resamples, c.seed, c.threads);
    doc["confidence"] = {{"level", 0.95},
                         {"resamples_used", b.resamples_used},
                         {"resamples_skipped", b.resamples_skipped},
                         {"eps_r", {b.eps_r.lower, b.eps_r.upper}},
                         {"eps_l", {b.eps_l.lower, b.eps_l.upper}}};
  }
  Output o(c, "estimate", "json", out);
  write_json(o, doc);
  o.finish();
  return kExitOk;
}

int cmd_figure1(const CliConfig& c, std::ostream& out) {
  if (c.f_step <= 0.0 || !(c.f_max >= c.f_min)) throw UsageError("need f-step > 0 and f-max >= f-min");
  if (c.output_format != "csv") throw UsageError("figure1 writes csv only");
  Output o(c, "figure1", "csv", out);
  auto& os = o.get();
  os << "beta,F,mean_x_per_n,admissible\n";
  const long first = std::lround(std::ceil(c.f_min / c.f_step - 1e-9));
  const long last = std::lround(std::floor(c.f_max / c.f_step + 1e-9));
  for (double beta : c.betas) {
    for (long i = first; i <= last; ++i) {
      const double F = static_cast<double>(i) * c.f_step;
      os << format_double(beta) << ',' << format_double(F) << ',';
      try {
        const ModelParams p = from_thermo(beta, F);
        // mean_x / n is independent of n.
        os << format_double(mean_x(1, p)) << ",1\n";
      } catch (const std::domain_error&) {
        os << ",0\n";
      }
    }
  }
  o.finish();
  return kExitOk;
}

int cmd_thermo(const CliConfig& c, std::ostream& out) {
  nlohmann::json doc;
  if (c.beta.has_value() != c.force.has_value())
    throw UsageError("--beta and --force must be given together");
  if (c.beta) {
    const auto inv = solve_from_thermo(*c.beta, *c.force);
    doc = {{"beta", *c.beta},
           {"F", *c.force},
           {"eps_r", inv.params.eps_r()},
           {"eps_l", inv.params.eps_l()},
           {"discriminant", inv.discriminant}};
  } else {
    require_n(c);
    const auto t = to_thermo(model_params(c), c.n);
    doc = {{"n", t.n}, {"F", t.F}, {"beta", t.beta}, {"gamma_b", t.gamma_b}, {"G", t.G}};
  }
  if (c.output_format != "json") throw UsageError("thermo writes json only");
  Output o(c, "thermo", "json", out);
  write_json(o, doc);
  o.finish();
  return kExitOk;
}

void add_params(CLI::App* sub, CliConfig& c) {
  sub->add_option("--eps-r", c.eps_r, "persistence after a right step (decimal or p/q)");
  sub->add_option("--eps-l", c.eps_l, "persistence after a left step (decimal or p/q)");
}

void add_output(CLI::App* sub, CliConfig& c, std::vector<std::string> formats) {
  sub->add_option("-o,--output", c.output_path, "output file (default: stdout or $PRW_OUTPUT_DIR)");
  sub->add_option("--format", c.output_format, "output format (default " + formats.front() + ")")
      ->check(CLI::IsMember(formats));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact distributions, simulation and estimation for the persistent random walk"};
  app.require_subcommand(1);
  CliConfig c;

  auto* pmf = app.add_subcommand("pmf", "joint pmf table p_n(x,k)");
  add_params(pmf, c);
  pmf->add_option("--n", c.n, "number of steps")->required();
  pmf->add_option("--precision-mode", c.precision_mode, "exact (n <= 300) or log")
      ->check(CLI::IsMember({"exact", "log"}));
  pmf->add_option("--initial", c.initial, "stationary, plus or minus")
      ->check(CLI::IsMember({"stationary", "plus", "minus"}));
  add_output(pmf, c, {"csv", "json"});

  auto* moments = app.add_subcommand("moments", "exact means and exponential-family coordinates");
  add_params(moments, c);
  moments->add_option("--n", c.n, "number of steps")->required();
  moments->add_flag("--table", c.table, "also sum the moments over the pmf table");
  moments->add_option("--precision-mode", c.precision_mode, "table evaluation: exact or log")
      ->check(CLI::IsMember({"exact", "log"}));
  add_output(moments, c, {"json", "csv"});

  auto* sim = app.add_subcommand("simulate", "Monte Carlo walks as sigma0,x,k rows");
  add_params(sim, c);
  sim->add_option("--n", c.n, "number of steps")->required();
  sim->add_option("--num-walks", c.num_walks, "number of walks")->check(CLI::PositiveNumber);
  sim->add_option("--seed", c.seed, "RNG seed");
  sim->add_option("--initial", c.initial, "stationary, plus or minus")
      ->check(CLI::IsMember({"stationary", "plus", "minus"}));
  sim->add_option("--threads", c.threads, "worker threads (0 = hardware)");
  sim->add_flag("--empirical", c.table, "write the empirical (x,k) table instead of walks");
  add_output(sim, c, {"csv"});

  auto* est = app.add_subcommand("estimate", "moment estimates from simulate output");
  est->add_option("input", c.input_path, "outcome csv ('-' or absent: stdin)");
  est->add_option("--n", c.n, "steps per walk (not stored in the csv)")->required();
  est->add_option("--resamples", c.resamples, "bootstrap resamples (0 = none)");
  est->add_option("--seed", c.seed, "bootstrap seed");
  est->add_option("--threads", c.threads, "worker threads (0 = hardware)");
  add_output(est, c, {"json"});

  auto* fig = app.add_subcommand("figure1", "<x>/n against F at fixed beta");
  fig->add_option("--beta", c.betas, "beta values")->delimiter(',');
  fig->add_option("--f-min", c.f_min, "smallest F");
  fig->add_option("--f-max", c.f_max, "largest F");
  fig->add_option("--f-step", c.f_step, "F grid step");
  add_output(fig, c, {"csv"});

  auto* thermo = app.add_subcommand("thermo", "convert between (eps_r, eps_l) and (beta, F)");
  add_params(thermo, c);
  thermo->add_option("--n", c.n, "number of steps (for G)");
  thermo->add_option("--beta", c.beta, "inverse temperature (inverse mode)");
  thermo->add_option("--force", c.force, "external force F (inverse mode)");
  add_output(thermo, c, {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (c.output_format.empty()) c.output_format = *moments || *est || *thermo ? "json" : "csv";

  try {
    if (*pmf) return cmd_pmf(c, out, err);
    if (*moments) return cmd_moments(c, out);
    if (*sim) return cmd_simulate(c, out);
    if (*est) return cmd_estimate(c, std::cin, out);
    if (*fig) return cmd_figure1(c, out);
    if (*thermo) return cmd_thermo(c, out);
  } catch (const InadmissibleStatistics& e) {
    err << "error: inadmissible statistics: " << e.what() << '\n';
    return kExitInadmissible;
  } catch (const NoAdmissibleSolution& e) {
    err << "error: " << e.what() << '\n';
    return kExitInadmissible;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CsvFormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace prw
