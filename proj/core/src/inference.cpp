#include "prw/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace prw {

namespace {

// Type-7 sample quantile of sorted values.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::optional<ModelParams> try_estimate(const SampleStats& s) {
  try {
    return estimate_params(s);
  } catch (const InadmissibleStatistics&) {
    return std::nullopt;
  }
}

}  // namespace

SampleStats summarize_sample(std::span<const WalkOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("empty sample");
  const int n = outcomes.front().n;
  if (n < 1) throw std::invalid_argument("walk length must be >= 1");
  long double sum_x = 0.0L;
  long double sum_k = 0.0L;
  for (const auto& o : outcomes) {
    if (o.n != n) throw std::invalid_argument("sample mixes walk lengths");
    sum_x += o.x;
    sum_k += o.k;
  }
  const auto count = static_cast<long double>(outcomes.size());
  return {n, outcomes.size(), static_cast<double>(sum_x / count / n),
          static_cast<double>(sum_k / count / n)};
}

ModelParams estimate_params(const SampleStats& stats) {
  const double a = stats.mean_x_per_n;
  const double b = stats.mean_k_per_n;
  auto reject = [&](const char* inequality) {
    std::ostringstream os;
    os << "inadmissible statistics (a=<x>/n=" << a << ", b=<k>/n=" << b
       << "): requires " << inequality;
    throw InadmissibleStatistics(os.str());
  };
  if (!std::isfinite(a) || !std::isfinite(b)) reject("finite a and b");
  if (!(b > 0.0)) reject("b > 0");
  if (!(b < 1.0 - std::abs(a))) reject("b < 1 - |a|");
  return ModelParams(1.0 - b / (1.0 + a), 1.0 - b / (1.0 - a));
}

BootstrapResult estimate_confidence(std::span<const WalkOutcome> outcomes, std::size_t resamples,
                                    std::uint64_t seed, unsigned threads) {
  if (outcomes.size() < 2) throw std::invalid_argument("bootstrap needs at least 2 outcomes");
  if (resamples < 1) throw std::invalid_argument("bootstrap needs at least 1 resample");
  const SampleStats full = summarize_sample(outcomes);
  const ModelParams point = estimate_params(full);

  const std::size_t m = outcomes.size();
  std::vector<std::optional<ModelParams>> estimates(resamples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < resamples; r = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
      std::mt19937_64 eng(seq);
      long double sum_x = 0.0L;
      long double sum_k = 0.0L;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(eng() % m)];
        sum_x += o.x;
        sum_k += o.k;
      }
      const auto count = static_cast<long double>(m);
      const SampleStats s{full.n, m, static_cast<double>(sum_x / count / full.n),
                          static_cast<double>(sum_k / count / full.n)};
      estimates[r] = try_estimate(s);
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, resamples));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> er;
  std::vector<double> el;
  for (const auto& e : estimates) {
    if (!e) continue;
    er.push_back(e->eps_r());
    el.push_back(e->eps_l());
  }
  if (er.empty()) throw InadmissibleStatistics("every bootstrap resample was inadmissible");
  std::sort(er.begin(), er.end());
  std::sort(el.begin(), el.end());
  return {point,
          {quantile(er, 0.025), quantile(er, 0.975)},
          {quantile(el, 0.025), quantile(el, 0.975)},
          er.size(),
          resamples - er.size()};
}

}  // namespace prw
