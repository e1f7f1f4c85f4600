#include "prw/oracle_sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "prw/numeric.hpp"

namespace prw {

namespace {

void check_enumerable(int n) {
  if (n < 1) throw std::invalid_argument("enumeration requires n >= 1");
  if (n > kMaxEnumerationSteps) {
    throw EnumerationTooLarge("enumeration of 2^" + std::to_string(n) +
                              " paths exceeds the limit n <= " +
                              std::to_string(kMaxEnumerationSteps));
  }
}

struct Weighted {
  Direction sigma0;
  double weight;
};

std::vector<Weighted> initial_weights(InitialCondition initial, const ModelParams& params) {
  switch (initial) {
    case InitialCondition::forced_plus: return {{Direction::plus, 1.0}};
    case InitialCondition::forced_minus: return {{Direction::minus, 1.0}};
    case InitialCondition::stationary: break;
  }
  const auto st = stationary_dist(params);
  return {{Direction::plus, st.p_plus}, {Direction::minus, st.p_minus}};
}

// Calls leaf(x, k_plus, k_minus, step_count_in_each_transition) for every
// step sequence following sigma0. Transition counts index
// [previous is plus][next is plus].
template <class Leaf>
void walk_all(int n, Direction sigma0, Leaf&& leaf) {
  struct Frame {
    int depth;
    int x;
    int k_plus;
    int k_minus;
    Direction prev;
    std::array<std::array<int, 2>, 2> transitions;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0, 0, sigma0, {}});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == n) {
      leaf(f.x, f.k_plus, f.k_minus, f.transitions);
      continue;
    }
    for (Direction next : {Direction::plus, Direction::minus}) {
      Frame g = f;
      g.depth += 1;
      g.x += sign(next);
      if (next != f.prev) (f.prev == Direction::plus ? g.k_plus : g.k_minus) += 1;
      g.transitions[f.prev == Direction::plus ? 1 : 0][next == Direction::plus ? 1 : 0] += 1;
      g.prev = next;
      stack.push_back(g);
    }
  }
}

// Engine for chunk `chunk` of the stream identified by `seed`.
std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in [0,1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

constexpr std::uint64_t kChunkSize = 1U << 14;

// Draws one walk; on_step(sigma_j) sees each step after sigma0.
template <class OnStep>
WalkOutcome draw_walk(std::mt19937_64& eng, const SimConfig& c, double p_plus, OnStep&& on_step) {
  WalkOutcome out;
  out.n = c.n;
  switch (c.sigma0_mode) {
    case InitialCondition::forced_plus: out.sigma0 = Direction::plus; break;
    case InitialCondition::forced_minus: out.sigma0 = Direction::minus; break;
    case InitialCondition::stationary:
      out.sigma0 = uniform01(eng) < p_plus ? Direction::plus : Direction::minus;
      break;
  }
  Direction prev = out.sigma0;
  const double er = c.params.eps_r();
  const double el = c.params.eps_l();
  for (int j = 0; j < c.n; ++j) {
    const double persist = prev == Direction::plus ? er : el;
    Direction next = prev;
    if (uniform01(eng) >= persist) {
      next = opposite(prev);
      ++out.k;
    }
    out.x += sign(next);
    on_step(next);
    prev = next;
  }
  return out;
}

}  // namespace

JointPmf enumerate_exact(int n, const ModelParams& params, InitialCondition initial) {
  check_enumerable(n);
  const auto p = transition_matrix(params);
  // Step probability by [previous is plus][next is plus].
  const double step_prob[2][2] = {{p[1][1], p[1][0]}, {p[0][1], p[0][0]}};

  std::vector<CompensatedSum> cells(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
  auto cell = [&](int x, int k) -> CompensatedSum& {
    return cells[static_cast<std::size_t>((x + n) / 2) * static_cast<std::size_t>(n + 1) +
                 static_cast<std::size_t>(k)];
  };

  for (const auto& w : initial_weights(initial, params)) {
    walk_all(n, w.sigma0, [&](int x, int kp, int km, const auto& t) {
      double prob = w.weight;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) prob *= std::pow(step_prob[a][b], t[a][b]);
      cell(x, kp + km).add(prob);
    });
  }

  JointPmf pmf(n, params, initial, Precision::linear);
  for (int x = -n; x <= n; x += 2) {
    for (int k = 0; k <= n; ++k) {
      const double v = cell(x, k).value();
      if (v > 0.0) pmf.set(x, k, v, std::log(v));
    }
  }
  return pmf;
}

std::map<std::pair<int, int>, BigRational> enumerate_exact_rational(int n,
                                                                    const RationalParams& params,
                                                                    InitialCondition initial) {
  check_enumerable(n);
  const BigRational one = 1;
  const BigRational& er = params.eps_r();
  const BigRational& el = params.eps_l();
  const BigRational step_prob[2][2] = {{el, one - el}, {one - er, er}};

  std::vector<std::pair<Direction, BigRational>> starts;
  const BigRational denom = 2 - er - el;
  switch (initial) {
    case InitialCondition::forced_plus: starts = {{Direction::plus, one}}; break;
    case InitialCondition::forced_minus: starts = {{Direction::minus, one}}; break;
    case InitialCondition::stationary:
      starts = {{Direction::plus, (one - el) / denom}, {Direction::minus, (one - er) / denom}};
      break;
  }

  std::map<std::pair<int, int>, BigRational> out;
  for (const auto& [sigma0, weight] : starts) {
    walk_all(n, sigma0, [&](int x, int kp, int km, const auto& t) {
      BigRational prob = weight;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int i = 0; i < t[a][b]; ++i) prob *= step_prob[a][b];
      out[{x, kp + km}] += prob;
    });
  }
  return out;
}

std::map<std::tuple<int, int, int>, std::uint64_t> enumerate_reversal_counts(int n,
                                                                             Direction sigma0) {
  check_enumerable(n);
  std::map<std::tuple<int, int, int>, std::uint64_t> out;
  walk_all(n, sigma0, [&](int x, int kp, int km, const auto&) { ++out[{x, kp, km}]; });
  return out;
}

std::map<std::pair<int, int>, std::uint64_t> enumerate_segment_counts(int n, Direction sigma1) {
  check_enumerable(n);
  std::map<std::pair<int, int>, std::uint64_t> out;
  if (n == 1) {
    ++out[{sign(sigma1), 1}];
    return out;
  }
  // The first step is sigma1; the remaining n-1 steps follow it, and every
  // reversal among them opens a new segment.
  walk_all(n - 1, sigma1, [&](int x, int kp, int km, const auto&) {
    ++out[{x + sign(sigma1), 1 + kp + km}];
  });
  return out;
}

void validate(const SimConfig& c) {
  if (c.n < 1) throw std::invalid_argument("simulation requires n >= 1");
  if (c.num_walks < 1) throw std::invalid_argument("simulation requires num_walks >= 1");
}

WalkOutcome summarize(const WalkTrace& trace) {
  WalkOutcome out;
  out.sigma0 = trace.sigma0;
  out.n = static_cast<int>(trace.steps.size());
  int prev = sign(trace.sigma0);
  int twice_k = 0;
  for (std::int8_t s : trace.steps) {
    out.x += s;
    twice_k += 1 - prev * s;
    prev = s;
  }
  out.k = twice_k / 2;
  return out;
}

std::vector<WalkOutcome> simulate(const SimConfig& config, unsigned threads) {
  validate(config);
  const double p_plus = stationary_dist(config.params).p_plus;
  std::vector<WalkOutcome> out(config.num_walks);
  const std::uint64_t chunks = (config.num_walks + kChunkSize - 1) / kChunkSize;

  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
      auto eng = chunk_engine(config.seed, c);
      const std::uint64_t end = std::min(config.num_walks, (c + 1) * kChunkSize);
      for (std::uint64_t i = c * kChunkSize; i < end; ++i)
        out[i] = draw_walk(eng, config, p_plus, [](Direction) {});
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<WalkTrace> simulate_traces(const SimConfig& config) {
  validate(config);
  const double p_plus = stationary_dist(config.params).p_plus;
  std::vector<WalkTrace> out;
  out.reserve(config.num_walks);
  const std::uint64_t chunks = (config.num_walks + kChunkSize - 1) / kChunkSize;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    auto eng = chunk_engine(config.seed, c);
    const std::uint64_t end = std::min(config.num_walks, (c + 1) * kChunkSize);
    for (std::uint64_t i = c * kChunkSize; i < end; ++i) {
      WalkTrace trace;
      trace.steps.reserve(static_cast<std::size_t>(config.n));
      const auto o = draw_walk(eng, config, p_plus, [&](Direction d) {
        trace.steps.push_back(static_cast<std::int8_t>(sign(d)));
      });
      trace.sigma0 = o.sigma0;
      out.push_back(std::move(trace));
    }
  }
  return out;
}

void EmpiricalDist::add(const WalkOutcome& o) {
  ++counts_[{o.x, o.k}];
  ++total_;
}

void EmpiricalDist::merge(const EmpiricalDist& other) {
  for (const auto& [key, c] : other.counts_) counts_[key] += c;
  total_ += other.total_;
}

double EmpiricalDist::frequency(int x, int k) const {
  if (total_ == 0) return 0.0;
  const auto it = counts_.find({x, k});
  return it == counts_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_);
}

EmpiricalDist tabulate(std::span<const WalkOutcome> outcomes) {
  EmpiricalDist d;
  for (const auto& o : outcomes) d.add(o);
  return d;
}

double total_variation(const EmpiricalDist& empirical, const JointPmf& exact) {
  CompensatedSum s;
  exact.for_each([&](const PmfEntry& e) {
    s.add(std::abs(empirical.frequency(e.x, e.k) - e.prob));
  });
  for (const auto& [key, c] : empirical.counts()) {
    if (exact.prob(key.first, key.second) == 0.0)
      s.add(static_cast<double>(c) / static_cast<double>(empirical.total()));
  }
  return 0.5 * s.value();
}

}  // namespace prw
