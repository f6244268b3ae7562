#include "emcel/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "emcel/chain.hpp"
#include "emcel/errors.hpp"
#include "emcel/reference_laws.hpp"

namespace emcel {

double Payoff::operator()(double x) const {
  switch (kind) {
    case PayoffKind::Mean:
      return std::abs(x);
    case PayoffKind::Indicator:
      return x <= z ? 1.0 : 0.0;
    case PayoffKind::Raw:
      return x;
  }
  return x;
}

unsigned worker_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EMCEL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

std::size_t grid_steps(double t, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h must be positive and finite");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("t must be nonnegative and finite");
  return static_cast<std::size_t>(std::floor(t / h + 1e-9));
}

std::vector<double> sample_terminal(const ScaleFactor& sf, const StateSpace& space,
                                    const std::optional<FoldingMap>& fold, double y0, std::size_t n_steps,
                                    std::size_t n_paths, std::uint64_t seed, unsigned threads) {
  if (n_paths == 0) throw DomainError("n_paths must be positive");
  // validates the inputs once before any worker starts
  (void)simulate_terminal(sf, space, y0, 0, seed);

  std::vector<double> out(n_paths);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(threads == 0 ? worker_count() : threads, n_paths));
  constexpr std::size_t kChunk = 256;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= n_paths) return;
        const std::size_t end = std::min(n_paths, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          double x = simulate_terminal(sf, space, y0, n_steps, path_seed(seed, i));
          out[i] = fold ? fold->apply(x) : x;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_paths);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

McSummary summarize(std::span<const double> samples, const Payoff& payoff, double h) {
  if (samples.empty()) throw DomainError("cannot summarize an empty sample");
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += payoff(x);
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : samples) {
    const double d = payoff(x) - mean;
    ss += d * d;
  }
  const double var = samples.size() > 1 ? ss / (n - 1.0) : 0.0;
  McSummary s;
  s.n_paths = samples.size();
  s.estimate = mean;
  s.std_error = std::sqrt(var / n);
  s.h = h;
  if (!std::isfinite(s.estimate)) throw NumericError("Monte Carlo estimate is not finite");
  return s;
}

std::optional<double> reference_value(const ModelSpec& spec, const Payoff& payoff, double t) {
  if (!(t > 0.0)) return std::nullopt;
  if (const auto* r = std::get_if<model::ReflectedStickyBM>(&spec); r && r->sigma == 1.0) {
    if (payoff.kind == PayoffKind::Mean) return reflected_sticky_mean(t, r->theta);
    if (payoff.kind == PayoffKind::Indicator)
      return payoff.z < 0.0 ? 0.0 : reflected_sticky_cdf(payoff.z, t, r->theta);
    return reflected_sticky_mean(t, r->theta);
  }
  if (const auto* s = std::get_if<model::StickyBM>(&spec); s && s->sigma == 1.0) {
    // |X| is the reflected process with stickiness theta
    if (payoff.kind == PayoffKind::Mean) return reflected_sticky_mean(t, s->theta);
    if (payoff.kind == PayoffKind::Raw) return 0.0;
    return std::nullopt;
  }
  if (const auto* b = std::get_if<model::BrownianMotion>(&spec)) {
    if (payoff.kind == PayoffKind::Raw) return 0.0;
    if (payoff.kind == PayoffKind::Mean) return b->sigma * std::sqrt(2.0 * t / std::numbers::pi);
    return normal_cdf(payoff.z / (b->sigma * std::sqrt(t)));
  }
  if (std::holds_alternative<model::GeometricBM>(spec) && payoff.kind != PayoffKind::Indicator) return 1.0;
  return std::nullopt;
}

std::optional<double> reference_cdf(const ModelSpec& spec, double x, double t) {
  if (!(t > 0.0)) return std::nullopt;
  if (const auto* r = std::get_if<model::ReflectedStickyBM>(&spec); r && r->sigma == 1.0)
    return x < 0.0 ? 0.0 : reflected_sticky_cdf(x, t, r->theta);
  if (const auto* s = std::get_if<model::StickyBM>(&spec); s && s->sigma == 1.0) {
    // X is symmetric and |X| is the reflected process
    if (x >= 0.0) return 0.5 * (1.0 + reflected_sticky_cdf(x, t, s->theta));
    return 0.5 * (1.0 - reflected_sticky_cdf(-x, t, s->theta));
  }
  if (const auto* b = std::get_if<model::BrownianMotion>(&spec)) return normal_cdf(x / (b->sigma * std::sqrt(t)));
  if (const auto* g = std::get_if<model::GeometricBM>(&spec)) {
    if (x <= 0.0) return 0.0;
    const double vol = g->sigma * std::sqrt(t);
    return normal_cdf((std::log(x) + 0.5 * vol * vol) / vol);
  }
  return std::nullopt;
}

std::vector<double> sample_model(const ModelSpec& spec, const std::optional<Strategy>& strategy, double h, double t,
                                 std::size_t n_paths, std::uint64_t seed, unsigned threads) {
  const ModelSpec resolved = resolve_for_step(spec, h);
  const SimulationModel sim = simulation_model(resolved);
  const ScaleFactor sf = build_scale_factor(sim.measure, h, strategy ? *strategy : preferred_strategy(resolved));
  return sample_terminal(sf, sim.measure.space(), sim.fold, default_start(resolved), grid_steps(t, h), n_paths, seed,
                         threads);
}

McSummary estimate_functional(const ModelSpec& spec, const std::optional<Strategy>& strategy, double h, double t,
                              const Payoff& payoff, std::size_t n_paths, std::uint64_t seed, unsigned threads) {
  const std::size_t steps = grid_steps(t, h);
  const std::vector<double> samples = sample_model(spec, strategy, h, t, n_paths, seed, threads);
  McSummary s = summarize(samples, payoff, h);
  s.t_grid = static_cast<double>(steps) * h;
  s.time_rounded = std::abs(s.t_grid - t) > 1e-9 * std::max(1.0, t);
  s.target = reference_value(spec, payoff, s.t_grid);
  return s;
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples, std::span<const double> xs) {
  if (samples.empty()) throw DomainError("empirical_cdf needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    out.emplace_back(x, static_cast<double>(count) / n);
  }
  return out;
}

}  // namespace emcel
