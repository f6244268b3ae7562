#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "emcel/folding.hpp"
#include "emcel/models.hpp"
#include "emcel/scale_factor.hpp"

namespace emcel {

enum class PayoffKind { Mean, Indicator, Raw };

/// Mean: |x|; Indicator: 1{x <= z}; Raw: x. Applied to folded values.
struct Payoff {
  PayoffKind kind = PayoffKind::Raw;
  double z = 0.0;

  static Payoff mean() { return {PayoffKind::Mean, 0.0}; }
  static Payoff indicator(double z) { return {PayoffKind::Indicator, z}; }
  static Payoff raw() { return {PayoffKind::Raw, 0.0}; }

  double operator()(double x) const;
};

struct McSummary {
  std::size_t n_paths = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> target;
  double h = 0.0;
  /// Grid time floor(t / h) h at which the payoff was evaluated.
  double t_grid = 0.0;
  bool time_rounded = false;
};

/// Worker count: EMCEL_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Number of steps floor(t / h), tolerant to rounding of t / h.
std::size_t grid_steps(double t, double h);

/// Terminal states of n_paths independent chains; path i uses the stream
/// path_seed(seed, i). Values are folded when a map is given. The result
/// does not depend on the number of threads.
std::vector<double> sample_terminal(const ScaleFactor& sf, const StateSpace& space,
                                    const std::optional<FoldingMap>& fold, double y0, std::size_t n_steps,
                                    std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

/// Mean and standard error of the payoff, summed in sample order.
McSummary summarize(std::span<const double> samples, const Payoff& payoff, double h);

/// Known value of E[payoff(X_t)] for the model, when the catalog has one.
std::optional<double> reference_value(const ModelSpec& spec, const Payoff& payoff, double t);

/// P(X_t <= x) for the model started at its default point, when known.
std::optional<double> reference_cdf(const ModelSpec& spec, double x, double t);

/// Terminal samples of the model chain at grid time floor(t/h) h. Without a
/// strategy the model's preferred one is used.
std::vector<double> sample_model(const ModelSpec& spec, const std::optional<Strategy>& strategy, double h, double t,
                                 std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

McSummary estimate_functional(const ModelSpec& spec, const std::optional<Strategy>& strategy, double h, double t,
                              const Payoff& payoff, std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

/// Right-continuous empirical distribution function at each x.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples, std::span<const double> xs);

}  // namespace emcel
