#include "experiments.hpp"

#include <cmath>
#include <ctime>
#include <ostream>

#include "emcel/cantor.hpp"
#include "emcel/chain.hpp"
#include "emcel/condition_a.hpp"
#include "emcel/errors.hpp"
#include "emcel/monte_carlo.hpp"
#include "emcel/rate_fit.hpp"

#ifndef EMCEL_VERSION
#define EMCEL_VERSION "unknown"
#endif

namespace emcel::cli {

namespace {

struct Setup {
  SpeedMeasure measure;
  std::optional<FoldingMap> fold;
  ScaleFactor sf;
  double start;
  std::optional<ModelSpec> spec;
};

Strategy resolve_strategy(Strategy s, double h) {
  if (auto* c = std::get_if<strategy::Cantor>(&s); c && c->level == 0) c->level = cantor::default_level(h);
  return s;
}

Setup make_setup(const RunConfig& cfg, double h) {
  std::optional<ModelSpec> spec;
  SpeedMeasure base = cfg.measure ? *cfg.measure : speed_measure(resolve_for_step(*cfg.model, h));
  Strategy strat = strategy::Emcel{};
  double start = 0.0;
  if (cfg.model) {
    spec = resolve_for_step(*cfg.model, h);
    strat = cfg.strategy ? resolve_strategy(*cfg.strategy, h) : preferred_strategy(*spec);
    start = cfg.start.value_or(default_start(*spec));
  } else {
    strat = resolve_strategy(*cfg.strategy, h);
    start = cfg.start.value_or(0.0);
  }

  const bool simulates = cfg.experiment == Experiment::Paths || cfg.experiment == Experiment::Cdf ||
                         cfg.experiment == Experiment::RateStudy;
  if (simulates && (!base.space().contains(start) || !std::isfinite(start)))
    throw ConfigError("start", "must lie in the state space");
  std::optional<FoldingMap> fold;
  SpeedMeasure sim = base;
  if (base.space().has_reflecting_boundary()) {
    ExtendedMeasure ext = extend_measure(base);
    sim = ext.measure;
    fold = ext.fold;
  }
  if (simulates && !sim.space().in_interior(start)) throw ConfigError("start", "must lie in the interior of the state space");

  try {
    ScaleFactor sf = build_scale_factor(sim, h, strat, cfg.strategy_tol);
    return {sim, fold, sf, start, spec};
  } catch (const MismatchError& e) {
    throw ConfigError("strategy", e.what());
  }
}

void warn_rounding(std::ostream& warn, double t, double h) {
  const double tg = static_cast<double>(grid_steps(t, h)) * h;
  if (std::abs(tg - t) > 1e-9 * std::max(1.0, t))
    warn << "warning: t = " << format_double(t) << " is not a multiple of h = " << format_double(h)
         << "; using t = " << format_double(tg) << '\n';
}

CsvTable header(const RunConfig& cfg, const std::string& variant) {
  CsvTable table;
  const std::string config = cfg.document.dump();
  table.metadata.emplace_back("emcel", EMCEL_VERSION);
  table.metadata.emplace_back("experiment", to_string(cfg.experiment));
  table.metadata.emplace_back("config", config);
  table.metadata.emplace_back("config_hash", hex64(fnv1a64(config)));
  table.metadata.emplace_back("seed", std::to_string(cfg.seed));
  table.metadata.emplace_back("variant", variant);
  if (cfg.timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    table.metadata.emplace_back("timestamp", buf);
  }
  return table;
}

std::string variant_of(const Setup& s, bool folded) { return s.fold && folded ? "folded" : "raw"; }

CsvTable run_paths(const RunConfig& cfg, std::ostream& warn) {
  const double h = cfg.h_list.front();
  const Setup s = make_setup(cfg, h);
  warn_rounding(warn, cfg.t, h);
  const std::size_t steps = grid_steps(cfg.t, h);
  CsvTable table = header(cfg, variant_of(s, cfg.folded));
  table.columns = {"path", "k", "t", "state"};
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    ChainPath path = simulate_path(s.sf, s.measure.space(), s.start, steps, path_seed(cfg.seed, i));
    if (s.fold && cfg.folded) path = fold_path(path, *s.fold);
    for (std::size_t k = 0; k < path.states.size(); ++k)
      table.add_row({std::to_string(i), std::to_string(k), format_double(static_cast<double>(k) * h),
                     format_double(path.states[k])});
  }
  return table;
}

CsvTable run_scalefactor(const RunConfig& cfg) {
  CsvTable table;
  bool first = true;
  for (double h : cfg.h_list) {
    const Setup s = make_setup(cfg, h);
    if (first) {
      table = header(cfg, "raw");
      table.metadata.emplace_back("strategy", s.sf.label());
      table.columns = {"h", "y", "a_h", "a_h_over_sqrt_h", "boundary_short"};
      first = false;
    }
    const double root_h = std::sqrt(h);
    for (double y : cfg.grid->points()) {
      if (!s.measure.space().in_closure(y))
        throw ConfigError("grid", "point " + format_double(y) + " lies outside the state space");
      const ScaleEvaluation e = s.sf.evaluate(y);
      table.add_row({format_double(h), format_double(y), format_double(e.value), format_double(e.value / root_h),
                     e.boundary_short ? "1" : "0"});
    }
  }
  return table;
}

CsvTable run_cdf(const RunConfig& cfg, std::ostream& warn) {
  const double h = cfg.h_list.front();
  const Setup s = make_setup(cfg, h);
  warn_rounding(warn, cfg.t, h);
  const std::size_t steps = grid_steps(cfg.t, h);
  const std::optional<FoldingMap> fold = cfg.folded ? s.fold : std::nullopt;
  const std::vector<double> samples =
      sample_terminal(s.sf, s.measure.space(), fold, s.start, steps, cfg.n_paths, cfg.seed);
  const std::vector<double> xs = cfg.grid->points();
  const auto cdf = empirical_cdf(samples, xs);
  const double tg = static_cast<double>(steps) * h;

  CsvTable table = header(cfg, variant_of(s, cfg.folded));
  table.columns = {"x", "empirical", "reference"};
  for (const auto& [x, f] : cdf) {
    std::optional<double> ref;
    if (s.spec && (cfg.folded || !s.fold)) ref = reference_cdf(*s.spec, x, tg);
    table.add_row({format_double(x), format_double(f), format_double(ref ? *ref : std::nan(""))});
  }
  std::size_t at_start = 0;
  for (double x : samples) at_start += (x == s.start);
  table.summary.emplace_back("n_paths", std::to_string(cfg.n_paths));
  table.summary.emplace_back("t", format_double(tg));
  table.summary.emplace_back("mass_at_start",
                             format_double(static_cast<double>(at_start) / static_cast<double>(samples.size())));
  return table;
}

CsvTable run_rate(const RunConfig& cfg, std::ostream& warn) {
  CsvTable table = header(cfg, "folded");
  table.columns = {"h", "n_paths", "estimate", "std_error", "target", "abs_error"};
  std::vector<std::pair<double, double>> errors;
  for (std::size_t i = 0; i < cfg.h_list.size(); ++i) {
    const double h = cfg.h_list[i];
    const Setup s = make_setup(cfg, h);
    warn_rounding(warn, cfg.t, h);
    const std::size_t steps = grid_steps(cfg.t, h);
    const std::vector<double> samples =
        sample_terminal(s.sf, s.measure.space(), s.fold, s.start, steps, cfg.n_paths, path_seed(cfg.seed, i));
    McSummary m = summarize(samples, cfg.payoff, h);
    const double tg = static_cast<double>(steps) * h;
    const auto target = reference_value(*cfg.model, cfg.payoff, tg);
    if (!target) throw ConfigError("payoff", "no reference value is known for this model and payoff");
    const double err = std::abs(m.estimate - *target);
    errors.emplace_back(h, err);
    table.add_row({format_double(h), std::to_string(m.n_paths), format_double(m.estimate),
                   format_double(m.std_error), format_double(*target), format_double(err)});
  }
  const RateFit fit = rate_fit(errors);
  if (fit.replaced_zeros > 0)
    warn << "warning: " << fit.replaced_zeros << " zero error(s) replaced by machine epsilon in the fit\n";
  table.summary.emplace_back("slope", format_double(fit.slope));
  table.summary.emplace_back("intercept", format_double(fit.intercept));
  return table;
}

CsvTable run_conda(const RunConfig& cfg) {
  const Setup probe = make_setup(cfg, cfg.h_list.front());
  ScaleFactorFamily family = [&cfg](double h) { return make_setup(cfg, h).sf; };
  const auto [lo, hi] = *cfg.k_interval;
  std::vector<ConditionARow> rows;
  try {
    rows = condition_a_diagnostic(probe.measure, family, {lo, hi}, cfg.h_list, cfg.k_points);
  } catch (const DomainError& e) {
    throw ConfigError("K", e.what());
  }
  CsvTable table = header(cfg, "raw");
  table.metadata.emplace_back("strategy", probe.sf.label());
  table.columns = {"h", "sup_ratio"};
  for (const auto& r : rows) table.add_row({format_double(r.h), format_double(r.sup_ratio)});
  return table;
}

}  // namespace

CsvTable run_experiment(const RunConfig& cfg, std::ostream& warn) {
  switch (cfg.experiment) {
    case Experiment::Paths:
      return run_paths(cfg, warn);
    case Experiment::ScaleFactorTable:
      return run_scalefactor(cfg);
    case Experiment::Cdf:
      return run_cdf(cfg, warn);
    case Experiment::RateStudy:
      return run_rate(cfg, warn);
    case Experiment::ConditionA:
      return run_conda(cfg);
  }
  return {};
}

}  // namespace emcel::cli
