#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "emcel/speed_measure.hpp"
#include "emcel/state_space.hpp"

namespace emcel {

enum class ScaleFactorKind { ClosedForm, Bisection, CantorLevel };

struct ScaleEvaluation {
  double value = 0.0;
  /// The tent was cut at a finite boundary before the functional reached h.
  bool boundary_short = false;
};

/// y -> a_h(y) for a fixed time step h. Vanishes at finite boundaries and is
/// truncated so that y +- a_h(y) stays in the closure of the state space.
/// Copies share one memo table; evaluation is safe from several threads.
class ScaleFactor {
 public:
  using Evaluator = std::function<ScaleEvaluation(double)>;

  ScaleFactor(double h, StateSpace space, ScaleFactorKind kind, std::string label, Evaluator eval,
              bool memoize, int cantor_level = 0);

  double operator()(double y) const { return evaluate(y).value; }
  ScaleEvaluation evaluate(double y) const;

  double h() const { return h_; }
  const StateSpace& space() const { return space_; }
  ScaleFactorKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  int cantor_level() const { return cantor_level_; }
  std::size_t memo_size() const;

 private:
  struct Memo;

  ScaleEvaluation compute(double y) const;

  double h_;
  StateSpace space_;
  ScaleFactorKind kind_;
  std::string label_;
  Evaluator eval_;
  int cantor_level_;
  std::shared_ptr<Memo> memo_;
};

namespace strategy {

/// Solve the exit-time equation by bisection (EMCEL).
struct Emcel {};

/// a_h(y) = sqrt(h) eta(y). Without eta, eta = sqrt(2 / density).
struct WeakEuler {
  std::function<double(double)> eta;
};

struct StickyClosedForm {
  double sigma = 1.0;
  double theta = 1.0;
};

struct GbmClosedForm {
  double sigma = 1.0;
};

/// a_h = sigma sqrt(h) for sigma times a Brownian motion.
struct BmClosedForm {
  double sigma = 1.0;
};

/// Scale factor for Brownian motion slowed down on the Cantor set at level n.
struct Cantor {
  int level = 0;
};

}  // namespace strategy

using Strategy = std::variant<strategy::Emcel, strategy::WeakEuler, strategy::StickyClosedForm,
                              strategy::GbmClosedForm, strategy::BmClosedForm, strategy::Cantor>;

std::string strategy_name(const Strategy& s);

/// Dispatch a strategy for a given measure and h. tol <= 0 selects the
/// default bisection tolerance 1e-10 sqrt(h). Throws MismatchError when the
/// strategy does not describe the measure.
ScaleFactor build_scale_factor(const SpeedMeasure& m, double h, const Strategy& s, double tol = 0.0);

}  // namespace emcel
