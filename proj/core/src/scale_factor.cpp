#include "emcel/scale_factor.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "emcel/cantor.hpp"
#include "emcel/errors.hpp"
#include "emcel/functionals.hpp"
#include "emcel/scale_solver.hpp"

namespace emcel {

struct ScaleFactor::Memo {
  static constexpr std::size_t kCapacity = std::size_t{1} << 22;
  mutable std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, ScaleEvaluation> table;
};

ScaleFactor::ScaleFactor(double h, StateSpace space, ScaleFactorKind kind, std::string label, Evaluator eval,
                         bool memoize, int cantor_level)
    : h_(h),
      space_(space),
      kind_(kind),
      label_(std::move(label)),
      eval_(std::move(eval)),
      cantor_level_(cantor_level),
      memo_(memoize ? std::make_shared<Memo>() : nullptr) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("time step h must be positive and finite");
  if (!eval_) throw DomainError("scale factor evaluator is empty");
}

ScaleEvaluation ScaleFactor::compute(double y) const {
  ScaleEvaluation out = eval_(y);
  if (!(out.value >= 0.0) || !std::isfinite(out.value))
    throw NumericError("scale factor produced an invalid value at y = " + std::to_string(y));
  const double room = space_.distance_to_boundary(y);
  if (out.value > room) {
    out.value = room;
    out.boundary_short = true;
  }
  return out;
}

ScaleEvaluation ScaleFactor::evaluate(double y) const {
  if (!space_.in_closure(y))
    throw DomainError("scale factor evaluated outside the state space at y = " + std::to_string(y));
  if ((space_.left_finite() && y == space_.left()) || (space_.right_finite() && y == space_.right()))
    return {0.0, false};
  if (!memo_) return compute(y);

  const auto key = std::bit_cast<std::uint64_t>(y);
  {
    std::shared_lock lock(memo_->mutex);
    if (auto it = memo_->table.find(key); it != memo_->table.end()) return it->second;
  }
  const ScaleEvaluation value = compute(y);
  std::unique_lock lock(memo_->mutex);
  if (memo_->table.size() < Memo::kCapacity) memo_->table.emplace(key, value);
  return value;
}

std::size_t ScaleFactor::memo_size() const {
  if (!memo_) return 0;
  std::shared_lock lock(memo_->mutex);
  return memo_->table.size();
}

// ---------------------------------------------------------------------------

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

[[noreturn]] void mismatch(const std::string& what) { throw MismatchError(what); }

void require_real_line(const SpeedMeasure& m, const char* strategy) {
  if (!(m.space() == StateSpace::real_line()))
    mismatch(std::string(strategy) + " strategy requires the state space to be the real line");
}

void check_sticky(const SpeedMeasure& m, const strategy::StickyClosedForm& s) {
  require_real_line(m, "sticky closed-form");
  const double dens = 2.0 / (s.sigma * s.sigma);
  const double atom = 2.0 / s.theta;
  if (!close(m.density(0.37), dens) || !close(m.density(-1.3), dens))
    mismatch("sticky closed-form strategy: density is not 2/sigma^2");
  if (!close(m.point_mass(0.0), atom)) mismatch("sticky closed-form strategy: atom at 0 is not 2/theta");
  if (!close(measure_of_open_interval(m, -1.0, 1.0), 2.0 * dens + atom))
    mismatch("sticky closed-form strategy: measure has extra mass on (-1, 1)");
}

void check_gbm(const SpeedMeasure& m, const strategy::GbmClosedForm& s) {
  const auto& sp = m.space();
  if (!(sp.left() == 0.0 && std::isinf(sp.right()) && sp.left_behavior() == BoundaryBehavior::Inaccessible))
    mismatch("GBM closed-form strategy requires the state space (0, inf)");
  const double s2 = s.sigma * s.sigma;
  if (!close(m.density(1.0), 2.0 / s2) || !close(m.density(2.0), 0.5 / s2))
    mismatch("GBM closed-form strategy: density is not 2/(sigma x)^2");
  if (!m.is_density_only()) mismatch("GBM closed-form strategy: measure has atoms or a singular part");
}

void check_bm(const SpeedMeasure& m, const strategy::BmClosedForm& s) {
  require_real_line(m, "Brownian closed-form");
  const double dens = 2.0 / (s.sigma * s.sigma);
  if (!close(m.density(0.37), dens) || !close(m.density(-1.3), dens))
    mismatch("Brownian closed-form strategy: density is not 2/sigma^2");
  if (!close(measure_of_open_interval(m, -1.0, 1.0), 2.0 * dens))
    mismatch("Brownian closed-form strategy: measure is not a multiple of Lebesgue measure");
}

void check_cantor(const SpeedMeasure& m, const strategy::Cantor& s) {
  require_real_line(m, "Cantor");
  if (s.level < 1 || s.level > cantor::kMaxLevel) mismatch("Cantor strategy: level must be >= 1");
  if (!close(m.density(-1.0), 2.0) || !close(m.density(2.0), 2.0))
    mismatch("Cantor strategy: density outside [0, 1] is not 2");
  // 2 * 3 from Lebesgue part plus total mass 1 of the Cantor part
  if (!close(measure_of_open_interval(m, -1.0, 2.0), 7.0))
    mismatch("Cantor strategy: measure is not m_C + 2 dx");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string strategy_name(const Strategy& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, strategy::Emcel>) return "emcel";
        if constexpr (std::is_same_v<T, strategy::WeakEuler>) return "weak-euler";
        if constexpr (std::is_same_v<T, strategy::StickyClosedForm>)
          return "sticky(sigma=" + fmt(v.sigma) + ",theta=" + fmt(v.theta) + ")";
        if constexpr (std::is_same_v<T, strategy::GbmClosedForm>) return "gbm(sigma=" + fmt(v.sigma) + ")";
        if constexpr (std::is_same_v<T, strategy::BmClosedForm>) return "bm(sigma=" + fmt(v.sigma) + ")";
        if constexpr (std::is_same_v<T, strategy::Cantor>) return "cantor(n=" + std::to_string(v.level) + ")";
      },
      s);
}

ScaleFactor build_scale_factor(const SpeedMeasure& m, double h, const Strategy& s, double tol) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("time step h must be positive and finite");
  if (tol <= 0.0) tol = default_tolerance(h);
  const StateSpace space = m.space();
  const std::string label = strategy_name(s);

  return std::visit(
      [&](const auto& v) -> ScaleFactor {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, strategy::Emcel>) {
          auto eval = [m, h, tol](double y) { return solve_emcel_detailed(m, h, y, tol); };
          return ScaleFactor(h, space, ScaleFactorKind::Bisection, label, eval, true);
        } else if constexpr (std::is_same_v<T, strategy::WeakEuler>) {
          if (!m.is_density_only())
            mismatch("weak Euler strategy needs a speed measure with a density only (m = 2/eta^2 dx)");
          std::function<double(double)> eta = v.eta;
          if (!eta) eta = [m](double y) { return std::sqrt(2.0 / m.density(y)); };
          const double root_h = std::sqrt(h);
          auto eval = [eta, root_h](double y) { return ScaleEvaluation{root_h * std::abs(eta(y)), false}; };
          return ScaleFactor(h, space, ScaleFactorKind::ClosedForm, label, eval, false);
        } else if constexpr (std::is_same_v<T, strategy::StickyClosedForm>) {
          check_sticky(m, v);
          auto eval = [v, h](double y) { return ScaleEvaluation{closed_form_sticky(v.sigma, v.theta, h, y), false}; };
          return ScaleFactor(h, space, ScaleFactorKind::ClosedForm, label, eval, false);
        } else if constexpr (std::is_same_v<T, strategy::GbmClosedForm>) {
          check_gbm(m, v);
          auto eval = [v, h](double y) { return ScaleEvaluation{closed_form_gbm(v.sigma, h, y), false}; };
          return ScaleFactor(h, space, ScaleFactorKind::ClosedForm, label, eval, false);
        } else if constexpr (std::is_same_v<T, strategy::BmClosedForm>) {
          check_bm(m, v);
          const double a = v.sigma * std::sqrt(h);
          auto eval = [a](double) { return ScaleEvaluation{a, false}; };
          return ScaleFactor(h, space, ScaleFactorKind::ClosedForm, label, eval, false);
        } else {
          check_cantor(m, v);
          auto intervals = std::make_shared<const std::vector<cantor::Interval>>(cantor::set_intervals(v.level));
          const int n = v.level;
          auto eval = [intervals, n, h, tol](double y) {
            return ScaleEvaluation{solve_cantor(*intervals, n, h, y, tol), false};
          };
          return ScaleFactor(h, space, ScaleFactorKind::CantorLevel, label, eval, true, n);
        }
      },
      s);
}

}  // namespace emcel
