#include "emcel/models.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <type_traits>

#include "emcel/cantor.hpp"
#include "emcel/errors.hpp"

namespace emcel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string model_name(const ModelSpec& spec) {
  return std::visit(overloaded{[](const model::BrownianMotion&) { return std::string("bm"); },
                               [](const model::GeometricBM&) { return std::string("gbm"); },
                               [](const model::StickyBM&) { return std::string("sticky"); },
                               [](const model::ReflectedStickyBM&) { return std::string("reflected-sticky"); },
                               [](const model::CantorBM&) { return std::string("cantor"); }},
                    spec);
}

void validate(const ModelSpec& spec) {
  std::visit(overloaded{[](const model::BrownianMotion& m) { require_positive(m.sigma, "sigma"); },
                        [](const model::GeometricBM& m) { require_positive(m.sigma, "sigma"); },
                        [](const model::StickyBM& m) {
                          require_positive(m.sigma, "sigma");
                          require_positive(m.theta, "theta");
                        },
                        [](const model::ReflectedStickyBM& m) {
                          require_positive(m.sigma, "sigma");
                          require_positive(m.theta, "theta");
                        },
                        [](const model::CantorBM& m) {
                          if (m.n_level < 0 || m.n_level > cantor::kMaxLevel)
                            throw DomainError("n must be between 0 and " + std::to_string(cantor::kMaxLevel));
                        }},
             spec);
}

ModelSpec resolve_for_step(const ModelSpec& spec, double h) {
  if (const auto* c = std::get_if<model::CantorBM>(&spec); c && c->n_level == 0) {
    model::CantorBM out = *c;
    out.n_level = cantor::default_level(h);
    return out;
  }
  return spec;
}

SpeedMeasure speed_measure(const ModelSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const model::BrownianMotion& m) {
            return SpeedMeasure::from_components(StateSpace::real_line(),
                                                 PiecewiseConstantDensity::constant(2.0 / (m.sigma * m.sigma)));
          },
          [](const model::GeometricBM& m) {
            const double c = 2.0 / (m.sigma * m.sigma);
            auto density = std::make_shared<FunctionDensity>([c](double x) { return c / (x * x); });
            return SpeedMeasure::from_components(StateSpace(0.0, kInf), density);
          },
          [](const model::StickyBM& m) {
            return SpeedMeasure::from_components(StateSpace::real_line(),
                                                 PiecewiseConstantDensity::constant(2.0 / (m.sigma * m.sigma)),
                                                 {{0.0, 2.0 / m.theta}});
          },
          [](const model::ReflectedStickyBM& m) {
            return SpeedMeasure::from_components(
                StateSpace(0.0, kInf, BoundaryBehavior::Reflecting, BoundaryBehavior::Inaccessible),
                PiecewiseConstantDensity::constant(2.0 / (m.sigma * m.sigma)), {{0.0, 1.0 / m.theta}});
          },
          [](const model::CantorBM& m) {
            PartPtr singular;
            if (m.exact) {
              singular = std::make_shared<cantor::CantorSingularPart>();
            } else {
              if (m.n_level == 0) throw DomainError("Cantor level 0 must be resolved against a time step");
              singular = cantor::level_density(m.n_level);
            }
            return SpeedMeasure(StateSpace::real_line(), {PiecewiseConstantDensity::constant(2.0), singular});
          }},
      spec);
}

double default_start(const ModelSpec& spec) { return std::holds_alternative<model::GeometricBM>(spec) ? 1.0 : 0.0; }

Strategy preferred_strategy(const ModelSpec& spec) {
  return std::visit(
      overloaded{[](const model::BrownianMotion& m) -> Strategy { return strategy::BmClosedForm{m.sigma}; },
                 [](const model::GeometricBM& m) -> Strategy { return strategy::GbmClosedForm{m.sigma}; },
                 [](const model::StickyBM& m) -> Strategy { return strategy::StickyClosedForm{m.sigma, m.theta}; },
                 // the extended measure of the reflected model is the sticky one
                 [](const model::ReflectedStickyBM& m) -> Strategy {
                   return strategy::StickyClosedForm{m.sigma, m.theta};
                 },
                 [](const model::CantorBM& m) -> Strategy {
                   if (m.n_level == 0) throw DomainError("Cantor level 0 must be resolved against a time step");
                   return strategy::Cantor{m.n_level};
                 }},
      spec);
}

SimulationModel simulation_model(const ModelSpec& spec) {
  SpeedMeasure m = speed_measure(spec);
  if (!m.space().has_reflecting_boundary()) return {m, std::nullopt};
  ExtendedMeasure ext = extend_measure(m);
  return {ext.measure, ext.fold};
}

}  // namespace emcel
