#pragma once

#include <optional>
#include <string>
#include <variant>

#include "emcel/folding.hpp"
#include "emcel/scale_factor.hpp"
#include "emcel/speed_measure.hpp"

namespace emcel {

namespace model {

/// sigma times a standard Brownian motion.
struct BrownianMotion {
  double sigma = 1.0;
};

/// dX = sigma X dW on (0, inf).
struct GeometricBM {
  double sigma = 1.0;
};

/// Brownian motion on the real line, sticky at 0.
struct StickyBM {
  double sigma = 1.0;
  double theta = 1.0;
};

/// Brownian motion on [0, inf) with slow reflection at 0.
struct ReflectedStickyBM {
  double sigma = 1.0;
  double theta = 1.0;
};

/// Brownian motion slowed down on the Cantor set: m = m_C + 2 dx. With
/// exact = false, m_C is replaced by its level-n approximation m_n; level 0
/// selects the default level for the time step.
struct CantorBM {
  int n_level = 0;
  bool exact = false;
};

}  // namespace model

using ModelSpec = std::variant<model::BrownianMotion, model::GeometricBM, model::StickyBM, model::ReflectedStickyBM,
                               model::CantorBM>;

/// Catalog name: bm, gbm, sticky, reflected-sticky or cantor.
std::string model_name(const ModelSpec& spec);

/// Throws DomainError for nonpositive parameters or an unsupported level.
void validate(const ModelSpec& spec);

/// Replace a Cantor level of 0 by the default level for h.
ModelSpec resolve_for_step(const ModelSpec& spec, double h);

/// Speed measure of the model on its own state space.
SpeedMeasure speed_measure(const ModelSpec& spec);

/// Natural starting point: 1 for GBM, 0 otherwise.
double default_start(const ModelSpec& spec);

/// Closed-form or level-n strategy matching the simulation measure.
Strategy preferred_strategy(const ModelSpec& spec);

/// Measure the chain is simulated on, with the folding map when the model has
/// a reflecting boundary.
struct SimulationModel {
  SpeedMeasure measure;
  std::optional<FoldingMap> fold;
};

SimulationModel simulation_model(const ModelSpec& spec);

}  // namespace emcel
