#include "emcel/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "emcel/errors.hpp"

namespace emcel {

namespace {

void check_inputs(const ScaleFactor& sf, const StateSpace& space, double y0) {
  if (!(sf.space() == space)) throw MismatchError("scale factor was built for a different state space");
  if (space.has_reflecting_boundary())
    throw DomainError("chains cannot be simulated on a reflecting space; extend the measure and fold the path");
  if (!space.in_interior(y0)) throw DomainError("start point must lie in the interior of the state space");
}

bool near(double x, double boundary, double scale) {
  return std::abs(x - boundary) <= 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer applied to the master seed and the offset stream index
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double chain_step(const ScaleFactor& sf, const StateSpace& space, double y, int xi) {
  const double a = sf(y);
  if (a == 0.0) return y;
  double next = y + a * static_cast<double>(xi);
  const double scale = std::max(std::abs(y), a);
  if (space.left_finite()) {
    if (next < space.left() || (space.contains(space.left()) && near(next, space.left(), scale)))
      next = space.left();
  }
  if (space.right_finite()) {
    if (next > space.right() || (space.contains(space.right()) && near(next, space.right(), scale)))
      next = space.right();
  }
  return next;
}

ChainPath simulate_path(const ScaleFactor& sf, const StateSpace& space, double y0, std::size_t n_steps,
                        std::uint64_t seed) {
  check_inputs(sf, space, y0);
  ChainPath path{sf.h(), {}, y0, seed};
  path.states.reserve(n_steps + 1);
  path.states.push_back(y0);
  CoinStream coins(seed);
  double y = y0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    y = chain_step(sf, space, y, coins.next());
    path.states.push_back(y);
  }
  return path;
}

ChainPath simulate_path_with_signs(const ScaleFactor& sf, const StateSpace& space, double y0,
                                   std::span<const int> signs) {
  check_inputs(sf, space, y0);
  ChainPath path{sf.h(), {}, y0, 0};
  path.states.reserve(signs.size() + 1);
  path.states.push_back(y0);
  double y = y0;
  for (int xi : signs) {
    if (xi != 1 && xi != -1) throw DomainError("coin signs must be +1 or -1");
    y = chain_step(sf, space, y, xi);
    path.states.push_back(y);
  }
  return path;
}

double simulate_terminal(const ScaleFactor& sf, const StateSpace& space, double y0, std::size_t n_steps,
                         std::uint64_t seed) {
  check_inputs(sf, space, y0);
  CoinStream coins(seed);
  double y = y0;
  for (std::size_t k = 0; k < n_steps; ++k) y = chain_step(sf, space, y, coins.next());
  return y;
}

double interpolate(const ChainPath& path, double t) {
  if (path.states.empty()) throw DomainError("cannot interpolate an empty path");
  if (!(t >= 0.0)) throw std::out_of_range("interpolation time must be nonnegative");
  const std::size_t last = path.steps();
  const double s = t / path.h;
  if (s > static_cast<double>(last) * (1.0 + 1e-12))
    throw std::out_of_range("interpolation time " + std::to_string(t) + " is beyond the final time");
  double k_floor = std::floor(s);
  // times that are grid points up to rounding map onto the grid point
  const double nearest = std::round(s);
  if (std::abs(s - nearest) <= 1e-9 * std::max(1.0, s)) {
    const auto k = std::min(static_cast<std::size_t>(nearest), last);
    return path.states[k];
  }
  const auto k = static_cast<std::size_t>(k_floor);
  if (k >= last) return path.states[last];
  const double frac = s - k_floor;
  return path.states[k] + frac * (path.states[k + 1] - path.states[k]);
}

ChainPath fold_path(const ChainPath& path, const FoldingMap& map) {
  ChainPath out = path;
  for (double& x : out.states) x = map(x);
  out.start = map(path.start);
  return out;
}

}  // namespace emcel
