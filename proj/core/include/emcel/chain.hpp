#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "emcel/folding.hpp"
#include "emcel/scale_factor.hpp"
#include "emcel/state_space.hpp"

namespace emcel {

/// States X_{kh}, k = 0..K, of one coin-tossing chain.
struct ChainPath {
  double h = 0.0;
  std::vector<double> states;
  double start = 0.0;
  std::uint64_t rng_seed = 0;

  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
  double final_time() const { return h * static_cast<double>(steps()); }
};

/// Seed of the independent stream for path `index` under a master seed.
std::uint64_t path_seed(std::uint64_t master, std::uint64_t index);

/// Fair +-1 signs drawn from the bits of a 64-bit Mersenne twister.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t seed) : engine_(seed) {}

  int next() {
    if (remaining_ == 0) {
      bits_ = engine_();
      remaining_ = 64;
    }
    const int sign = (bits_ & 1U) ? 1 : -1;
    bits_ >>= 1;
    --remaining_;
    return sign;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int remaining_ = 0;
};

/// One step y -> y + a_h(y) xi, kept inside the closure of the space. States
/// within rounding distance of a finite boundary are snapped onto it.
double chain_step(const ScaleFactor& sf, const StateSpace& space, double y, int xi);

/// Simulate K = n_steps steps from y0 with coins drawn from CoinStream(seed).
/// The space must not have reflecting boundaries (use extend_measure and
/// fold_path for those).
ChainPath simulate_path(const ScaleFactor& sf, const StateSpace& space, double y0, std::size_t n_steps,
                        std::uint64_t seed);

/// Same recursion driven by a given sign sequence (entries +1 or -1).
ChainPath simulate_path_with_signs(const ScaleFactor& sf, const StateSpace& space, double y0,
                                   std::span<const int> signs);

/// Final state of simulate_path without storing the path.
double simulate_terminal(const ScaleFactor& sf, const StateSpace& space, double y0, std::size_t n_steps,
                         std::uint64_t seed);

/// Linear interpolation of the path at time t in [0, K h].
double interpolate(const ChainPath& path, double t);

/// Pointwise image of the path under the folding map.
ChainPath fold_path(const ChainPath& path, const FoldingMap& map);

}  // namespace emcel
