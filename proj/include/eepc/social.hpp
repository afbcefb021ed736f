#pragma once

#include <cstddef>
#include <vector>

#include "eepc/game.hpp"
#include "eepc/parallel.hpp"

namespace eepc {

struct SocialOptimum {
  PowerProfile profile;
  double sum_payoff = 0.0;
  std::vector<double> stage_best;  // incumbent after the grid and after each refinement
  bool heuristic = false;          // true for the coordinate-ascent fallback
};

/// Exhaustive-grid maximization of the sum payoff over [0, P_max]^N (N <= 4),
/// followed by `refine_rounds` local grids, each 10x narrower than the last
/// and centred on the incumbent. `candidate`, if given, joins the candidate
/// set, so the result is never worse than it. Ties go to the
/// lexicographically smallest profile, which makes the serial and parallel
/// paths agree exactly.
SocialOptimum social_optimum(const GameConfig& cfg, std::size_t grid_per_dim = 200,
                             std::size_t refine_rounds = 3,
                             const PowerProfile* candidate = nullptr,
                             Execution exec = Execution::Parallel);

/// Serial reference of the grid search, kept for testing the parallel kernel.
inline SocialOptimum social_optimum_reference(const GameConfig& cfg, std::size_t grid_per_dim,
                                              std::size_t refine_rounds,
                                              const PowerProfile* candidate = nullptr) {
  return social_optimum(cfg, grid_per_dim, refine_rounds, candidate, Execution::Serial);
}

/// Heuristic for larger N: per-axis grid maximization of the sum payoff, one
/// coordinate at a time, for `sweeps` passes. No optimality guarantee.
SocialOptimum social_optimum_coordinate_ascent(const GameConfig& cfg,
                                               std::size_t grid_per_dim = 512,
                                               std::size_t sweeps = 20,
                                               const PowerProfile* start = nullptr);

struct PoaReport {
  PowerProfile ne_profile;
  double ne_sum_payoff = 0.0;
  PowerProfile opt_profile;
  double opt_sum_payoff = 0.0;
  double poa = 1.0;
  std::size_t grid_resolution = 0;
  std::size_t refine_rounds = 0;
  std::size_t ne_rounds = 0;
};

/// Price of anarchy: best sum payoff over the NE sum payoff. Runs the
/// dynamics from full power; throws NonConvergence if they stall.
PoaReport price_of_anarchy(const GameConfig& cfg, std::size_t grid_per_dim = 200,
                           std::size_t refine_rounds = 3,
                           Execution exec = Execution::Parallel);

/// Same, reusing an already computed equilibrium.
PoaReport price_of_anarchy(const GameConfig& cfg, const NEResult& ne,
                           std::size_t grid_per_dim = 200, std::size_t refine_rounds = 3,
                           Execution exec = Execution::Parallel);

}  // namespace eepc
