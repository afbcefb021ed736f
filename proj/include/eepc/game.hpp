#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eepc/channel.hpp"
#include "eepc/efficiency.hpp"

namespace eepc {

struct SolverSettings {
  double delta_mw = 0.1;        // stop when max_i |p_i^{t+1} - p_i^t| < delta
  std::size_t max_rounds = 10000;
  std::size_t br_grid = 512;    // coarse grid before golden-section refinement
  double br_refine_tol = 1e-9;  // relative to P_max

  void validate() const;
};

/// A complete game instance. Immutable once built; safe to share between
/// threads.
struct GameConfig {
  ChannelMatrix channel;
  LinkModel link;
  SolverSettings solver;

  GameConfig(ChannelMatrix channel, LinkModel link, SolverSettings solver = {});

  std::size_t users() const noexcept { return channel.size(); }
  double max_power() const noexcept { return link.energy.max_power_mw; }
  PowerProfile full_power() const { return PowerProfile(users(), max_power()); }

  /// Re-checks every invariant; throws ConfigError.
  void validate() const;
};

/// Solver defaults tied to P_max: delta = 1e-4 P_max.
SolverSettings default_solver(double max_power_mw);

struct QosPower {
  double power = 0.0;
  bool feasible = true;  // false: loss bound unreachable even at P_max
};

/// Smallest power of user i meeting the CAR loss bound against the other
/// entries of `profile` (entry i ignored). Throws ProtocolMismatch under AAR.
QosPower qos_min_power(std::size_t i, const PowerProfile& profile, const GameConfig& cfg);

struct BestResponse {
  double power = 0.0;        // the power the user moves to
  double unconstrained = 0.0;  // argmax of eta alone
  double qos_power = 0.0;    // CAR only
  bool qos_feasible = true;
};

/// Best response of user i to the other entries of `profile`.
BestResponse best_response_detail(std::size_t i, const PowerProfile& profile,
                                  const GameConfig& cfg);
double best_response(std::size_t i, const PowerProfile& profile, const GameConfig& cfg);

struct SweepRecord {
  PowerProfile profile;
  std::vector<double> payoffs;
  double delta = 0.0;
};

struct NEResult {
  PowerProfile final_profile;
  std::vector<double> payoffs;
  std::size_t rounds_used = 0;
  bool converged = false;
  std::vector<SweepRecord> trajectory;
  std::vector<bool> qos_infeasible;
};

/// Sequential best-response dynamics. Users update one at a time in
/// `order` (default 0..N-1), each against the latest profile.
NEResult run_dynamics(const GameConfig& cfg, const PowerProfile& initial,
                      std::span<const std::size_t> order = {});
/// Starts from (P_max, ..., P_max).
NEResult run_dynamics(const GameConfig& cfg);

struct NashCheck {
  bool is_nash = true;
  std::size_t worst_user = 0;
  double worst_power = 0.0;
  double worst_gain = 0.0;  // relative payoff gain of the best deviation found
};

/// Scans dev_grid unilateral deviations per user over [0, P_max].
NashCheck verify_nash(const PowerProfile& profile, const GameConfig& cfg,
                      std::size_t dev_grid = 2000, double slack = 1e-4);

/// First-order condition of eta_i in p_i, in the normalized SINR form
/// -(A'(sinr) + C B'(sinr)). Same sign as d(eta_i)/d(p_i); zero at an
/// interior unconstrained maximizer. CAR only; p_i must be interior.
double foc_residual(const PowerProfile& profile, std::size_t i, const GameConfig& cfg);

/// Sum of payoffs; a user at p = 0 with b = 0 contributes its limit, 0.
double sum_payoff(const PowerProfile& profile, const GameConfig& cfg);

}  // namespace eepc
