#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eepc/config.hpp"
#include "eepc/parallel.hpp"
#include "eepc/table.hpp"

namespace eepc {

/// A driver's product: the summary table plus named side tables ("trials",
/// "argmax"). Every table carries the same metadata block.
struct ExperimentOutput {
  Table table;
  std::vector<std::pair<std::string, Table>> extra;
  std::size_t nonconverged = 0;

  const Table& side(const std::string& name) const;
};

struct EeCurve {
  std::vector<double> power;
  std::vector<double> efficiency;
  double argmax_power = 0.0;
  double max_efficiency = 0.0;
};

/// eta_i on `grid` evenly spaced powers over [0, P_max], others held at
/// their entries in `others`.
EeCurve ee_curve(const GameConfig& cfg, std::size_t i, std::size_t grid,
                 const PowerProfile& others);

/// One EE curve of user 0 per swept value (others at P_max).
ExperimentOutput ee_curve_sweep(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// 10 log10(p^NE[q = 1] / p^NE[q]) for user 0.
ExperimentOutput power_gain_vs_q(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// PoA and f(sinr^NE) against q.
ExperimentOutput poa_vs_q(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// Empirical PoA quantiles over fading trials, per q.
ExperimentOutput poa_cdf(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// NE sum payoff against q; side table "argmax" holds the best q per series value.
ExperimentOutput sum_payoff_vs_q(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// Consumed power at the NE against b, proposed vs the q = 1 design.
ExperimentOutput energy_vs_b_against_full_buffer(const ExperimentConfig& cfg,
                                                 Execution exec = Execution::Parallel);
/// Single user, consumed power against b, proposed vs the minimum
/// Power meeting sweep.target_sinr_db.
ExperimentOutput energy_vs_b_against_sinr_target(const ExperimentConfig& cfg,
                                                 Execution exec = Execution::Parallel);
/// Fraction of user-trials whose NE loss meets epsilon.
ExperimentOutput qos_feasibility(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);
/// AAR NE sum payoff against K.
ExperimentOutput aar_sum_payoff_vs_K(const ExperimentConfig& cfg,
                                     Execution exec = Execution::Parallel);
/// AAR NE sum payoff against cross gain, relative to the CAR q = 1 NE
/// Powers scored under the AAR model.
ExperimentOutput aar_gain_vs_crossgain(const ExperimentConfig& cfg,
                                       Execution exec = Execution::Parallel);

std::vector<std::string> experiment_names();
/// Dispatches by name (see experiment_names); throws ConfigError if unknown.
ExperimentOutput run_experiment(const std::string& name, const ExperimentConfig& cfg,
                                Execution exec = Execution::Parallel);

/// Empirical quantile (inverse CDF, no interpolation) of unsorted samples.
double empirical_quantile(std::vector<double> samples, double p);

}  // namespace eepc
