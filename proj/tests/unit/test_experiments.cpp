#include <cmath>
#include <string>

#include "doctest.h"
#include "eepc/errors.hpp"
#include "eepc/experiments.hpp"
#include "eepc/rng.hpp"

using namespace eepc;

namespace {

ExperimentConfig config(const std::string& text) { return parse_config(text, "test.cfg"); }

const char* kSmallFading = R"(
channel:
  kind: fading
  direct: 2.5
  cross: 0.5
sweep:
  param: q
  values: [0.2, 0.6, 1.0]
  trials: 12
  seed: 17
)";

std::string meta(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.metadata) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("empirical quantile is the inverse CDF without interpolation") {
  const std::vector<double> s = {3.0, 1.0, 2.0, 4.0};
  CHECK(empirical_quantile(s, 0.0) == 1.0);
  CHECK(empirical_quantile(s, 0.25) == 1.0);
  CHECK(empirical_quantile(s, 0.26) == 2.0);
  CHECK(empirical_quantile(s, 0.5) == 2.0);
  CHECK(empirical_quantile(s, 1.0) == 4.0);
  CHECK(std::isnan(empirical_quantile({}, 0.5)));
}

TEST_CASE("ee curve: b = 0 and q = 1 reduce to R f / p") {
  LinkModel link;
  link.protocol = CarProtocol{1.0, 1.0};
  link.energy.fixed_power_mw = 0.0;
  const GameConfig g(ChannelMatrix(1, {2.5}, 1.0), link);
  const EeCurve c = ee_curve(g, 0, 101, g.full_power());
  REQUIRE(c.power.size() == 101);
  CHECK(c.power.front() == 0.0);
  CHECK(c.power.back() == 1000.0);
  CHECK(c.efficiency.front() == 0.0);
  for (std::size_t k = 1; k < c.power.size(); ++k) {
    const double p = c.power[k];
    CHECK(c.efficiency[k] == doctest::Approx(std::exp(-1.0 / (2.5 * p)) / p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ee_curve(g, 0, 99, g.full_power()), ConfigError);
}

TEST_CASE("ee curve sweep: lower q moves the peak down, larger b flattens it") {
  const ExperimentOutput out = ee_curve_sweep(config(R"(
n: 1
sweep:
  series: {param: b, values: [0, 1000, 4000]}
  param: q
  values: [1.0, 0.6]
)"));
  const Table& a = out.side("argmax");
  REQUIRE(a.rows.size() == 6);
  CHECK(a.number(3, "argmax_mw") < a.number(2, "argmax_mw"));
  CHECK(a.number(2, "peak_to_pmax") < a.number(0, "peak_to_pmax"));
  CHECK(a.number(4, "peak_to_pmax") < a.number(2, "peak_to_pmax"));
  CHECK(out.table.rows.size() == 6 * 1000);
}

TEST_CASE("power gain: zero at q = 1 and non-increasing in q") {
  const ExperimentOutput out = power_gain_vs_q(config(R"(
sweep:
  param: q
  range: {from: 0.1, to: 1.0, step: 0.1}
)"));
  const Table& t = out.table;
  REQUIRE(t.rows.size() == 10);
  CHECK(t.number(9, "gain_db") == 0.0);
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    CHECK(t.number(k, "gain_db") <= t.number(k - 1, "gain_db") + 1e-9);
  }
  CHECK(meta(t, "experiment") == "power-gain-vs-q");
  CHECK(meta(t, "trials") == "1");
  CHECK(meta(t, "nonconverged") == "0");
}

TEST_CASE("fading runs are deterministic and identical serial and parallel") {
  const ExperimentConfig cfg = config(kSmallFading);
  const ExperimentOutput a = power_gain_vs_q(cfg, Execution::Parallel);
  const ExperimentOutput b = power_gain_vs_q(cfg, Execution::Parallel);
  const ExperimentOutput s = power_gain_vs_q(cfg, Execution::Serial);
  CHECK(to_csv(a.table) == to_csv(b.table));
  CHECK(to_csv(a.table) == to_csv(s.table));
  CHECK(to_csv(a.side("trials")) == to_csv(s.side("trials")));
  CHECK(to_json(a.table) == to_json(s.table));

  ExperimentConfig other = cfg;
  other.sweep.seed = 18;
  CHECK(to_csv(power_gain_vs_q(other).table) != to_csv(a.table));
}

TEST_CASE("trial rows carry their derived seeds") {
  const ExperimentConfig cfg = config(kSmallFading);
  const ExperimentOutput out = qos_feasibility(config(R"(
channel: {kind: fading}
sweep:
  param: epsilon
  values: [1.0]
  trials: 5
  seed: 17
)"));
  const Table& t = out.side("trials");
  REQUIRE(t.rows.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(std::get<std::string>(t.rows[k][t.column_index("trial_seed")]) ==
          std::to_string(derive_seed(cfg.sweep.seed, k)));
  }
  CHECK(meta(out.table, "seed") == "17");
  CHECK(meta(out.table, "trials") == "5");
  CHECK(meta(out.table, "config_hash").size() == 16);
}

TEST_CASE("qos feasibility: vacuous bound always met, tighter bounds never help") {
  const ExperimentOutput out = qos_feasibility(config(R"(
n: 3
channel: {kind: fading, direct: 1.0, cross_db: -15}
protocol: {car: {q: 0.5, epsilon: 1.0}}
sweep:
  param: epsilon
  values_db: [0, -10, -20, -30]
  trials: 40
  seed: 3
)"));
  const Table& t = out.table;
  CHECK(t.columns[0] == "epsilon_db");
  CHECK(t.number(0, "p_met") == 1.0);
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    CHECK(t.number(k, "p_met") <= t.number(k - 1, "p_met"));
  }
}

TEST_CASE("energy against full buffer: no saving at q = 1") {
  const ExperimentOutput out = energy_vs_b_against_full_buffer(config(R"(
protocol: {car: {q: 1.0}}
sweep:
  param: b
  values: [100, 1000, 4000]
)"));
  for (std::size_t k = 0; k < 3; ++k) CHECK(out.table.number(k, "saving_pct") == 0.0);
}

TEST_CASE("energy against an SINR target") {
  const ExperimentOutput out = energy_vs_b_against_sinr_target(config(R"(
n: 1
protocol: {car: {q: 0.5}}
sweep:
  param: b
  values: [0, 1000, 4000]
  target_sinr_db: 25
)"));
  const Table& t = out.table;
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(t.number(k, "p_baseline_mw") == doctest::Approx(126.491106).epsilon(1e-8));
    CHECK(t.number(k, "p_proposed_mw") >= t.number(k, "p_baseline_mw"));
  }
  CHECK(t.number(2, "saving_pct") > t.number(1, "saving_pct") - 1e-9);
  CHECK_THROWS_AS(energy_vs_b_against_sinr_target(config("n: 2\n")), ConfigError);

  const ExperimentOutput unreachable = energy_vs_b_against_sinr_target(config(R"(
n: 1
channel: {direct: 0.1}
sweep: {param: b, values: [1000], target_sinr_db: 40}
)"));
  CHECK(meta(unreachable.table, "excluded") == "1");
  CHECK(unreachable.table.number(0, "trials_used") == 0.0);
}

TEST_CASE("PoA sweep: at least one everywhere") {
  const ExperimentOutput out = poa_vs_q(config(R"(
social: {grid_per_dim: 64, refine_rounds: 1}
sweep: {param: q, values: [0.2, 0.5, 0.9]}
)"));
  for (std::size_t k = 0; k < 3; ++k) CHECK(out.table.number(k, "poa") >= 1.0);
}

TEST_CASE("PoA CDF: quantiles are ordered") {
  const ExperimentOutput out = poa_cdf(config(R"(
channel: {kind: fading}
social: {grid_per_dim: 64, refine_rounds: 1}
sweep: {param: q, values: [0.2], trials: 8, seed: 5}
)"));
  const Table& t = out.table;
  REQUIRE(t.rows.size() == 9);
  for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.number(k, "poa") >= t.number(k - 1, "poa"));
  CHECK(t.number(0, "poa") >= 1.0);
  CHECK(t.number(0, "trials_used") == 8.0);
}

TEST_CASE("sum payoff sweep reports one argmax row per series value") {
  const ExperimentOutput out = sum_payoff_vs_q(config(R"(
sweep:
  series: {param: N, values: [2, 3]}
  param: q
  values: [0.05, 0.5, 1.0]
)"));
  const Table& a = out.side("argmax");
  REQUIRE(a.rows.size() == 2);
  CHECK(a.columns == std::vector<std::string>{"N", "argmax_q", "max_sum_payoff"});
  CHECK(out.table.number(0, "sum_payoff") < out.table.number(1, "sum_payoff"));
}

TEST_CASE("AAR sweeps") {
  const ExperimentOutput k = aar_sum_payoff_vs_K(config(R"(
protocol: {aar: {kappa: 0.1}}
sweep: {param: K, values: [10, 50]}
)"));
  const double s10 = k.table.number(0, "sum_payoff");
  const double s50 = k.table.number(1, "sum_payoff");
  CHECK(std::abs(s50 - s10) / s10 < 0.05);

  const ExperimentOutput g = aar_gain_vs_crossgain(config(R"(
protocol: {aar: {kappa: 0.1}}
channel: {direct: 1.0}
sweep: {param: cross_gain, values: [0.0001]}
)"));
  CHECK(g.table.number(0, "gain_pct") >= 0.0);
}

TEST_CASE("non-convergent trials are counted, not dropped") {
  ExperimentConfig cfg = config(R"(
channel: {cross: 0.9}
solver: {max_rounds: 1, delta: 1e-9}
sweep: {param: q, values: [0.5]}
)");
  const ExperimentOutput out = sum_payoff_vs_q(cfg);
  CHECK(out.nonconverged == 1);
  CHECK(meta(out.table, "nonconverged") == "1");
  CHECK(out.table.number(0, "nonconverged") == 1.0);
  CHECK(std::isnan(out.table.number(0, "sum_payoff")));
}

TEST_CASE("dispatch and protocol guards") {
  CHECK(experiment_names().size() == 10);
  for (const std::string& name : experiment_names()) CHECK(!name.empty());
  CHECK_THROWS_AS(run_experiment("nope", config("{}")), ConfigError);
  CHECK_THROWS_AS(run_experiment("aar-sum-payoff-vs-k", config("{}")), ConfigError);
  CHECK_THROWS_AS(run_experiment("poa-vs-q", config("protocol: {aar: {kappa: 0.1}}")), ConfigError);
  CHECK_THROWS_AS(run_experiment("poa-vs-q", config("sweep: {param: b, values: [1]}")), ConfigError);
}
