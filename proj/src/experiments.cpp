#include "eepc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "eepc/errors.hpp"
#include "eepc/rng.hpp"
#include "eepc/social.hpp"

namespace eepc {

const Table& ExperimentOutput::side(const std::string& name) const {
  for (const auto& [n, t] : extra) {
    if (n == name) return t;
  }
  throw std::out_of_range("no side table named '" + name + "'");
}

double empirical_quantile(std::vector<double> samples, double p) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(samples.begin(), samples.end());
  const double rank = std::ceil(p * static_cast<double>(samples.size()));
  const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(samples.size())));
  return samples[k - 1];
}

EeCurve ee_curve(const GameConfig& cfg, std::size_t i, std::size_t grid,
                 const PowerProfile& others) {
  if (grid < 100) throw ConfigError("EE curve grid must be >= 100");
  if (i >= cfg.users()) throw ConfigError("EE curve user index out of range");
  if (others.size() != cfg.users()) throw ConfigError("profile size does not match channel");
  const double slope = cfg.channel.interference_slope(others, i);
  const double pmax = cfg.max_power();
  EeCurve curve;
  curve.max_efficiency = -1.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const double p = k + 1 == grid ? pmax : pmax * static_cast<double>(k) / static_cast<double>(grid - 1);
    const double eta = evaluate_link(cfg.link, p, p * slope, ZeroPower::Limit).efficiency;
    curve.power.push_back(p);
    curve.efficiency.push_back(eta);
    if (eta > curve.max_efficiency) {
      curve.max_efficiency = eta;
      curve.argmax_power = p;
    }
  }
  return curve;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  double series_label = kNaN;
  double label = 0.0;
  ExperimentConfig cfg;
};

struct Sample {
  bool converged = true;
  bool excluded = false;  // trial not applicable (e.g. target unreachable)
  std::vector<double> metrics;
};

using Evaluator = std::function<Sample(const Point&, const GameConfig&)>;

struct Grid {
  std::vector<Point> points;
  std::size_t trials = 1;
  std::vector<std::uint64_t> seeds;
  std::vector<Sample> samples;  // trial-major

  const Sample& at(std::size_t trial, std::size_t point) const {
    return samples[trial * points.size() + point];
  }
};

std::string column_of(const ParameterAxis& axis) {
  return axis.decibel ? axis.param + "_db" : axis.param;
}

// Uses `fallback` when the config sweeps nothing; otherwise insists on `param`.
ParameterAxis require_axis(const ExperimentConfig& cfg, const std::string& experiment,
                           const std::string& param, std::vector<double> fallback) {
  if (cfg.sweep.axis.param.empty()) {
    ParameterAxis axis{param, fallback, fallback, false};
    return axis;
  }
  if (!param.empty() && cfg.sweep.axis.param != param) {
    throw ConfigError("experiment " + experiment + " sweeps " + param + ", not " +
                      cfg.sweep.axis.param);
  }
  return cfg.sweep.axis;
}

std::vector<double> q_grid() {
  std::vector<double> q;
  for (int k = 1; k <= 20; ++k) q.push_back(k / 20.0);
  return q;
}

void require_car(const ExperimentConfig& cfg, const std::string& experiment) {
  if (!is_car(cfg.link.protocol)) throw ConfigError("experiment " + experiment + " needs protocol car");
}

std::vector<Point> expand(const ExperimentConfig& cfg, const ParameterAxis& axis) {
  std::vector<Point> points;
  const auto add_axis = [&](const ExperimentConfig& base, double series_label) {
    for (std::size_t k = 0; k < axis.values.size(); ++k) {
      points.push_back({series_label, axis.labels[k], with_parameter(base, axis.param, axis.values[k])});
    }
  };
  if (cfg.sweep.series) {
    const ParameterAxis& s = *cfg.sweep.series;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      add_axis(with_parameter(cfg, s.param, s.values[k]), s.labels[k]);
    }
  } else {
    add_axis(cfg, kNaN);
  }
  return points;
}

// Every (trial, point) pair is an independent work item. A trial's channel
// depends only on its derived seed and the point's (mean) gains, so all
// points of one trial see the same fading draw.
Grid evaluate(const ExperimentConfig& cfg, const ParameterAxis& axis, const Evaluator& fn,
              Execution exec) {
  Grid grid;
  grid.points = expand(cfg, axis);
  const bool fading = cfg.channel.kind == ChannelKind::Fading;
  grid.trials = fading ? cfg.sweep.trials : 1;
  for (std::size_t t = 0; t < grid.trials; ++t) grid.seeds.push_back(derive_seed(cfg.sweep.seed, t));
  const std::size_t np = grid.points.size();
  grid.samples = map_indexed<Sample>(
      grid.trials * np,
      [&](std::size_t idx) {
        const std::size_t t = idx / np;
        const Point& point = grid.points[idx % np];
        const ChannelMatrix mean = point.cfg.channel_matrix();
        const ChannelMatrix channel = fading ? sample_rayleigh_channel(mean, grid.seeds[t]) : mean;
        return fn(point, point.cfg.game(channel));
      },
      exec);
  return grid;
}

std::size_t count_nonconverged(const Grid& grid) {
  std::size_t n = 0;
  for (const Sample& s : grid.samples) n += s.converged ? 0 : 1;
  return n;
}

std::size_t count_excluded(const Grid& grid) {
  std::size_t n = 0;
  for (const Sample& s : grid.samples) n += s.excluded ? 1 : 0;
  return n;
}

void stamp(Table& t, const ExperimentConfig& cfg, const std::string& name, const Grid& grid) {
  t.set_meta("experiment", name);
  t.set_meta("config_hash", config_hash(cfg));
  t.set_meta("seed", std::to_string(cfg.sweep.seed));
  t.set_meta("trials", std::to_string(grid.trials));
  t.set_meta("nonconverged", std::to_string(count_nonconverged(grid)));
  t.set_meta("excluded", std::to_string(count_excluded(grid)));
}

std::vector<std::string> point_columns(const ExperimentConfig& cfg, const ParameterAxis& axis) {
  std::vector<std::string> cols;
  if (cfg.sweep.series) cols.push_back(column_of(*cfg.sweep.series));
  cols.push_back(column_of(axis));
  return cols;
}

std::vector<Cell> point_cells(const ExperimentConfig& cfg, const Point& p) {
  std::vector<Cell> cells;
  if (cfg.sweep.series) cells.emplace_back(p.series_label);
  cells.emplace_back(p.label);
  return cells;
}

Table trials_table(const ExperimentConfig& cfg, const ParameterAxis& axis, const Grid& grid,
                   const std::vector<std::string>& metrics) {
  Table t;
  t.columns = point_columns(cfg, axis);
  for (const char* c : {"trial", "trial_seed", "converged"}) t.columns.emplace_back(c);
  t.columns.insert(t.columns.end(), metrics.begin(), metrics.end());
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    for (std::size_t tr = 0; tr < grid.trials; ++tr) {
      const Sample& s = grid.at(tr, k);
      std::vector<Cell> row = point_cells(cfg, grid.points[k]);
      row.emplace_back(static_cast<std::int64_t>(tr));
      row.emplace_back(std::to_string(grid.seeds[tr]));
      row.emplace_back(std::int64_t{s.converged ? 1 : 0});
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        row.emplace_back(s.converged && !s.excluded ? s.metrics[m] : kNaN);
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

struct PointSummary {
  std::vector<double> means;
  std::size_t used = 0;
  std::size_t nonconverged = 0;
};

PointSummary summarize(const Grid& grid, std::size_t point, std::size_t metric_count) {
  PointSummary s;
  s.means.assign(metric_count, 0.0);
  for (std::size_t t = 0; t < grid.trials; ++t) {
    const Sample& smp = grid.at(t, point);
    if (!smp.converged) {
      ++s.nonconverged;
      continue;
    }
    if (smp.excluded) continue;
    ++s.used;
    for (std::size_t m = 0; m < metric_count; ++m) s.means[m] += smp.metrics[m];
  }
  for (double& v : s.means) v = s.used ? v / static_cast<double>(s.used) : kNaN;
  return s;
}

using Derived = std::function<std::vector<double>(const std::vector<double>& means)>;

// Mean of every metric over usable trials, optional derived columns, then
// the trial counts.
ExperimentOutput summary_output(const ExperimentConfig& cfg, const std::string& name,
                                const ParameterAxis& axis, const Grid& grid,
                                const std::vector<std::string>& metrics,
                                const std::vector<std::string>& derived_names = {},
                                const Derived& derived = {}) {
  ExperimentOutput out;
  Table& t = out.table;
  t.columns = point_columns(cfg, axis);
  t.columns.insert(t.columns.end(), metrics.begin(), metrics.end());
  t.columns.insert(t.columns.end(), derived_names.begin(), derived_names.end());
  t.columns.emplace_back("trials_used");
  t.columns.emplace_back("nonconverged");
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    const PointSummary s = summarize(grid, k, metrics.size());
    std::vector<Cell> row = point_cells(cfg, grid.points[k]);
    for (double v : s.means) row.emplace_back(v);
    if (derived) {
      for (double v : derived(s.means)) row.emplace_back(v);
    }
    row.emplace_back(static_cast<std::int64_t>(s.used));
    row.emplace_back(static_cast<std::int64_t>(s.nonconverged));
    t.add_row(std::move(row));
  }
  out.nonconverged = count_nonconverged(grid);
  stamp(t, cfg, name, grid);
  Table trials = trials_table(cfg, axis, grid, metrics);
  stamp(trials, cfg, name, grid);
  out.extra.emplace_back("trials", std::move(trials));
  return out;
}

GameConfig with_protocol(const GameConfig& g, ProtocolConfig protocol) {
  LinkModel link = g.link;
  link.protocol = std::move(protocol);
  return GameConfig(g.channel, link, g.solver);
}

// The q -> 1 design of the full-buffer framework, on the exact q = 1 branch.
GameConfig full_buffer(const GameConfig& g) {
  const auto* car = std::get_if<CarProtocol>(&g.link.protocol);
  return with_protocol(g, CarProtocol{1.0, car ? car->epsilon : 1.0});
}

double mean_total_power(const PowerProfile& p, const GameConfig& g) {
  double total = 0.0;
  for (std::size_t i = 0; i < g.users(); ++i) {
    total += link_metrics(p, i, g, ZeroPower::Limit).total_power;
  }
  return total / static_cast<double>(g.users());
}

Sample nonconverged_sample(std::size_t metrics) {
  return {false, false, std::vector<double>(metrics, kNaN)};
}

double saving_pct(double proposed, double baseline) { return 100.0 * (1.0 - proposed / baseline); }

}  // namespace

ExperimentOutput ee_curve_sweep(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "ee-curve";
  const ParameterAxis axis = require_axis(cfg, name, "", {1.0});
  const std::vector<Point> points = expand(cfg, axis);
  const auto curves = map_indexed<EeCurve>(
      points.size(),
      [&](std::size_t k) {
        const GameConfig g = points[k].cfg.game();
        return ee_curve(g, 0, cfg.sweep.curve_grid, g.full_power());
      },
      exec);

  Grid grid;
  grid.points = points;
  grid.seeds = {derive_seed(cfg.sweep.seed, 0)};

  ExperimentOutput out;
  Table& t = out.table;
  t.columns = point_columns(cfg, axis);
  t.columns.emplace_back("p_mw");
  t.columns.emplace_back("eta");
  Table argmax;
  argmax.columns = point_columns(cfg, axis);
  for (const char* c : {"argmax_mw", "max_eta", "eta_at_pmax", "peak_to_pmax"}) {
    argmax.columns.emplace_back(c);
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    const EeCurve& c = curves[k];
    for (std::size_t j = 0; j < c.power.size(); ++j) {
      std::vector<Cell> row = point_cells(cfg, points[k]);
      row.emplace_back(c.power[j]);
      row.emplace_back(c.efficiency[j]);
      t.add_row(std::move(row));
    }
    std::vector<Cell> row = point_cells(cfg, points[k]);
    const double at_pmax = c.efficiency.back();
    row.emplace_back(c.argmax_power);
    row.emplace_back(c.max_efficiency);
    row.emplace_back(at_pmax);
    row.emplace_back(at_pmax > 0.0 ? c.max_efficiency / at_pmax : kNaN);
    argmax.add_row(std::move(row));
  }
  stamp(t, cfg, name, grid);
  stamp(argmax, cfg, name, grid);
  out.extra.emplace_back("argmax", std::move(argmax));
  return out;
}

ExperimentOutput power_gain_vs_q(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "power-gain-vs-q";
  require_car(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "q", q_grid());
  const std::vector<std::string> metrics = {"gain_db", "p_ne_mw", "p_full_buffer_mw"};
  const Grid grid = evaluate(
      cfg, axis,
      [&](const Point&, const GameConfig& g) {
        const NEResult ne = run_dynamics(g);
        const NEResult base = run_dynamics(full_buffer(g));
        if (!ne.converged || !base.converged) return nonconverged_sample(metrics.size());
        const double p = ne.final_profile[0];
        const double p1 = base.final_profile[0];
        return Sample{true, false, {10.0 * std::log10(p1 / p), p, p1}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, metrics);
}

namespace {

std::vector<std::string> poa_metrics() {
  return {"poa", "ne_sum", "opt_sum", "f_ne", "p_ne_mw", "p_opt_mw"};
}

Evaluator poa_evaluator(const ExperimentConfig& cfg) {
  return [&cfg](const Point&, const GameConfig& g) {
    const NEResult ne = run_dynamics(g);
    if (!ne.converged) return nonconverged_sample(poa_metrics().size());
    const PoaReport r = price_of_anarchy(g, ne, cfg.social.grid_per_dim, cfg.social.refine_rounds,
                                         Execution::Serial);
    const double f_ne = g.link.efficiency(sinr(ne.final_profile, g.channel, 0));
    return Sample{true, false,
                  {r.poa, r.ne_sum_payoff, r.opt_sum_payoff, f_ne, r.ne_profile[0],
                   r.opt_profile[0]}};
  };
}

}  // namespace

ExperimentOutput poa_vs_q(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "poa-vs-q";
  require_car(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "q", q_grid());
  const Grid grid = evaluate(cfg, axis, poa_evaluator(cfg), exec);
  return summary_output(cfg, name, axis, grid, poa_metrics());
}

ExperimentOutput poa_cdf(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "poa-cdf";
  require_car(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "q", {0.2, 0.8});
  const Grid grid = evaluate(cfg, axis, poa_evaluator(cfg), exec);

  ExperimentOutput out;
  Table& t = out.table;
  t.columns = point_columns(cfg, axis);
  for (const char* c : {"quantile", "poa", "trials_used", "nonconverged"}) t.columns.emplace_back(c);
  static constexpr double kQuantiles[] = {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 1.0};
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    std::vector<double> values;
    std::size_t nonconverged = 0;
    for (std::size_t tr = 0; tr < grid.trials; ++tr) {
      const Sample& s = grid.at(tr, k);
      if (!s.converged) {
        ++nonconverged;
      } else {
        values.push_back(s.metrics[0]);
      }
    }
    for (double p : kQuantiles) {
      std::vector<Cell> row = point_cells(cfg, grid.points[k]);
      row.emplace_back(p);
      row.emplace_back(empirical_quantile(values, p));
      row.emplace_back(static_cast<std::int64_t>(values.size()));
      row.emplace_back(static_cast<std::int64_t>(nonconverged));
      t.add_row(std::move(row));
    }
  }
  out.nonconverged = count_nonconverged(grid);
  stamp(t, cfg, name, grid);
  Table trials = trials_table(cfg, axis, grid, poa_metrics());
  stamp(trials, cfg, name, grid);
  out.extra.emplace_back("trials", std::move(trials));
  return out;
}

ExperimentOutput sum_payoff_vs_q(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "sum-payoff-vs-q";
  require_car(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "q", q_grid());
  const Grid grid = evaluate(
      cfg, axis,
      [](const Point&, const GameConfig& g) {
        const NEResult ne = run_dynamics(g);
        if (!ne.converged) return nonconverged_sample(1);
        return Sample{true, false, {sum_payoff(ne.final_profile, g)}};
      },
      exec);
  ExperimentOutput out = summary_output(cfg, name, axis, grid, {"sum_payoff"});

  Table argmax;
  if (cfg.sweep.series) argmax.columns.push_back(column_of(*cfg.sweep.series));
  argmax.columns.push_back("argmax_" + column_of(axis));
  argmax.columns.emplace_back("max_sum_payoff");
  const std::size_t per_series = axis.values.size();
  for (std::size_t start = 0; start < grid.points.size(); start += per_series) {
    std::size_t best = start;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = start; k < start + per_series; ++k) {
      const double v = out.table.number(k, "sum_payoff");
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    std::vector<Cell> row = point_cells(cfg, grid.points[best]);
    row.emplace_back(best_v);
    argmax.add_row(std::move(row));
  }
  stamp(argmax, cfg, name, grid);
  out.extra.emplace_back("argmax", std::move(argmax));
  return out;
}

ExperimentOutput energy_vs_b_against_full_buffer(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "energy-vs-b-full-buffer";
  require_car(cfg, name);
  const ParameterAxis axis =
      require_axis(cfg, name, "b", {0.0, 500.0, 1000.0, 2000.0, 3000.0, 4000.0});
  const std::vector<std::string> metrics = {"proposed_mw", "baseline_mw"};
  const Grid grid = evaluate(
      cfg, axis,
      [&](const Point&, const GameConfig& g) {
        const NEResult ne = run_dynamics(g);
        const NEResult base = run_dynamics(full_buffer(g));
        if (!ne.converged || !base.converged) return nonconverged_sample(metrics.size());
        return Sample{true, false,
                      {mean_total_power(ne.final_profile, g), mean_total_power(base.final_profile, g)}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, metrics, {"saving_pct"},
                        [](const std::vector<double>& m) {
                          return std::vector<double>{saving_pct(m[0], m[1])};
                        });
}

ExperimentOutput energy_vs_b_against_sinr_target(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "energy-vs-b-sinr-target";
  require_car(cfg, name);
  if (cfg.n != 1) throw ConfigError("experiment " + name + " is single-user (n = 1)");
  const ParameterAxis axis =
      require_axis(cfg, name, "b", {0.0, 500.0, 1000.0, 2000.0, 3000.0, 4000.0});
  const double target = std::pow(10.0, cfg.sweep.target_sinr_db / 10.0);
  const std::vector<std::string> metrics = {"proposed_mw", "baseline_mw", "p_proposed_mw",
                                            "p_baseline_mw", "ee_optimum_meets_target"};
  const Grid grid = evaluate(
      cfg, axis,
      [&](const Point&, const GameConfig& g) {
        const double p_target = g.channel.noise_variance() * target / g.channel.gain(0, 0);
        if (p_target > g.max_power()) {
          return Sample{true, true, std::vector<double>(metrics.size(), kNaN)};
        }
        const NEResult ne = run_dynamics(g);
        if (!ne.converged) return nonconverged_sample(metrics.size());
        const double p_ee = ne.final_profile[0];
        const double p = std::min(std::max(p_ee, p_target), g.max_power());
        const double proposed = mean_total_power(PowerProfile(1, p), g);
        const double baseline = mean_total_power(PowerProfile(1, p_target), g);
        return Sample{true, false, {proposed, baseline, p, p_target, p_ee >= p_target ? 1.0 : 0.0}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, metrics, {"saving_pct"},
                        [](const std::vector<double>& m) {
                          return std::vector<double>{saving_pct(m[0], m[1])};
                        });
}

ExperimentOutput qos_feasibility(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "qos-feasibility";
  require_car(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "epsilon", {1.0, 0.1, 0.01});
  const Grid grid = evaluate(
      cfg, axis,
      [](const Point&, const GameConfig& g) {
        const NEResult ne = run_dynamics(g);
        if (!ne.converged) return nonconverged_sample(1);
        std::size_t met = 0;
        for (std::size_t i = 0; i < g.users(); ++i) {
          met += link_metrics(ne.final_profile, i, g, ZeroPower::Limit).qos_met ? 1 : 0;
        }
        return Sample{true, false, {static_cast<double>(met) / static_cast<double>(g.users())}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, {"p_met"});
}

namespace {

void require_aar(const ExperimentConfig& cfg, const std::string& experiment) {
  if (is_car(cfg.link.protocol)) throw ConfigError("experiment " + experiment + " needs protocol aar");
}

}  // namespace

ExperimentOutput aar_sum_payoff_vs_K(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "aar-sum-payoff-vs-k";
  require_aar(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "K", {1, 2, 5, 10, 20, 50});
  const Grid grid = evaluate(
      cfg, axis,
      [](const Point&, const GameConfig& g) {
        const NEResult ne = run_dynamics(g);
        if (!ne.converged) return nonconverged_sample(2);
        return Sample{true, false, {sum_payoff(ne.final_profile, g), ne.final_profile[0]}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, {"sum_payoff", "p_ne_mw"});
}

ExperimentOutput aar_gain_vs_crossgain(const ExperimentConfig& cfg, Execution exec) {
  const std::string name = "aar-gain-vs-crossgain";
  require_aar(cfg, name);
  const ParameterAxis axis = require_axis(cfg, name, "cross_gain", {0.001, 0.01, 0.1, 0.5, 1.0});
  const Grid grid = evaluate(
      cfg, axis,
      [](const Point&, const GameConfig& g) {
        // The baseline picks powers as if q = 1 but is scored under AAR traffic.
        const NEResult ne = run_dynamics(g);
        const NEResult base = run_dynamics(with_protocol(g, CarProtocol{1.0, 1.0}));
        if (!ne.converged || !base.converged) return nonconverged_sample(2);
        return Sample{true, false,
                      {sum_payoff(ne.final_profile, g), sum_payoff(base.final_profile, g)}};
      },
      exec);
  return summary_output(cfg, name, axis, grid, {"aar_sum", "full_buffer_sum"}, {"gain_pct"},
                        [](const std::vector<double>& m) {
                          return std::vector<double>{100.0 * (m[0] / m[1] - 1.0)};
                        });
}

namespace {

using Driver = ExperimentOutput (*)(const ExperimentConfig&, Execution);

struct NamedDriver {
  const char* name;
  Driver fn;
};

constexpr NamedDriver kDrivers[] = {
    {"ee-curve", ee_curve_sweep},
    {"power-gain-vs-q", power_gain_vs_q},
    {"poa-vs-q", poa_vs_q},
    {"poa-cdf", poa_cdf},
    {"sum-payoff-vs-q", sum_payoff_vs_q},
    {"energy-vs-b-full-buffer", energy_vs_b_against_full_buffer},
    {"energy-vs-b-sinr-target", energy_vs_b_against_sinr_target},
    {"qos-feasibility", qos_feasibility},
    {"aar-sum-payoff-vs-k", aar_sum_payoff_vs_K},
    {"aar-gain-vs-crossgain", aar_gain_vs_crossgain},
};

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& d : kDrivers) names.emplace_back(d.name);
  return names;
}

ExperimentOutput run_experiment(const std::string& name, const ExperimentConfig& cfg,
                                Execution exec) {
  for (const auto& d : kDrivers) {
    if (name == d.name) return d.fn(cfg, exec);
  }
  std::string known;
  for (const auto& d : kDrivers) known += std::string(known.empty() ? "" : ", ") + d.name;
  throw ConfigError("unknown experiment '" + name + "' (known: " + known + ")");
}

}  // namespace eepc
