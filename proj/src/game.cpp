#include "eepc/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eepc/errors.hpp"

namespace eepc {

void SolverSettings::validate() const {
  if (!(delta_mw > 0.0)) throw ConfigError("solver delta must be > 0");
  if (max_rounds < 1) throw ConfigError("solver max_rounds must be >= 1");
  if (br_grid < 64) throw ConfigError("solver br_grid must be >= 64");
  if (!(br_refine_tol > 0.0 && br_refine_tol < 1.0)) {
    throw ConfigError("solver br_refine_tol must lie in (0, 1)");
  }
}

SolverSettings default_solver(double max_power_mw) {
  SolverSettings s;
  s.delta_mw = 1e-4 * max_power_mw;
  return s;
}

GameConfig::GameConfig(ChannelMatrix channel_, LinkModel link_, SolverSettings solver_)
    : channel(std::move(channel_)), link(std::move(link_)), solver(solver_) {
  validate();
}

void GameConfig::validate() const {
  link.validate();
  solver.validate();
}

namespace {

// User i's view of the game: its payoff depends on the others only through
// the interference slope g_ii / (sigma^2 + sum_{j != i} p_j g_ji).
struct LinkView {
  const LinkModel& model;
  double slope;

  LinkMetrics at(double power) const {
    return evaluate_link(model, power, power * slope, ZeroPower::Limit);
  }
  double efficiency(double power) const { return at(power).efficiency; }
};

LinkView view_of(std::size_t i, const PowerProfile& profile, const GameConfig& cfg) {
  return {cfg.link, cfg.channel.interference_slope(profile, i)};
}

QosPower qos_min_power(const LinkView& link, double max_power, double epsilon) {
  if (epsilon >= 1.0) return {0.0, true};
  if (link.at(max_power).loss > epsilon) return {max_power, false};
  // Loss is strictly decreasing in the power; loss(0) = 1 > epsilon.
  double lo = 0.0;
  double hi = max_power;
  while (hi - lo > 1e-13 * max_power) {
    const double mid = 0.5 * (lo + hi);
    if (link.at(mid).loss <= epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, true};
}

// Argmax of a quasi-concave function on [0, max_power]: coarse grid, then
// golden section inside the cells around the best grid point.
template <typename F>
double maximize_quasi_concave(F&& value, double max_power, std::size_t grid, double tol) {
  const double step = max_power / static_cast<double>(grid - 1);
  std::size_t best_k = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid; ++k) {
    const double v = value(step * static_cast<double>(k));
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }
  if (!(best_v > 0.0)) return max_power;  // identically zero: nothing to trade off

  double a = step * static_cast<double>(best_k == 0 ? 0 : best_k - 1);
  double b = best_k + 1 >= grid ? max_power : step * static_cast<double>(best_k + 1);
  double best_x = step * static_cast<double>(best_k);
  const auto consider = [&](double x, double v) {
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  };
  consider(a, value(a));
  consider(b, value(b));

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = value(x1);
  double f2 = value(x2);
  const double width = tol * max_power;
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = value(x1);
    }
  }
  consider(x1, f1);
  consider(x2, f2);
  const double mid = 0.5 * (a + b);
  consider(mid, value(mid));
  return best_x;
}

}  // namespace

QosPower qos_min_power(std::size_t i, const PowerProfile& profile, const GameConfig& cfg) {
  const auto* car = std::get_if<CarProtocol>(&cfg.link.protocol);
  if (!car) throw ProtocolMismatch("QoS minimum power is defined for CAR only");
  return qos_min_power(view_of(i, profile, cfg), cfg.max_power(), car->epsilon);
}

BestResponse best_response_detail(std::size_t i, const PowerProfile& profile,
                                  const GameConfig& cfg) {
  const LinkView link = view_of(i, profile, cfg);
  const double pmax = cfg.max_power();
  BestResponse br;
  br.unconstrained =
      maximize_quasi_concave([&](double p) { return link.efficiency(p); }, pmax,
                             cfg.solver.br_grid, cfg.solver.br_refine_tol);
  if (const auto* car = std::get_if<CarProtocol>(&cfg.link.protocol)) {
    const QosPower qos = qos_min_power(link, pmax, car->epsilon);
    br.qos_power = qos.power;
    br.qos_feasible = qos.feasible;
    br.power = std::min(std::max(br.unconstrained, qos.power), pmax);
  } else {
    br.power = std::min(br.unconstrained, pmax);
  }
  return br;
}

double best_response(std::size_t i, const PowerProfile& profile, const GameConfig& cfg) {
  return best_response_detail(i, profile, cfg).power;
}

NEResult run_dynamics(const GameConfig& cfg, const PowerProfile& initial,
                      std::span<const std::size_t> order) {
  const std::size_t n = cfg.users();
  if (initial.size() != n) throw ConfigError("initial profile size does not match channel");
  initial.validate(cfg.max_power());

  std::vector<std::size_t> sequence(order.begin(), order.end());
  if (sequence.empty()) {
    sequence.resize(n);
    std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  }
  {
    std::vector<std::size_t> sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < n; ++k) {
      if (sorted.size() != n || sorted[k] != k) {
        throw ConfigError("update order must be a permutation of the users");
      }
    }
  }

  NEResult result;
  result.qos_infeasible.assign(n, false);
  PowerProfile p = initial;
  const double tol = cfg.solver.delta_mw;
  double delta = 2.0 * tol;
  std::size_t rounds = 0;
  while (delta >= tol && rounds < cfg.solver.max_rounds) {
    const PowerProfile previous = p;
    for (const std::size_t i : sequence) {
      const BestResponse br = best_response_detail(i, p, cfg);
      p[i] = br.power;
      result.qos_infeasible[i] = !br.qos_feasible;
    }
    delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(p[i] - previous[i]));
    ++rounds;

    SweepRecord record{p, std::vector<double>(n), delta};
    for (std::size_t i = 0; i < n; ++i) {
      record.payoffs[i] = link_metrics(p, i, cfg, ZeroPower::Limit).payoff;
      if (!std::isfinite(record.payoffs[i])) {
        throw NumericalFailure("non-finite payoff for user " + std::to_string(i) +
                                   " in sweep " + std::to_string(rounds),
                               p.vector());
      }
    }
    result.trajectory.push_back(std::move(record));
  }

  result.final_profile = p;
  result.rounds_used = rounds;
  result.converged = delta < tol;
  result.payoffs = result.trajectory.empty() ? std::vector<double>(n, 0.0)
                                             : result.trajectory.back().payoffs;
  return result;
}

NEResult run_dynamics(const GameConfig& cfg) { return run_dynamics(cfg, cfg.full_power()); }

NashCheck verify_nash(const PowerProfile& profile, const GameConfig& cfg,
                      std::size_t dev_grid, double slack) {
  if (dev_grid < 1000) throw ConfigError("verify_nash needs dev_grid >= 1000");
  const double pmax = cfg.max_power();
  NashCheck check;
  check.worst_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.users(); ++i) {
    const LinkView link = view_of(i, profile, cfg);
    const double current = link.at(profile[i]).payoff;
    const double scale = std::abs(current) > 0.0 ? std::abs(current)
                                                 : std::numeric_limits<double>::min();
    for (std::size_t k = 0; k < dev_grid; ++k) {
      const double p = pmax * static_cast<double>(k) / static_cast<double>(dev_grid - 1);
      const double gain = (link.at(p).payoff - current) / scale;
      if (gain > check.worst_gain) {
        check.worst_gain = gain;
        check.worst_user = i;
        check.worst_power = p;
      }
    }
  }
  check.is_nash = check.worst_gain <= slack;
  return check;
}

double foc_residual(const PowerProfile& profile, std::size_t i, const GameConfig& cfg) {
  if (!is_car(cfg.link.protocol)) {
    throw ProtocolMismatch("first-order condition is implemented for CAR only");
  }
  const LinkView link = view_of(i, profile, cfg);
  const double p = profile[i];
  if (!(p > 0.0 && p < cfg.max_power())) {
    throw DomainError("first-order condition needs an interior power, got p = " +
                      std::to_string(p));
  }
  const double g = p * link.slope;
  const EfficiencyFunction& eff = cfg.link.efficiency;
  const double f = eff(g);
  if (!(f > 0.0)) throw DomainError("first-order condition undefined where f(sinr) = 0");

  // d(1/eta)/dp = (1/R) [ (f - f' g) / f^2 + C d(1/goodput)/dg ],
  // C = b g_ii / (sigma^2 + sum_{j != i} p_j g_ji).
  const double a_hat = (f - eff.derivative(g) * g) / (f * f);
  const double c = cfg.link.energy.fixed_power_mw * link.slope;
  const double h = 1e-6 * g;
  const auto inv_goodput = [&](double s) {
    return 1.0 / evaluate_link(cfg.link, p, s, ZeroPower::Limit).goodput;
  };
  const double b_hat = (inv_goodput(g + h) - inv_goodput(g - h)) / (2.0 * h);
  return -(a_hat + c * b_hat);
}

double sum_payoff(const PowerProfile& profile, const GameConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i < cfg.users(); ++i) {
    total += link_metrics(profile, i, cfg, ZeroPower::Limit).payoff;
  }
  return total;
}

}  // namespace eepc
