#include "eepc/efficiency.hpp"

#include <cmath>
#include <string>

#include "eepc/errors.hpp"
#include "eepc/game.hpp"

namespace eepc {

EfficiencyFunction EfficiencyFunction::exp_threshold(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("efficiency constant c must be > 0");
  return EfficiencyFunction(Kind::ExpThreshold, c);
}

EfficiencyFunction EfficiencyFunction::packet_length(int packet_bits) {
  if (packet_bits < 1) throw ConfigError("packet length M must be >= 1");
  return EfficiencyFunction(Kind::PacketLength, packet_bits);
}

EfficiencyFunction::EfficiencyFunction(Kind kind, double parameter)
    : kind_(kind), parameter_(parameter) {
  // f'' = 0 at c/2 for exp(-c/x) and at ln M for (1 - e^-x)^M.
  inflection_ = kind_ == Kind::ExpThreshold ? parameter_ / 2.0 : std::log(parameter_);
  check_sigmoid();
}

double EfficiencyFunction::operator()(double x) const noexcept {
  if (!(x > 0.0)) return 0.0;
  if (kind_ == Kind::ExpThreshold) return std::exp(-parameter_ / x);
  return std::pow(-std::expm1(-x), parameter_);
}

double EfficiencyFunction::derivative(double x) const noexcept {
  if (!(x > 0.0)) return kind_ == Kind::PacketLength && parameter_ == 1.0 ? 1.0 : 0.0;
  if (kind_ == Kind::ExpThreshold) return parameter_ / (x * x) * std::exp(-parameter_ / x);
  const double m = parameter_;
  return m * std::pow(-std::expm1(-x), m - 1.0) * std::exp(-x);
}

double EfficiencyFunction::second_derivative(double x) const noexcept {
  if (!(x > 0.0)) return 0.0;
  if (kind_ == Kind::ExpThreshold) {
    const double c = parameter_;
    return std::exp(-c / x) * (c * c / (x * x * x * x) - 2.0 * c / (x * x * x));
  }
  const double m = parameter_;
  const double e = std::exp(-x);
  if (m == 1.0) return -e;
  return m * e * std::pow(-std::expm1(-x), m - 2.0) * (m * e - 1.0);
}

void EfficiencyFunction::check_sigmoid() const {
  const double scale = inflection_ > 0.0 ? inflection_ : 1.0;
  for (int k = 0; k <= 200; ++k) {
    const double x = scale * std::pow(10.0, -2.0 + 4.0 * k / 200.0);
    if (std::abs(x - inflection_) < 0.02 * scale) continue;
    const double h = 1e-3 * x;
    const double d2 = (*this)(x + h) - 2.0 * (*this)(x) + (*this)(x - h);
    const bool below = x < inflection_;
    if ((below && d2 < -1e-12) || (!below && d2 > 1e-12)) {
      throw ConfigError("efficiency function is not sigmoidal around x = " + std::to_string(x));
    }
  }
}

void EnergyModel::validate() const {
  if (!(fixed_power_mw >= 0.0) || !std::isfinite(fixed_power_mw)) {
    throw ConfigError("fixed consumption b must be >= 0");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("gross rate R must be > 0");
  if (!(max_power_mw > 0.0) || !std::isfinite(max_power_mw)) {
    throw ConfigError("maximum power P_max must be > 0");
  }
}

void validate_protocol(const ProtocolConfig& protocol) {
  if (const auto* car = std::get_if<CarProtocol>(&protocol)) {
    if (!(car->q > 0.0 && car->q <= 1.0)) {
      throw ConfigError("CAR arrival probability q must lie in (0, 1] (q > 0 required)");
    }
    if (!(car->epsilon > 0.0 && car->epsilon <= 1.0)) {
      throw ConfigError("CAR loss bound epsilon must lie in (0, 1]");
    }
  }
}

void LinkModel::validate() const {
  energy.validate();
  validate_protocol(protocol);
  queue.validate();
  if (!(aar_tolerance > 0.0)) throw ConfigError("AAR residual tolerance must be > 0");
}

AarRate arrival_rate(const ProtocolConfig& protocol, double success, int buffer_size,
                     double aar_tolerance) {
  if (!(success > 0.0 && success <= 1.0)) {
    throw DomainError("arrival rate needs a success probability in (0, 1]");
  }
  if (const auto* car = std::get_if<CarProtocol>(&protocol)) return {car->q, false, 0.0};
  return aar_arrival_rate(success, buffer_size, std::get<AarProtocol>(protocol).spec,
                          aar_tolerance);
}

LinkMetrics evaluate_link(const LinkModel& model, double power, double sinr, ZeroPower zero) {
  const double b = model.energy.fixed_power_mw;
  if (power == 0.0 && b == 0.0 && zero == ZeroPower::Throw) {
    throw DomainError("energy efficiency undefined for p = 0 with b = 0");
  }
  const auto* car = std::get_if<CarProtocol>(&model.protocol);
  LinkMetrics m;
  m.success = model.efficiency(sinr);

  if (m.success == 0.0) {
    // Zero-power (or underflowed) limit: nothing gets through.
    m.arrival = car ? car->q : 0.0;
    m.loss = 1.0;
    m.total_power = b + power;
    m.qos_met = car ? m.loss <= car->epsilon : true;
    return m;
  }

  const int k = model.queue.buffer_size;
  const AarRate rate = arrival_rate(model.protocol, m.success, k, model.aar_tolerance);
  m.arrival = rate.q;
  m.arrival_clamped = rate.clamped;
  m.loss = packet_loss(rate.q, m.success, k);
  m.goodput = rate.q * delivered_fraction(rate.q, m.success, k);

  const double attempts = m.goodput / m.success;
  m.total_power = b + power * attempts;
  if (m.goodput > 0.0) m.efficiency = model.energy.rate * m.goodput / m.total_power;

  if (car) {
    m.fallback = model.energy.rate * m.goodput / (b + model.energy.max_power_mw);
    m.qos_met = m.loss <= car->epsilon;
    m.payoff = m.qos_met ? m.efficiency : m.fallback;
  } else {
    m.payoff = m.efficiency;
  }
  return m;
}

LinkMetrics link_metrics(const PowerProfile& profile, std::size_t i, const GameConfig& cfg,
                         ZeroPower zero) {
  return evaluate_link(cfg.link, profile[i], sinr(profile, cfg.channel, i), zero);
}

double energy_efficiency(const PowerProfile& profile, std::size_t i, const GameConfig& cfg) {
  return link_metrics(profile, i, cfg).efficiency;
}

double payoff(const PowerProfile& profile, std::size_t i, const GameConfig& cfg) {
  return link_metrics(profile, i, cfg).payoff;
}

double expected_total_power(const PowerProfile& profile, std::size_t i,
                            const GameConfig& cfg) {
  return link_metrics(profile, i, cfg).total_power;
}

}  // namespace eepc
