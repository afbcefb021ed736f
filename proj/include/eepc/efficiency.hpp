#pragma once

#include <cstddef>
#include <variant>

#include "eepc/channel.hpp"
#include "eepc/queueing.hpp"

namespace eepc {

/// Sigmoidal packet-success probability as a function of SINR.
class EfficiencyFunction {
 public:
  enum class Kind { ExpThreshold, PacketLength };

  /// f(x) = exp(-c / x).
  static EfficiencyFunction exp_threshold(double c);
  /// f(x) = (1 - exp(-x))^M.
  static EfficiencyFunction packet_length(int packet_bits);

  double operator()(double sinr) const noexcept;
  double derivative(double sinr) const noexcept;
  double second_derivative(double sinr) const noexcept;

  /// Inflection point: convex below, concave above.
  double inflection() const noexcept { return inflection_; }

  Kind kind() const noexcept { return kind_; }
  /// c for ExpThreshold, M for PacketLength.
  double parameter() const noexcept { return parameter_; }

 private:
  EfficiencyFunction(Kind kind, double parameter);
  void check_sigmoid() const;

  Kind kind_;
  double parameter_;
  double inflection_;
};

/// Affine consumption model P_total = p + b.
struct EnergyModel {
  double fixed_power_mw = 1000.0;  // b
  double rate = 1.0;               // R, gross rate
  double max_power_mw = 1000.0;    // P_max

  void validate() const;
};

/// Constant arrival rate with loss bound epsilon.
struct CarProtocol {
  double q = 1.0;
  double epsilon = 1.0;
};

/// Adaptive arrival rate driven by observed loss.
struct AarProtocol {
  AarSpec spec{0.1};
};

using ProtocolConfig = std::variant<CarProtocol, AarProtocol>;

void validate_protocol(const ProtocolConfig& protocol);
inline bool is_car(const ProtocolConfig& p) { return std::holds_alternative<CarProtocol>(p); }

/// Everything a single link's payoff depends on besides its SINR.
struct LinkModel {
  EfficiencyFunction efficiency = EfficiencyFunction::exp_threshold(1.0);
  EnergyModel energy;
  ProtocolConfig protocol = CarProtocol{};
  QueueParams queue;
  double aar_tolerance = 1e-10;

  void validate() const;
};

/// Per-link quantities at a given (power, SINR) operating point.
struct LinkMetrics {
  double success = 0.0;       // f(sinr)
  double arrival = 0.0;       // q
  double loss = 1.0;          // Phi
  double goodput = 0.0;       // q (1 - Phi), packets per slot
  double efficiency = 0.0;    // eta
  double fallback = 0.0;      // theta, CAR goodput over (b + P_max)
  double payoff = 0.0;        // u
  double total_power = 0.0;   // b + p q (1 - Phi) / f
  bool arrival_clamped = false;
  bool qos_met = true;
};

/// How p = 0 with b = 0 (eta = 0/0) is treated: an error, or the p -> 0+
/// limit of a sigmoidal efficiency, eta = 0.
enum class ZeroPower { Throw, Limit };

/// Throws DomainError when b = 0 and power = 0 unless `zero` is Limit.
LinkMetrics evaluate_link(const LinkModel& model, double power, double sinr,
                          ZeroPower zero = ZeroPower::Throw);

/// Arrival probability the protocol produces at success probability f.
AarRate arrival_rate(const ProtocolConfig& protocol, double success, int buffer_size,
                     double aar_tolerance = 1e-10);

struct GameConfig;

/// Link metrics of user i under `profile`.
LinkMetrics link_metrics(const PowerProfile& profile, std::size_t i, const GameConfig& cfg,
                         ZeroPower zero = ZeroPower::Throw);

/// Cross-layer energy efficiency of user i (bit/s per mW).
double energy_efficiency(const PowerProfile& profile, std::size_t i, const GameConfig& cfg);
/// Game payoff of user i: eta, or theta when a CAR loss bound is violated.
double payoff(const PowerProfile& profile, std::size_t i, const GameConfig& cfg);
/// Expected consumed power of user i (mW).
double expected_total_power(const PowerProfile& profile, std::size_t i,
                            const GameConfig& cfg);

}  // namespace eepc
