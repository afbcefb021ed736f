#pragma once

#include <functional>
#include <limits>

namespace eepc {

// Finite-buffer Bernoulli queue. Each slot a packet arrives with
// probability q; the head-of-line packet leaves with probability f (radio
// success). The queue length is a birth-death chain on {0..K} whose
// up/down ratio is the load ratio omega.

/// omega for q = 1 (the buffer never drains).
inline constexpr double kInfiniteLoad = std::numeric_limits<double>::infinity();

struct QueueParams {
  int buffer_size = 10;

  /// Throws ConfigError unless K >= 1.
  void validate() const;
};

/// omega = q(1-f) / ((1-q) f). kInfiniteLoad when q = 1 and f < 1; 0 when
/// q = 0 or f = 1. Throws DomainError when q = 1 and f = 0.
double load_ratio(double q, double f);

/// Stationary probability that the buffer is full:
/// omega^K / sum_{j=0..K} omega^j.
double full_buffer_prob(double omega, int buffer_size);

/// 1 - full_buffer_prob, without cancellation when the buffer is almost
/// always full.
double full_buffer_complement(double omega, int buffer_size);

/// Fraction of arriving packets lost: (1-f) * Pi.
double packet_loss(double q, double f, int buffer_size);

/// 1 - packet_loss, evaluated as (1 - Pi) + f Pi.
double delivered_fraction(double q, double f, int buffer_size);

/// Loss in the K -> infinity limit: 1 - f/q when q > f, else 0.
double loss_large_K(double q, double f);

/// Rate-control law of an adaptive-arrival source, held as its inverse:
/// the loss probability at which the source sends with probability q.
class AarSpec {
 public:
  using LossForRate = std::function<double(double)>;

  /// TCP-style g(Phi) = kappa / sqrt(Phi), i.e. loss(q) = kappa^2 / q^2.
  explicit AarSpec(double kappa);

  /// General decreasing convex inverse; checked by finite differences on
  /// (0, 1] at construction. `kappa` is kept for reporting only.
  AarSpec(double kappa, LossForRate loss_for_rate);

  double kappa() const noexcept { return kappa_; }
  bool is_tcp_law() const noexcept { return !custom_; }
  double loss_for_rate(double q) const;

 private:
  double kappa_;
  LossForRate custom_;
};

struct AarRate {
  double q = 0.0;
  bool clamped = false;   // rate-control curve exceeds 1 everywhere: q pinned to 1
  double residual = 0.0;  // |Phi(q) - loss_for_rate(q)|
};

/// Operating arrival probability of an AAR source over a link with success
/// probability f and buffer K. Bisection on Phi(q) - loss_for_rate(q),
/// which is increasing in q. Throws DomainError for f = 0.
AarRate aar_arrival_rate(double f, int buffer_size, const AarSpec& spec,
                         double tolerance = 1e-10);

/// Closed-form large-buffer rate for the TCP law,
/// f (1 + sqrt(1 + 4 (kappa/f)^2)) / 2, clamped to 1.
AarRate aar_rate_large_K(double f, double kappa);

}  // namespace eepc
