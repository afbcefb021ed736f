#include "eepc/queueing.hpp"

#include <cmath>
#include <string>

#include "eepc/errors.hpp"

namespace eepc {

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " = " + std::to_string(x) + " is not a probability");
  }
}

void check_buffer(int buffer_size) {
  if (buffer_size < 1) throw ConfigError("buffer size K must be >= 1");
}

}  // namespace

void QueueParams::validate() const { check_buffer(buffer_size); }

double load_ratio(double q, double f) {
  check_probability(q, "arrival probability q");
  check_probability(f, "success probability f");
  if (f == 1.0 || q == 0.0) return 0.0;
  if (q == 1.0) {
    if (f == 0.0) throw DomainError("load ratio undefined for q = 1 and f = 0");
    return kInfiniteLoad;
  }
  if (f == 0.0) return kInfiniteLoad;
  return q * (1.0 - f) / ((1.0 - q) * f);
}

// Both helpers use the closed geometric sums with expm1 so that omega close
// to 1 and large K stay accurate. For omega > 1 the sums are rewritten in
// r = 1/omega.
double full_buffer_prob(double omega, int buffer_size) {
  check_buffer(buffer_size);
  const double k = buffer_size;
  if (omega == 0.0) return 0.0;
  if (omega == kInfiniteLoad) return 1.0;
  if (omega == 1.0) return 1.0 / (k + 1.0);
  if (omega < 1.0) {
    const double lw = std::log(omega);
    return std::exp(k * lw) * (1.0 - omega) / -std::expm1((k + 1.0) * lw);
  }
  const double lr = -std::log(omega);
  return ((omega - 1.0) / omega) / -std::expm1((k + 1.0) * lr);
}

double full_buffer_complement(double omega, int buffer_size) {
  check_buffer(buffer_size);
  const double k = buffer_size;
  if (omega == 0.0) return 1.0;
  if (omega == kInfiniteLoad) return 0.0;
  if (omega == 1.0) return k / (k + 1.0);
  if (omega < 1.0) {
    const double lw = std::log(omega);
    return std::expm1(k * lw) / std::expm1((k + 1.0) * lw);
  }
  const double lr = -std::log(omega);
  return std::expm1(k * lr) / std::expm1((k + 1.0) * lr) / omega;
}

double packet_loss(double q, double f, int buffer_size) {
  return (1.0 - f) * full_buffer_prob(load_ratio(q, f), buffer_size);
}

double delivered_fraction(double q, double f, int buffer_size) {
  const double omega = load_ratio(q, f);
  const double pi = full_buffer_prob(omega, buffer_size);
  return full_buffer_complement(omega, buffer_size) + f * pi;
}

double loss_large_K(double q, double f) {
  check_probability(q, "arrival probability q");
  check_probability(f, "success probability f");
  if (f == 0.0) throw DomainError("large-buffer loss needs f > 0");
  return q > f ? 1.0 - f / q : 0.0;
}

AarSpec::AarSpec(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw ConfigError("AAR kappa must lie in (0, 1]");
}

AarSpec::AarSpec(double kappa, LossForRate loss_for_rate)
    : kappa_(kappa), custom_(std::move(loss_for_rate)) {
  if (!custom_) throw ConfigError("AAR rate-control inverse is empty");
  constexpr int kPoints = 400;
  const double h = 1.0 / kPoints;
  double prev2 = custom_(h);
  double prev1 = custom_(2 * h);
  if (!(prev1 <= prev2)) throw ConfigError("AAR rate-control inverse must be decreasing");
  for (int k = 3; k <= kPoints; ++k) {
    const double cur = custom_(k * h);
    if (!std::isfinite(cur)) throw ConfigError("AAR rate-control inverse is not finite");
    if (!(cur <= prev1)) throw ConfigError("AAR rate-control inverse must be decreasing");
    const double second = cur - 2.0 * prev1 + prev2;
    if (second < -1e-12 * (std::abs(cur) + std::abs(prev2) + 1.0)) {
      throw ConfigError("AAR rate-control inverse must be convex");
    }
    prev2 = prev1;
    prev1 = cur;
  }
}

double AarSpec::loss_for_rate(double q) const {
  if (custom_) return custom_(q);
  return kappa_ * kappa_ / (q * q);
}

AarRate aar_arrival_rate(double f, int buffer_size, const AarSpec& spec, double tolerance) {
  check_probability(f, "success probability f");
  check_buffer(buffer_size);
  if (f == 0.0) throw DomainError("AAR fixed point does not exist for f = 0");
  if (!(tolerance > 0.0)) throw ConfigError("AAR residual tolerance must be positive");

  const auto excess = [&](double q) {
    return packet_loss(q, f, buffer_size) - spec.loss_for_rate(q);
  };

  double lo = 1e-9;
  double hi = 1.0;
  const double f_hi = excess(hi);
  if (f_hi < 0.0) return {1.0, true, -f_hi};
  if (f_hi == 0.0) return {1.0, false, 0.0};
  double f_lo = excess(lo);
  if (f_lo >= 0.0) return {lo, false, f_lo};

  double best_q = hi;
  double best_res = f_hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = excess(mid);
    if (std::abs(fm) < best_res) {
      best_res = std::abs(fm);
      best_q = mid;
    }
    if (fm == 0.0) break;
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {best_q, false, best_res};
}

AarRate aar_rate_large_K(double f, double kappa) {
  check_probability(f, "success probability f");
  if (f == 0.0) throw DomainError("large-buffer AAR rate needs f > 0");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ConfigError("AAR kappa must lie in [0, 1]");
  const double ratio = kappa / f;
  const double q = f * (1.0 + std::sqrt(1.0 + 4.0 * ratio * ratio)) / 2.0;
  if (q > 1.0) return {1.0, true, 0.0};
  return {q, false, 0.0};
}

}  // namespace eepc
