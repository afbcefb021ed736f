#include "oracles.hpp"

#include <cmath>
#include <random>

namespace oracle {

double full_buffer_prob(double omega, int k) {
  if (std::isinf(omega)) return 1.0;
  if (omega == 0.0) return 0.0;
  const long double w = omega;
  // Divide numerator and denominator by max(1, w)^K.
  long double sum = 0.0L;
  if (w <= 1.0L) {
    long double term = 1.0L;
    for (int j = 0; j <= k; ++j) {
      sum += term;
      term *= w;
    }
    return static_cast<double>(std::pow(w, static_cast<long double>(k)) / sum);
  }
  const long double inv = 1.0L / w;
  long double term = 1.0L;
  for (int j = 0; j <= k; ++j) {
    sum += term;
    term *= inv;
  }
  return static_cast<double>(1.0L / sum);
}

double packet_loss(double q, double f, int k) {
  if (f == 1.0 || q == 0.0) return 0.0;
  const double omega = q == 1.0 ? INFINITY : q * (1.0 - f) / ((1.0 - q) * f);
  return (1.0 - f) * full_buffer_prob(omega, k);
}

QueueSim simulate_queue(double q, double f, int k, std::uint64_t slots, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int queue = 0;
  std::uint64_t full = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t lost = 0;
  for (std::uint64_t t = 0; t < slots; ++t) {
    const bool arrival = u(gen) < q;
    const bool success = u(gen) < f;
    if (queue == k) ++full;
    if (arrival) {
      ++arrivals;
      if (queue == k) {
        // Full: the packet gets in only if this slot's transmission frees a place.
        if (!success) ++lost;
      } else {
        // Arrival joins first, then the head of line is transmitted.
        if (!success) ++queue;
      }
    } else if (success && queue > 0) {
      --queue;
    }
  }
  QueueSim r;
  r.full_fraction = static_cast<double>(full) / static_cast<double>(slots);
  r.loss_fraction = arrivals ? static_cast<double>(lost) / static_cast<double>(arrivals) : 0.0;
  return r;
}

double aar_rate_closed_form(double f, double kappa) {
  return f * (1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa / (f * f))) / 2.0;
}

double aar_fixed_point(double f, int k, double kappa) {
  const auto F = [&](double q) { return packet_loss(q, f, k) - kappa * kappa / (q * q); };
  if (F(1.0) < 0.0) return 1.0;
  double lo = 1e-9;
  double hi = 1.0;
  for (int it = 0; it < 300 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double closed_form_best_response(double c, double g, double b) {
  return (c + std::sqrt(c * c + 4.0 * g * c * b)) / (2.0 * g);
}

Scan scan_max(const std::function<double(double)>& fn, double lo, double hi, std::size_t n) {
  Scan best{lo, fn(lo)};
  for (std::size_t j = 1; j < n; ++j) {
    const double x = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
    const double v = fn(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

double packet_length_inflection(int m) {
  if (m == 1) return 0.0;
  const auto f = [m](double x) { return std::pow(1.0 - std::exp(-x), m); };
  const auto curvature = [&](double x) {
    const double h = 1e-4 * (1.0 + x);
    return f(x + h) - 2.0 * f(x) + f(x - h);
  };
  double lo = 1e-3;
  double hi = 50.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (curvature(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// 1 - Phi = (sum_{j<K} w^j + f w^K) / sum_{j<=K} w^j, free of cancellation.
double delivered_fraction(double q, double f, int k) {
  if (f == 1.0 || q == 0.0) return 1.0;
  if (q == 1.0) return f;
  const long double w = q * (1.0 - f) / ((1.0 - q) * f);
  long double tail = 0.0L;
  if (w <= 1.0L) {
    long double term = 1.0L;
    for (int j = 0; j < k; ++j) {
      tail += term;
      term *= w;
    }
    return static_cast<double>((tail + f * term) / (tail + term));
  }
  // Divided through by w^K: sum_{i=1..K} w^-i.
  long double term = 1.0L / w;
  for (int i = 1; i <= k; ++i) {
    tail += term;
    term /= w;
  }
  return static_cast<double>((tail + f) / (1.0L + tail));
}

double energy_efficiency(double rate, double b, double p, double q, double f, int k) {
  if (p == 0.0) return 0.0;
  const double delivered = q * delivered_fraction(q, f, k);
  return rate * delivered / (b + p * delivered / f);
}

}  // namespace oracle
