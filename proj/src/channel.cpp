#include "eepc/channel.hpp"

#include <cmath>
#include <string>

#include "eepc/errors.hpp"
#include "eepc/rng.hpp"

namespace eepc {

PowerProfile PowerProfile::with(std::size_t i, double power) const {
  PowerProfile out = *this;
  out.powers_.at(i) = power;
  return out;
}

void PowerProfile::validate(double max_power) const {
  for (std::size_t i = 0; i < powers_.size(); ++i) {
    const double p = powers_[i];
    if (!(p >= 0.0 && p <= max_power)) {
      throw ConfigError("power of user " + std::to_string(i) + " = " + std::to_string(p) +
                        " mW outside [0, " + std::to_string(max_power) + "]");
    }
  }
}

ChannelMatrix::ChannelMatrix(std::size_t n, std::vector<double> gains_row_major,
                             double noise_variance)
    : n_(n), gains_(std::move(gains_row_major)), noise_variance_(noise_variance) {
  if (n_ == 0) throw ConfigError("channel must have at least one link");
  if (gains_.size() != n_ * n_) {
    throw ConfigError("channel gain matrix has " + std::to_string(gains_.size()) +
                      " entries, expected " + std::to_string(n_ * n_));
  }
  if (!(noise_variance_ > 0.0) || !std::isfinite(noise_variance_)) {
    throw ConfigError("noise variance must be positive");
  }
  for (std::size_t tx = 0; tx < n_; ++tx) {
    for (std::size_t rx = 0; rx < n_; ++rx) {
      const double g = gain(tx, rx);
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw ConfigError("channel gain g(" + std::to_string(tx) + "," + std::to_string(rx) +
                          ") must be finite and >= 0");
      }
      if (tx == rx && !(g > 0.0)) {
        throw ConfigError("direct gain g(" + std::to_string(tx) + "," + std::to_string(tx) +
                          ") must be > 0");
      }
    }
  }
}

ChannelMatrix ChannelMatrix::symmetric(std::size_t n, double direct, double cross,
                                       double noise_variance) {
  std::vector<double> g(n * n, cross);
  for (std::size_t i = 0; i < n; ++i) g[i * n + i] = direct;
  return ChannelMatrix(n, std::move(g), noise_variance);
}

double ChannelMatrix::interference_plus_noise(const PowerProfile& profile,
                                              std::size_t i) const {
  double total = noise_variance_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j != i) total += profile[j] * gain(j, i);
  }
  return total;
}

double ChannelMatrix::interference_slope(const PowerProfile& profile, std::size_t i) const {
  if (profile.size() != n_) {
    throw ConfigError("profile has " + std::to_string(profile.size()) +
                      " powers, channel has " + std::to_string(n_) + " links");
  }
  if (i >= n_) throw ConfigError("user index out of range");
  return gain(i, i) / interference_plus_noise(profile, i);
}

double sinr(const PowerProfile& profile, const ChannelMatrix& channel, std::size_t i) {
  const double slope = channel.interference_slope(profile, i);
  return profile[i] * slope;
}

ChannelMatrix sample_rayleigh_channel(std::size_t n, std::span<const double> mean_gains,
                                      double noise_variance, std::uint64_t seed) {
  if (mean_gains.size() != n * n) throw ConfigError("mean gain matrix must be n x n");
  Rng rng(seed);
  std::vector<double> g(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const double mean = mean_gains[k];
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
      throw ConfigError("mean channel gain must be finite and >= 0");
    }
    // Draw even for zero means so the stream position never depends on them.
    const double u = uniform_open01(rng);
    g[k] = mean == 0.0 ? 0.0 : -mean * std::log1p(-u);
  }
  return ChannelMatrix(n, std::move(g), noise_variance);
}

ChannelMatrix sample_rayleigh_channel(const ChannelMatrix& mean, std::uint64_t seed) {
  return sample_rayleigh_channel(mean.size(), mean.gains(), mean.noise_variance(), seed);
}

}  // namespace eepc
