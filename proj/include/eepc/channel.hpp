#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace eepc {

/// Radiated power of every transmitter, in mW.
class PowerProfile {
 public:
  PowerProfile() = default;
  explicit PowerProfile(std::vector<double> powers) : powers_(std::move(powers)) {}
  PowerProfile(std::initializer_list<double> powers) : powers_(powers) {}
  PowerProfile(std::size_t n, double value) : powers_(n, value) {}

  std::size_t size() const noexcept { return powers_.size(); }
  double operator[](std::size_t i) const { return powers_[i]; }
  double& operator[](std::size_t i) { return powers_[i]; }
  std::span<const double> values() const noexcept { return powers_; }
  const std::vector<double>& vector() const noexcept { return powers_; }

  /// Same profile with user `i` playing `power`.
  PowerProfile with(std::size_t i, double power) const;

  /// Throws ConfigError unless every entry lies in [0, max_power].
  void validate(double max_power) const;

  friend bool operator==(const PowerProfile&, const PowerProfile&) = default;

 private:
  std::vector<double> powers_;
};

/// Link power gains g(tx, rx) plus the receiver noise variance (mW).
/// Row = transmitter, column = receiver.
class ChannelMatrix {
 public:
  ChannelMatrix(std::size_t n, std::vector<double> gains_row_major,
                double noise_variance);

  /// Every direct gain equal to `direct`, every cross gain equal to `cross`.
  static ChannelMatrix symmetric(std::size_t n, double direct, double cross,
                                 double noise_variance);

  std::size_t size() const noexcept { return n_; }
  double gain(std::size_t tx, std::size_t rx) const { return gains_[tx * n_ + rx]; }
  double noise_variance() const noexcept { return noise_variance_; }
  std::span<const double> gains() const noexcept { return gains_; }

  /// sigma^2 + sum_{j != i} p_j g(j, i).
  double interference_plus_noise(const PowerProfile& profile, std::size_t i) const;

  /// d(sinr_i)/d(p_i) = g(i, i) / (sigma^2 + sum_{j != i} p_j g(j, i)). This
  /// is the quantity a transmitter recovers from SINR feedback as
  /// sinr_i / p_i, and it does not depend on p_i.
  double interference_slope(const PowerProfile& profile, std::size_t i) const;

  friend bool operator==(const ChannelMatrix&, const ChannelMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> gains_;
  double noise_variance_;
};

/// SINR of user i under `profile`.
double sinr(const PowerProfile& profile, const ChannelMatrix& channel, std::size_t i);

/// One block-Rayleigh realization: each power gain is exponential with the
/// given mean (a zero mean gives exactly zero). Deterministic in `seed`.
ChannelMatrix sample_rayleigh_channel(std::size_t n, std::span<const double> mean_gains,
                                      double noise_variance, std::uint64_t seed);

/// Same, taking the means (and noise variance) from a channel matrix.
ChannelMatrix sample_rayleigh_channel(const ChannelMatrix& mean, std::uint64_t seed);

}  // namespace eepc
