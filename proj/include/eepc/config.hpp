#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eepc/game.hpp"

namespace eepc {

enum class ChannelKind { Static, Fading };

/// Either a symmetric (direct, cross) pair or an explicit row-major matrix.
/// For fading channels the entries are mean power gains.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::Static;
  bool symmetric = true;
  double direct = 2.5;
  double cross = 0.5;
  std::vector<double> gains;
};

/// Names accepted by with_parameter: q, b, K, N, epsilon, kappa, cross_gain.
struct ParameterAxis {
  std::string param;
  std::vector<double> values;  // linear scale
  std::vector<double> labels;  // as written in the config (dB when decibel)
  bool decibel = false;        // values were given in dB; tables report dB
};

struct SweepSpec {
  std::string experiment;
  ParameterAxis axis;
  std::optional<ParameterAxis> series;  // optional outer parameter, e.g. N or K
  std::size_t trials = 1000;            // per point, fading channels only
  std::uint64_t seed = 1;
  bool seed_given = false;
  double target_sinr_db = 25.0;
  std::size_t curve_grid = 1000;
};

struct SocialSearch {
  std::size_t grid_per_dim = 200;
  std::size_t refine_rounds = 3;
};

struct OutputSpec {
  std::string path;
  std::string format = "csv";
};

/// Everything one config file describes.
struct ExperimentConfig {
  std::size_t n = 2;
  ChannelSpec channel;
  double sigma2_mw = 1.0;
  LinkModel link;
  SolverSettings solver = default_solver(1000.0);
  SweepSpec sweep;
  SocialSearch social;
  OutputSpec output;

  /// Channel gains (static) or mean gains (fading) as a matrix.
  ChannelMatrix channel_matrix() const;
  /// The game on the configured gains; for a fading config, on the means.
  GameConfig game() const;
  GameConfig game(const ChannelMatrix& channel) const;
  void validate() const;
};

/// Parses YAML text. Errors are ConfigError carrying "<source>:<line>: <key>: ...".
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Copy of `cfg` with one parameter replaced. N rebuilds a symmetric channel;
/// cross_gain sets every off-diagonal (mean) gain.
ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& name,
                                double value);
bool is_sweep_parameter(const std::string& name);

/// Fully resolved config as JSON with a fixed key order.
std::string canonical_json(const ExperimentConfig& cfg);
/// FNV-1a 64 of canonical_json with the output section reset, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace eepc
