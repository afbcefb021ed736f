#include "eepc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "eepc/errors.hpp"
#include "json.hpp"

namespace eepc {

ChannelMatrix ExperimentConfig::channel_matrix() const {
  if (channel.symmetric) return ChannelMatrix::symmetric(n, channel.direct, channel.cross, sigma2_mw);
  return ChannelMatrix(n, channel.gains, sigma2_mw);
}

GameConfig ExperimentConfig::game() const { return game(channel_matrix()); }

GameConfig ExperimentConfig::game(const ChannelMatrix& matrix) const {
  return GameConfig(matrix, link, solver);
}

void ExperimentConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!channel.symmetric && channel.gains.size() != n * n) {
    throw ConfigError("channel gains must be an n x n matrix");
  }
  (void)channel_matrix();
  link.validate();
  solver.validate();
  if (social.grid_per_dim < 64) throw ConfigError("social grid_per_dim must be >= 64");
  if (sweep.trials < 1) throw ConfigError("sweep trials must be >= 1");
  if (!sweep.axis.param.empty() && sweep.axis.values.empty()) {
    throw ConfigError("sweep values must be non-empty");
  }
  if (sweep.series && sweep.series->values.empty()) {
    throw ConfigError("sweep series values must be non-empty");
  }
  if (output.format != "csv" && output.format != "json") {
    throw ConfigError("output format must be csv or json");
  }
}

namespace {

constexpr const char* kSweepParameters[] = {"q", "b", "K", "N", "epsilon", "kappa", "cross_gain"};

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key,
                         const std::string& message) const {
    std::string where = source_;
    if (node.IsDefined()) where += ":" + std::to_string(node.Mark().line + 1);
    throw ConfigError(where + ": " + key + ": " + message);
  }

  // Runs `check` and re-throws model errors with the node's location.
  void guard(const YAML::Node& node, const std::string& key,
             const std::function<void()>& check) const {
    try {
      check();
    } catch (const ConfigError& e) {
      fail(node, key, e.what());
    } catch (const DomainError& e) {
      fail(node, key, e.what());
    }
  }

  void expect_map(const YAML::Node& node, const std::string& key,
                  std::initializer_list<const char*> allowed) const {
    if (!node.IsMap()) fail(node, key, "expected a mapping");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>();
      bool ok = false;
      for (const char* a : allowed) ok = ok || name == a;
      if (!ok) fail(kv.first, join(key, name), "unknown key");
    }
  }

  double number(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, key, "expected a finite number");
      return v;
    } catch (const YAML::Exception&) {
      fail(node, key, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  double number_or(const YAML::Node& parent, const std::string& prefix, const char* name,
                   double fallback) const {
    const YAML::Node node = parent[name];
    return node ? number(node, join(prefix, name)) : fallback;
  }

  std::uint64_t integer(const YAML::Node& node, const std::string& key, double min) const {
    const double v = number(node, key);
    if (v != std::floor(v) || v < min || v > 9.007199254740992e15) {
      fail(node, key, "expected an integer >= " + format(min));
    }
    return static_cast<std::uint64_t>(v);
  }

  std::uint64_t integer_or(const YAML::Node& parent, const std::string& prefix, const char* name,
                           double min, std::uint64_t fallback) const {
    const YAML::Node node = parent[name];
    return node ? integer(node, join(prefix, name), min) : fallback;
  }

  std::string text(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a string");
    return node.Scalar();
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence()) fail(node, key, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < node.size(); ++k) {
      out.push_back(number(node[k], key + "[" + std::to_string(k) + "]"));
    }
    return out;
  }

  static std::string join(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
  }

  static std::string format(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  }

 private:
  std::string source_;
};

double from_db(double db) { return std::pow(10.0, db / 10.0); }

void read_channel(const Reader& r, const YAML::Node& node, ExperimentConfig& cfg) {
  r.expect_map(node, "channel", {"kind", "direct", "cross", "cross_db", "gains"});
  ChannelSpec& ch = cfg.channel;
  if (const YAML::Node kind = node["kind"]) {
    const std::string k = r.text(kind, "channel.kind");
    if (k == "static") {
      ch.kind = ChannelKind::Static;
    } else if (k == "fading") {
      ch.kind = ChannelKind::Fading;
    } else {
      r.fail(kind, "channel.kind", "expected static or fading, got '" + k + "'");
    }
  }
  if (const YAML::Node gains = node["gains"]) {
    if (node["direct"] || node["cross"] || node["cross_db"]) {
      r.fail(gains, "channel.gains", "give either gains or direct/cross, not both");
    }
    if (!gains.IsSequence()) r.fail(gains, "channel.gains", "expected a list of rows");
    ch.symmetric = false;
    ch.gains.clear();
    for (std::size_t row = 0; row < gains.size(); ++row) {
      const auto values = r.numbers(gains[row], "channel.gains[" + std::to_string(row) + "]");
      if (values.size() != gains.size()) {
        r.fail(gains[row], "channel.gains", "matrix must be square");
      }
      ch.gains.insert(ch.gains.end(), values.begin(), values.end());
    }
    if (gains.size() != cfg.n) {
      r.fail(gains, "channel.gains",
             "matrix side " + std::to_string(gains.size()) + " does not match n = " +
                 std::to_string(cfg.n));
    }
  } else {
    ch.symmetric = true;
    ch.direct = r.number_or(node, "channel", "direct", ch.direct);
    if (node["cross"] && node["cross_db"]) {
      r.fail(node["cross_db"], "channel.cross_db", "give either cross or cross_db");
    }
    ch.cross = r.number_or(node, "channel", "cross", ch.cross);
    if (const YAML::Node db = node["cross_db"]) ch.cross = from_db(r.number(db, "channel.cross_db"));
  }
  r.guard(node, "channel", [&] { (void)cfg.channel_matrix(); });
}

void read_efficiency(const Reader& r, const YAML::Node& node, LinkModel& link) {
  r.expect_map(node, "efficiency", {"kind", "c", "M"});
  const std::string kind = node["kind"] ? r.text(node["kind"], "efficiency.kind") : "exp";
  if (kind == "exp") {
    if (node["M"]) r.fail(node["M"], "efficiency.M", "M applies to kind packet_length");
    const double c = r.number_or(node, "efficiency", "c", 1.0);
    r.guard(node["c"] ? node["c"] : node, "efficiency.c",
            [&] { link.efficiency = EfficiencyFunction::exp_threshold(c); });
  } else if (kind == "packet_length") {
    if (node["c"]) r.fail(node["c"], "efficiency.c", "c applies to kind exp");
    if (!node["M"]) r.fail(node, "efficiency.M", "required for kind packet_length");
    const auto m = r.integer(node["M"], "efficiency.M", 1);
    r.guard(node["M"], "efficiency.M", [&] {
      link.efficiency = EfficiencyFunction::packet_length(static_cast<int>(m));
    });
  } else {
    r.fail(node["kind"], "efficiency.kind", "expected exp or packet_length, got '" + kind + "'");
  }
}

void read_protocol(const Reader& r, const YAML::Node& node, LinkModel& link) {
  r.expect_map(node, "protocol", {"car", "aar"});
  if (node.size() != 1) r.fail(node, "protocol", "give exactly one of car or aar");
  if (const YAML::Node car = node["car"]) {
    const YAML::Node body = car.IsNull() ? YAML::Node(YAML::NodeType::Map) : car;
    r.expect_map(body, "protocol.car", {"q", "epsilon", "epsilon_db"});
    CarProtocol p;
    p.q = r.number_or(body, "protocol.car", "q", p.q);
    if (body["epsilon"] && body["epsilon_db"]) {
      r.fail(body["epsilon_db"], "protocol.car.epsilon_db", "give either epsilon or epsilon_db");
    }
    p.epsilon = r.number_or(body, "protocol.car", "epsilon", p.epsilon);
    if (const YAML::Node db = body["epsilon_db"]) {
      p.epsilon = from_db(r.number(db, "protocol.car.epsilon_db"));
    }
    r.guard(body["q"] ? body["q"] : car, "protocol.car.q", [&] {
      if (!(p.q > 0.0 && p.q <= 1.0)) validate_protocol(p);
    });
    const YAML::Node eps_node = body["epsilon"] ? body["epsilon"] : body["epsilon_db"];
    r.guard(eps_node ? eps_node : car, "protocol.car.epsilon", [&] { validate_protocol(p); });
    link.protocol = p;
  } else {
    const YAML::Node aar = node["aar"];
    const YAML::Node body = aar.IsNull() ? YAML::Node(YAML::NodeType::Map) : aar;
    r.expect_map(body, "protocol.aar", {"kappa"});
    const double kappa = r.number_or(body, "protocol.aar", "kappa", 0.1);
    r.guard(body["kappa"] ? body["kappa"] : aar, "protocol.aar.kappa",
            [&] { link.protocol = AarProtocol{AarSpec(kappa)}; });
  }
}

void read_solver(const Reader& r, const YAML::Node& node, ExperimentConfig& cfg) {
  r.expect_map(node, "solver", {"delta", "max_rounds", "br_grid", "br_refine_tol", "aar_tol"});
  SolverSettings& s = cfg.solver;
  s.delta_mw = r.number_or(node, "solver", "delta", s.delta_mw);
  s.max_rounds = r.integer_or(node, "solver", "max_rounds", 1, s.max_rounds);
  s.br_grid = r.integer_or(node, "solver", "br_grid", 0, s.br_grid);
  s.br_refine_tol = r.number_or(node, "solver", "br_refine_tol", s.br_refine_tol);
  cfg.link.aar_tolerance = r.number_or(node, "solver", "aar_tol", cfg.link.aar_tolerance);
  r.guard(node, "solver", [&] {
    s.validate();
    if (!(cfg.link.aar_tolerance > 0.0)) throw ConfigError("aar_tol must be > 0");
  });
}

// Rounds to 12 significant digits so 0.02 * 7 reads back as 0.14.
double snap(double v) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12).ptr;
  double out = v;
  std::from_chars(buf, end, out);
  return out;
}

ParameterAxis read_axis(const Reader& r, const YAML::Node& node, const std::string& key,
                        const std::string& param) {
  ParameterAxis axis;
  axis.param = param;
  const int given = (node["values"] ? 1 : 0) + (node["values_db"] ? 1 : 0) + (node["range"] ? 1 : 0);
  if (given != 1) r.fail(node, key, "give exactly one of values, values_db or range");
  if (const YAML::Node v = node["values"]) {
    axis.values = r.numbers(v, key + ".values");
    axis.labels = axis.values;
  } else if (const YAML::Node v = node["values_db"]) {
    axis.decibel = true;
    axis.labels = r.numbers(v, key + ".values_db");
    for (double db : axis.labels) axis.values.push_back(from_db(db));
  } else {
    const YAML::Node range = node["range"];
    r.expect_map(range, key + ".range", {"from", "to", "step"});
    for (const char* k : {"from", "to", "step"}) {
      if (!range[k]) r.fail(range, key + ".range." + k, "required");
    }
    const double from = r.number(range["from"], key + ".range.from");
    const double to = r.number(range["to"], key + ".range.to");
    const double step = r.number(range["step"], key + ".range.step");
    if (!(step > 0.0) || to < from) r.fail(range, key + ".range", "need step > 0 and to >= from");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      axis.values.push_back(snap(from + step * static_cast<double>(k)));
    }
    axis.labels = axis.values;
  }
  if (axis.values.empty()) r.fail(node, key, "value list must be non-empty");
  return axis;
}

void read_sweep(const Reader& r, const YAML::Node& node, ExperimentConfig& cfg) {
  r.expect_map(node, "sweep", {"experiment", "param", "values", "values_db", "range", "series",
                               "trials", "seed", "target_sinr_db", "curve_grid"});
  SweepSpec& s = cfg.sweep;
  if (node["experiment"]) s.experiment = r.text(node["experiment"], "sweep.experiment");
  if (const YAML::Node p = node["param"]) {
    const std::string param = r.text(p, "sweep.param");
    if (!is_sweep_parameter(param)) r.fail(p, "sweep.param", "unknown parameter '" + param + "'");
    s.axis = read_axis(r, node, "sweep", param);
  } else if (node["values"] || node["values_db"] || node["range"]) {
    r.fail(node, "sweep.param", "required when values are given");
  }
  if (const YAML::Node series = node["series"]) {
    r.expect_map(series, "sweep.series", {"param", "values", "values_db", "range"});
    if (!series["param"]) r.fail(series, "sweep.series.param", "required");
    const std::string param = r.text(series["param"], "sweep.series.param");
    if (!is_sweep_parameter(param)) {
      r.fail(series["param"], "sweep.series.param", "unknown parameter '" + param + "'");
    }
    s.series = read_axis(r, series, "sweep.series", param);
  }
  s.trials = r.integer_or(node, "sweep", "trials", 1, s.trials);
  if (const YAML::Node seed = node["seed"]) {
    s.seed = r.integer(seed, "sweep.seed", 0);
    s.seed_given = true;
  }
  s.target_sinr_db = r.number_or(node, "sweep", "target_sinr_db", s.target_sinr_db);
  s.curve_grid = r.integer_or(node, "sweep", "curve_grid", 100, s.curve_grid);
}

ExperimentConfig read_document(const Reader& r, const YAML::Node& root) {
  ExperimentConfig cfg;
  if (!root || root.IsNull()) return cfg;
  r.expect_map(root, "", {"n", "channel", "sigma2_mw", "pmax_mw", "b_mw", "rate_r", "efficiency",
                          "protocol", "buffer_k", "solver", "social", "sweep", "output"});
  cfg.n = r.integer_or(root, "", "n", 1, cfg.n);
  cfg.sigma2_mw = r.number_or(root, "", "sigma2_mw", cfg.sigma2_mw);
  if (!(cfg.sigma2_mw > 0.0)) r.fail(root["sigma2_mw"], "sigma2_mw", "noise variance must be > 0");

  EnergyModel& e = cfg.link.energy;
  e.max_power_mw = r.number_or(root, "", "pmax_mw", e.max_power_mw);
  e.fixed_power_mw = r.number_or(root, "", "b_mw", e.fixed_power_mw);
  e.rate = r.number_or(root, "", "rate_r", e.rate);
  r.guard(root["pmax_mw"] ? root["pmax_mw"] : root, "pmax_mw", [&] {
    if (!(e.max_power_mw > 0.0)) throw ConfigError("maximum power P_max must be > 0");
  });
  r.guard(root["b_mw"] ? root["b_mw"] : root, "b_mw", [&] {
    if (!(e.fixed_power_mw >= 0.0)) throw ConfigError("fixed consumption b must be >= 0");
  });
  r.guard(root["rate_r"] ? root["rate_r"] : root, "rate_r", [&] { e.validate(); });
  cfg.solver = default_solver(e.max_power_mw);

  if (const YAML::Node ch = root["channel"]) {
    read_channel(r, ch, cfg);
  } else {
    r.guard(root, "channel", [&] { (void)cfg.channel_matrix(); });
  }
  if (const YAML::Node eff = root["efficiency"]) read_efficiency(r, eff, cfg.link);
  if (const YAML::Node proto = root["protocol"]) read_protocol(r, proto, cfg.link);
  cfg.link.queue.buffer_size =
      static_cast<int>(r.integer_or(root, "", "buffer_k", 1, cfg.link.queue.buffer_size));
  if (cfg.link.queue.buffer_size > 100000000) {
    r.fail(root["buffer_k"], "buffer_k", "buffer size above 1e8 is not supported");
  }
  if (const YAML::Node solver = root["solver"]) read_solver(r, solver, cfg);

  if (const YAML::Node social = root["social"]) {
    r.expect_map(social, "social", {"grid_per_dim", "refine_rounds"});
    cfg.social.grid_per_dim = r.integer_or(social, "social", "grid_per_dim", 64, 200);
    cfg.social.refine_rounds = r.integer_or(social, "social", "refine_rounds", 0, 3);
  }
  if (const YAML::Node sweep = root["sweep"]) read_sweep(r, sweep, cfg);
  if (const YAML::Node out = root["output"]) {
    r.expect_map(out, "output", {"path", "format"});
    if (out["path"]) cfg.output.path = r.text(out["path"], "output.path");
    if (out["format"]) {
      cfg.output.format = r.text(out["format"], "output.format");
      if (cfg.output.format != "csv" && cfg.output.format != "json") {
        r.fail(out["format"], "output.format", "expected csv or json");
      }
    }
  }
  r.guard(root, "config", [&] { cfg.validate(); });
  return cfg;
}

}  // namespace

bool is_sweep_parameter(const std::string& name) {
  for (const char* p : kSweepParameters) {
    if (name == p) return true;
  }
  return false;
}

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  const Reader reader(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  try {
    return read_document(reader, root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& name,
                                double value) {
  ExperimentConfig out = cfg;
  auto* car = std::get_if<CarProtocol>(&out.link.protocol);
  if (name == "q" || name == "epsilon") {
    if (!car) throw ConfigError("sweep parameter '" + name + "' needs the CAR protocol");
    (name == "q" ? car->q : car->epsilon) = value;
  } else if (name == "b") {
    out.link.energy.fixed_power_mw = value;
  } else if (name == "K") {
    if (value != std::floor(value) || value < 1.0) throw ConfigError("K must be an integer >= 1");
    out.link.queue.buffer_size = static_cast<int>(value);
  } else if (name == "N") {
    if (value != std::floor(value) || value < 1.0) throw ConfigError("N must be an integer >= 1");
    if (!out.channel.symmetric) {
      throw ConfigError("sweeping N needs a symmetric (direct/cross) channel");
    }
    out.n = static_cast<std::size_t>(value);
  } else if (name == "kappa") {
    if (car) throw ConfigError("sweep parameter 'kappa' needs the AAR protocol");
    out.link.protocol = AarProtocol{AarSpec(value)};
  } else if (name == "cross_gain") {
    if (out.channel.symmetric) {
      out.channel.cross = value;
    } else {
      for (std::size_t tx = 0; tx < out.n; ++tx) {
        for (std::size_t rx = 0; rx < out.n; ++rx) {
          if (tx != rx) out.channel.gains[tx * out.n + rx] = value;
        }
      }
    }
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  out.validate();
  return out;
}

namespace {

nlohmann::ordered_json axis_json(const ParameterAxis& axis) {
  nlohmann::ordered_json j;
  j["param"] = axis.param;
  j["values"] = axis.values;
  j["labels"] = axis.labels;
  j["decibel"] = axis.decibel;
  return j;
}

}  // namespace

std::string canonical_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  nlohmann::ordered_json ch;
  ch["kind"] = cfg.channel.kind == ChannelKind::Static ? "static" : "fading";
  if (cfg.channel.symmetric) {
    ch["direct"] = cfg.channel.direct;
    ch["cross"] = cfg.channel.cross;
  } else {
    ch["gains"] = cfg.channel.gains;
  }
  j["channel"] = ch;
  j["sigma2_mw"] = cfg.sigma2_mw;
  j["pmax_mw"] = cfg.link.energy.max_power_mw;
  j["b_mw"] = cfg.link.energy.fixed_power_mw;
  j["rate_r"] = cfg.link.energy.rate;
  nlohmann::ordered_json eff;
  if (cfg.link.efficiency.kind() == EfficiencyFunction::Kind::ExpThreshold) {
    eff["kind"] = "exp";
    eff["c"] = cfg.link.efficiency.parameter();
  } else {
    eff["kind"] = "packet_length";
    eff["M"] = static_cast<long long>(cfg.link.efficiency.parameter());
  }
  j["efficiency"] = eff;
  nlohmann::ordered_json proto;
  if (const auto* car = std::get_if<CarProtocol>(&cfg.link.protocol)) {
    proto["car"] = {{"q", car->q}, {"epsilon", car->epsilon}};
  } else {
    proto["aar"] = {{"kappa", std::get<AarProtocol>(cfg.link.protocol).spec.kappa()}};
  }
  j["protocol"] = proto;
  j["buffer_k"] = cfg.link.queue.buffer_size;
  j["solver"] = {{"delta", cfg.solver.delta_mw},
                 {"max_rounds", cfg.solver.max_rounds},
                 {"br_grid", cfg.solver.br_grid},
                 {"br_refine_tol", cfg.solver.br_refine_tol},
                 {"aar_tol", cfg.link.aar_tolerance}};
  j["social"] = {{"grid_per_dim", cfg.social.grid_per_dim},
                 {"refine_rounds", cfg.social.refine_rounds}};
  nlohmann::ordered_json sweep;
  sweep["experiment"] = cfg.sweep.experiment;
  sweep["axis"] = cfg.sweep.axis.param.empty() ? nlohmann::ordered_json(nullptr)
                                               : axis_json(cfg.sweep.axis);
  sweep["series"] = cfg.sweep.series ? axis_json(*cfg.sweep.series) : nlohmann::ordered_json(nullptr);
  sweep["trials"] = cfg.sweep.trials;
  sweep["seed"] = cfg.sweep.seed;
  sweep["target_sinr_db"] = cfg.sweep.target_sinr_db;
  sweep["curve_grid"] = cfg.sweep.curve_grid;
  j["sweep"] = sweep;
  j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
  return j.dump(2);
}

std::string config_hash(const ExperimentConfig& cfg) {
  ExperimentConfig model = cfg;
  model.output = OutputSpec{};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace eepc
