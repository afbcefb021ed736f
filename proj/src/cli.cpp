#include "eepc/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eepc/config.hpp"
#include "eepc/errors.hpp"
#include "eepc/experiments.hpp"
#include "eepc/social.hpp"
#include "eepc/table.hpp"

namespace eepc {

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  int jobs = 0;
  bool strict = false;
};

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(origin + ": seed must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

// Flags win over the config file; EEPC_SEED is used only when neither sets a seed.
ExperimentConfig resolve(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
  if (c.seed) {
    cfg.sweep.seed = *c.seed;
    cfg.sweep.seed_given = true;
  } else if (!cfg.sweep.seed_given) {
    if (const char* env = std::getenv("EEPC_SEED"); env && *env) {
      cfg.sweep.seed = parse_seed(env, "EEPC_SEED");
      cfg.sweep.seed_given = true;
    }
  }
  if (!c.format.empty()) cfg.output.format = c.format;
  if (!c.out.empty()) cfg.output.path = c.out;
  cfg.validate();
  return cfg;
}

void render(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    write_json(t, out);
  } else {
    write_csv(t, out);
  }
}

void write_file(const std::string& path, const Table& t, const std::string& format) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  render(t, format, f);
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string side_path(const std::string& path, const std::string& name) {
  const std::filesystem::path p(path);
  std::filesystem::path side = p.parent_path() / (p.stem().string() + "." + name);
  side += p.extension();
  return side.string();
}

// Main table to the configured path (or `out`), side tables next to it.
void emit(const ExperimentOutput& result, const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.output.path.empty()) {
    render(result.table, cfg.output.format, out);
    return;
  }
  write_file(cfg.output.path, result.table, cfg.output.format);
  out << "wrote " << cfg.output.path << '\n';
  for (const auto& [name, table] : result.extra) {
    const std::string path = side_path(cfg.output.path, name);
    write_file(path, table, cfg.output.format);
    out << "wrote " << path << '\n';
  }
}

std::vector<double> parse_profile(const std::string& text) {
  std::vector<double> values;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ConfigError("--initial: expected comma-separated powers, got '" + text + "'");
    }
    values.push_back(v);
  }
  return values;
}

Table trajectory_table(const NEResult& ne, const ExperimentConfig& cfg) {
  const std::size_t n = ne.final_profile.size();
  Table t;
  t.columns.emplace_back("round");
  for (std::size_t i = 0; i < n; ++i) t.columns.push_back("p_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) t.columns.push_back("u_" + std::to_string(i + 1));
  t.columns.emplace_back("delta");
  for (std::size_t r = 0; r < ne.trajectory.size(); ++r) {
    const SweepRecord& rec = ne.trajectory[r];
    std::vector<Cell> row{static_cast<std::int64_t>(r + 1)};
    for (std::size_t i = 0; i < n; ++i) row.emplace_back(rec.profile[i]);
    for (std::size_t i = 0; i < n; ++i) row.emplace_back(rec.payoffs[i]);
    row.emplace_back(rec.delta);
    t.add_row(std::move(row));
  }
  t.set_meta("experiment", "dynamics");
  t.set_meta("config_hash", config_hash(cfg));
  t.set_meta("seed", std::to_string(cfg.sweep.seed));
  t.set_meta("converged", ne.converged ? "1" : "0");
  t.set_meta("rounds", std::to_string(ne.rounds_used));
  t.set_meta("nonconverged", ne.converged ? "0" : "1");
  return t;
}

NEResult dynamics_of(const GameConfig& g, const std::string& initial) {
  if (initial.empty()) return run_dynamics(g);
  return run_dynamics(g, PowerProfile(parse_profile(initial)));
}

int nonconvergence_exit(bool strict, std::ostream& err, const std::string& what) {
  err << "warning: " << what << '\n';
  return strict ? kExitNonConvergence : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-efficient power control games with finite packet buffers", "eepc"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string seed_text;
  app.add_option("--config", common.config, "Experiment config file (YAML)");
  app.add_option("--seed", seed_text, "Experiment seed (overrides config and EEPC_SEED)");
  app.add_option("--out", common.out, "Output path (default: config output.path or stdout)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", common.jobs, "Worker threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--strict", common.strict, "Exit 3 when any dynamics fail to converge");

  auto* ee = app.add_subcommand("ee-curve", "EE of one user against its power, others at P_max");
  std::size_t ee_user = 0;
  std::size_t ee_grid = 0;
  ee->add_option("--user", ee_user, "User index (0-based)");
  ee->add_option("--grid", ee_grid, "Grid points (default sweep.curve_grid)");

  auto* dyn = app.add_subcommand("dynamics", "Run best-response dynamics and print the trajectory");
  std::string initial;
  dyn->add_option("--initial", initial, "Comma-separated starting powers in mW (default P_max)");

  auto* ne = app.add_subcommand("ne", "Compute the Nash equilibrium; trajectory to --out or trajectory.csv");
  ne->add_option("--initial", initial, "Comma-separated starting powers in mW (default P_max)");

  auto* poa = app.add_subcommand("poa", "Price of anarchy on the configured (mean) channel");
  auto* poa_cdf_cmd = app.add_subcommand("poa-cdf", "PoA quantiles over fading trials");

  auto* sweep = app.add_subcommand("sweep", "Run an experiment driver");
  std::string experiment;
  sweep->add_option("--experiment", experiment, "Driver name (default sweep.experiment)");

  auto* aar = app.add_subcommand("aar-rate", "AAR operating arrival rate");
  double aar_f = 0.0;
  int aar_k = 10;
  double aar_kappa = 0.1;
  bool aar_large = false;
  aar->add_option("--f", aar_f, "Packet success probability")->required();
  aar->add_option("--k", aar_k, "Buffer size")->check(CLI::PositiveNumber);
  aar->add_option("--kappa", aar_kappa, "Rate-control constant");
  aar->add_flag("--large-k", aar_large, "Use the K -> infinity closed form");

  auto* limits = app.add_subcommand("limits", "Finite-K loss against its large-K limit");
  double lim_q = 0.0;
  double lim_f = 0.0;
  int lim_k = 100000;
  limits->add_option("--q", lim_q, "Arrival probability")->required();
  limits->add_option("--f", lim_f, "Success probability")->required();
  limits->add_option("--k", lim_k, "Buffer size")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse the config and print it resolved");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!seed_text.empty()) common.seed = parse_seed(seed_text, "--seed");
    set_worker_count(common.jobs);

    if (*aar) {
      const AarRate r = aar_large ? aar_rate_large_K(aar_f, aar_kappa)
                                  : aar_arrival_rate(aar_f, aar_k, AarSpec(aar_kappa));
      out << "q=" << format_number(r.q) << '\n'
          << "clamped=" << (r.clamped ? 1 : 0) << '\n'
          << "residual=" << format_number(r.residual) << '\n';
      return kExitOk;
    }
    if (*limits) {
      out << "loss=" << format_number(packet_loss(lim_q, lim_f, lim_k)) << '\n'
          << "loss_large_k=" << format_number(loss_large_K(lim_q, lim_f)) << '\n'
          << "full_buffer_prob=" << format_number(full_buffer_prob(load_ratio(lim_q, lim_f), lim_k))
          << '\n';
      return kExitOk;
    }

    const ExperimentConfig cfg = resolve(common);

    if (*validate) {
      out << canonical_json(cfg) << '\n';
      return kExitOk;
    }
    if (*ee) {
      const GameConfig g = cfg.game();
      const EeCurve c = ee_curve(g, ee_user, ee_grid ? ee_grid : cfg.sweep.curve_grid, g.full_power());
      Table t;
      t.columns = {"p_mw", "eta"};
      for (std::size_t k = 0; k < c.power.size(); ++k) t.add_row({c.power[k], c.efficiency[k]});
      t.set_meta("experiment", "ee-curve");
      t.set_meta("config_hash", config_hash(cfg));
      t.set_meta("user", std::to_string(ee_user));
      t.set_meta("argmax_mw", format_number(c.argmax_power));
      t.set_meta("max_eta", format_number(c.max_efficiency));
      t.set_meta("nonconverged", "0");
      emit(ExperimentOutput{t, {}, 0}, cfg, out);
      return kExitOk;
    }
    if (*dyn || *ne) {
      const GameConfig g = cfg.game();
      const NEResult r = dynamics_of(g, initial);
      const Table t = trajectory_table(r, cfg);
      if (*dyn) {
        emit(ExperimentOutput{t, {}, 0}, cfg, out);
      } else {
        const std::string path = common.out.empty() ? "trajectory.csv" : common.out;
        write_file(path, t, cfg.output.format);
        out << "converged=" << (r.converged ? 1 : 0) << '\n' << "rounds=" << r.rounds_used << '\n';
        for (std::size_t i = 0; i < r.final_profile.size(); ++i) {
          out << "p_" << i + 1 << '=' << format_number(r.final_profile[i]) << '\n';
        }
        for (std::size_t i = 0; i < r.payoffs.size(); ++i) {
          out << "u_" << i + 1 << '=' << format_number(r.payoffs[i]) << '\n';
        }
        for (std::size_t i = 0; i < r.qos_infeasible.size(); ++i) {
          if (r.qos_infeasible[i]) out << "qos_infeasible_" << i + 1 << "=1\n";
        }
        out << "trajectory=" << path << '\n';
      }
      if (!r.converged) {
        return nonconvergence_exit(common.strict, err,
                                   "dynamics did not converge in " + std::to_string(r.rounds_used) +
                                       " sweeps");
      }
      return kExitOk;
    }
    if (*poa) {
      const GameConfig g = cfg.game();
      const NEResult r = run_dynamics(g);
      if (!r.converged) {
        err << "error: dynamics did not converge in " << r.rounds_used << " sweeps; no PoA\n";
        return common.strict ? kExitNonConvergence : kExitFailure;
      }
      const PoaReport rep = price_of_anarchy(g, r, cfg.social.grid_per_dim, cfg.social.refine_rounds);
      Table t;
      t.columns = {"user", "p_ne_mw", "p_opt_mw"};
      for (std::size_t i = 0; i < g.users(); ++i) {
        t.add_row({static_cast<std::int64_t>(i + 1), rep.ne_profile[i], rep.opt_profile[i]});
      }
      t.set_meta("experiment", "poa");
      t.set_meta("config_hash", config_hash(cfg));
      t.set_meta("poa", format_number(rep.poa));
      t.set_meta("ne_sum_payoff", format_number(rep.ne_sum_payoff));
      t.set_meta("opt_sum_payoff", format_number(rep.opt_sum_payoff));
      t.set_meta("grid_per_dim", std::to_string(rep.grid_resolution));
      t.set_meta("refine_rounds", std::to_string(rep.refine_rounds));
      t.set_meta("ne_rounds", std::to_string(rep.ne_rounds));
      t.set_meta("nonconverged", "0");
      emit(ExperimentOutput{t, {}, 0}, cfg, out);
      return kExitOk;
    }

    std::string name = "poa-cdf";
    if (*sweep) {
      name = experiment.empty() ? cfg.sweep.experiment : experiment;
      if (name.empty()) throw ConfigError("sweep: no experiment given (--experiment or sweep.experiment)");
    }
    (void)poa_cdf_cmd;
    const ExperimentOutput result = run_experiment(name, cfg);
    emit(result, cfg, out);
    if (result.nonconverged > 0) {
      return nonconvergence_exit(common.strict, err,
                                 std::to_string(result.nonconverged) + " trial(s) did not converge");
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ProtocolMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return common.strict ? kExitNonConvergence : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace eepc
