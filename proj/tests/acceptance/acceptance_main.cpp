// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "eepc/config.hpp"
#include "eepc/experiments.hpp"
#include "eepc/game.hpp"
#include "eepc/queueing.hpp"
#include "eepc/social.hpp"
#include "eepc/table.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace eepc;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

ExperimentConfig shipped(const std::string& name) {
  return load_config(std::string(EEPC_SOURCE_DIR) + "/configs/" + name);
}

ExperimentOutput run(const ExperimentConfig& cfg) { return run_experiment(cfg.sweep.experiment, cfg); }

std::vector<std::size_t> rows_where(const Table& t, const std::string& col, double value) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.number(r, col) == value) out.push_back(r);
  }
  return out;
}

double max_abs_diff(const PowerProfile& a, const PowerProfile& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

GameConfig two_or_more_users(gen::Gen& g, bool car, std::size_t max_users) {
  for (;;) {
    GameConfig cfg = g.game(car, max_users);
    if (cfg.users() >= 2) return cfg;
  }
}

Verdict ac1() {
  gen::Gen g(1001);
  double worst_pi = 0.0;
  double worst_phi = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double q = g.uniform(0.05, 0.95);
    const double f = g.uniform(0.05, 0.95);
    const int k = g.pick<int>({1, 2, 5, 10, 50});
    const oracle::QueueSim sim = oracle::simulate_queue(q, f, k, 1000000, 7000 + t);
    worst_pi = std::max(worst_pi, std::abs(sim.full_fraction - full_buffer_prob(load_ratio(q, f), k)));
    worst_phi = std::max(worst_phi, std::abs(sim.loss_fraction - packet_loss(q, f, k)));
  }
  return {worst_pi <= 1e-2 && worst_phi <= 1e-2, fmt("max |dPi|=%.3g max |dPhi|=%.3g", worst_pi, worst_phi)};
}

Verdict ac2() {
  gen::Gen g(1002);
  int violations = 0;
  int ties = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const GameConfig base = g.game(true);
    const PowerProfile p = g.profile(base.users(), 1000.0);
    const std::size_t i = g.index(base.users());
    double prev = 0.0;
    for (int j = 1; j <= 100; ++j) {
      LinkModel link = base.link;
      link.protocol = CarProtocol{j / 100.0, 1.0};
      const double eta = energy_efficiency(p, i, GameConfig(base.channel, link));
      if (j > 1) {
        const double rel = (eta - prev) / prev;
        worst = std::min(worst, rel);
        if (rel < -1e-12) ++violations;
        if (eta == prev) ++ties;
      }
      prev = eta;
    }
  }
  return {violations == 0,
          fmt("violations=%.0f flat steps=%.0f worst relative step=%.3g", violations, ties, worst)};
}

Verdict ac3() {
  gen::Gen g(1003);
  int not_unimodal = 0;
  for (int t = 0; t < 100; ++t) {
    const GameConfig cfg = g.game(t % 2 == 0, 3);
    const PowerProfile others = g.profile(cfg.users(), 1000.0);
    const std::size_t i = g.index(cfg.users());
    const std::size_t n = 10000;
    std::vector<double> eta(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double p = cfg.max_power() * static_cast<double>(k + 1) / static_cast<double>(n);
      eta[k] = energy_efficiency(others.with(i, p), i, cfg);
    }
    const double peak = *std::max_element(eta.begin(), eta.end());
    const double band = 1e-12 * peak;
    const std::size_t m = static_cast<std::size_t>(std::max_element(eta.begin(), eta.end()) - eta.begin());
    bool ok = true;
    for (std::size_t k = 1; k <= m; ++k) ok = ok && eta[k] >= eta[k - 1] - band;
    for (std::size_t k = m + 1; k < n; ++k) ok = ok && eta[k] <= eta[k - 1] + band;
    if (!ok) ++not_unimodal;
  }

  int d1_bad = 0;
  int d2_bad = 0;
  int checked = 0;
  int skipped = 0;
  while (checked + skipped < 1000) {
    LinkModel link = g.link(g.coin());
    link.aar_tolerance = 1e-15;
    const double gp = std::max(link.efficiency.inflection(), 0.05);
    const double x = g.uniform(gp, gp * 20.0 + 5.0);
    const double h = 1e-3 * x;
    const auto B = [&](double s) {
      return link.energy.fixed_power_mw / (link.energy.rate * evaluate_link(link, 1.0, s).goodput);
    };
    if (evaluate_link(link, 1.0, x - h).arrival_clamped != evaluate_link(link, 1.0, x + h).arrival_clamped) {
      ++skipped;
      continue;
    }
    ++checked;
    const double b0 = B(x);
    const double d1 = (B(x + h) - B(x - h)) / (2 * h);
    const double d2 = (B(x + h) - 2 * b0 + B(x - h)) / (h * h);
    // Below these bands the differences are rounding noise.
    if (d1 > 1e-9 * b0 / x) ++d1_bad;
    if (d2 < -1e-7 * b0 / (x * x)) ++d2_bad;
  }
  return {not_unimodal == 0 && d1_bad == 0 && d2_bad == 0,
          fmt("non-unimodal=%.0f/100 ", not_unimodal) +
              fmt("dB>0 at %.0f, d2B<0 at %.0f of ", d1_bad, d2_bad) +
              fmt("%.0f points (%.0f clamp-straddling stencils skipped)", checked, skipped)};
}

Verdict ac4() {
  gen::Gen g(1004);
  const double slack = 1e-6 * 1000.0;
  int violations = 0;
  int checks = 0;
  for (int t = 0; t < 50; ++t) {
    const GameConfig cfg = two_or_more_users(g, g.coin(), 4);
    const PowerProfile p = g.profile(cfg.users(), 150.0);
    const std::size_t i = g.index(cfg.users());
    std::vector<double> more = p.vector();
    for (std::size_t j = 0; j < more.size(); ++j) {
      if (j != i) more[j] = std::min(1000.0, more[j] + g.uniform(0.0, 100.0));
    }
    const double base = best_response(i, p, cfg);
    ++checks;
    if (best_response(i, PowerProfile(more), cfg) < base - slack) ++violations;
    for (double lambda : {1.1, 2.0, 5.0}) {
      std::vector<double> scaled = p.vector();
      for (double& x : scaled) x *= lambda;
      ++checks;
      if (best_response(i, PowerProfile(scaled), cfg) > lambda * base + slack) ++violations;
    }
  }
  return {violations == 0, fmt("violations=%.0f of %.0f checks", violations, checks)};
}

Verdict ac5() {
  gen::Gen g(1005);
  double worst_spread = 0.0;
  double worst_gain = 0.0;
  int failures = 0;
  for (int t = 0; t < 20; ++t) {
    const GameConfig cfg = two_or_more_users(g, g.coin(), 4);
    const std::size_t n = cfg.users();
    std::vector<PowerProfile> starts = {cfg.full_power(), PowerProfile(n, 0.0)};
    for (int s = 0; s < 3; ++s) starts.push_back(g.profile(n, 1000.0));
    std::vector<std::size_t> forward(n);
    for (std::size_t k = 0; k < n; ++k) forward[k] = k;
    std::vector<std::size_t> reverse(forward.rbegin(), forward.rend());

    std::vector<PowerProfile> finals;
    for (const PowerProfile& s : starts) {
      for (const auto* order : {&forward, &reverse}) {
        const NEResult ne = run_dynamics(cfg, s, *order);
        if (!ne.converged) ++failures;
        const NashCheck check = verify_nash(ne.final_profile, cfg, 2000, 1e-4);
        if (!check.is_nash) ++failures;
        worst_gain = std::max(worst_gain, check.worst_gain);
        finals.push_back(ne.final_profile);
      }
    }
    double spread = 0.0;
    for (const auto& a : finals) {
      for (const auto& b : finals) spread = std::max(spread, max_abs_diff(a, b));
    }
    if (spread > 10.0 * cfg.solver.delta_mw) ++failures;
    worst_spread = std::max(worst_spread, spread / cfg.solver.delta_mw);
  }
  return {failures == 0, fmt("failures=%.0f max spread=%.3g delta, worst deviation gain=%.3g", failures,
                             worst_spread, worst_gain)};
}

Verdict ac6() {
  gen::Gen g(1006);
  double worst_loss = 0.0;
  int compared = 0;
  while (compared < 500) {
    const double q = g.uniform(0.01, 1.0);
    const double f = g.uniform(0.01, 1.0);
    if (std::abs(q - f) <= 0.05) continue;
    ++compared;
    worst_loss = std::max(worst_loss, std::abs(packet_loss(q, f, 100000) - loss_large_K(q, f)));
  }
  double worst_aar = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double f = g.uniform(0.05, 0.99);
    const double kappa = g.uniform(0.01, 0.3);
    const double q = aar_arrival_rate(f, 100000, AarSpec(kappa)).q;
    const double ref = std::min(1.0, oracle::aar_rate_closed_form(f, kappa));
    worst_aar = std::max(worst_aar, std::abs(q - ref));
    worst_aar = std::max(worst_aar, std::abs(q - aar_rate_large_K(f, kappa).q));
  }
  return {worst_loss <= 1e-3 && worst_aar <= 1e-3,
          fmt("max |Phi - Phi_inf|=%.3g over %.0f points, max |q_aar - q_inf|=%.3g", worst_loss, compared,
              worst_aar)};
}

Verdict ac7() {
  LinkModel link;
  link.protocol = CarProtocol{1.0, 1.0};
  link.energy.fixed_power_mw = 1000.0;
  const GameConfig cfg(ChannelMatrix::symmetric(1, 2.5, 0.0, 1.0), link, default_solver(1000.0));
  const double root = oracle::closed_form_best_response(1.0, 2.5, 1000.0);
  const double br = best_response(0, PowerProfile({0.0}), cfg);
  const double scale = std::abs(foc_residual(PowerProfile({0.999 * 1000.0}), 0, cfg));
  const double rel = std::abs(foc_residual(PowerProfile({br}), 0, cfg)) / scale;
  return {std::abs(br - root) <= 1e-3 && rel < 1e-6,
          fmt("BR=%.6f mW root=%.6f mW relative FOC residual=%.3g", br, root, rel)};
}

Verdict ac8() {
  const ExperimentOutput out = run(shipped("fig1_ee_curve.cfg"));
  const Table& a = out.side("argmax");
  bool ok = true;
  std::string detail;
  for (double b : {1000.0, 4000.0}) {
    double at_one = 0.0;
    double at_low = 0.0;
    for (std::size_t r : rows_where(a, "b", b)) {
      (a.number(r, "q") == 1.0 ? at_one : at_low) = a.number(r, "argmax_mw");
    }
    ok = ok && at_low < at_one;
    detail += fmt("b=%.0f argmax %.4g -> %.4g mW; ", b, at_one, at_low);
  }
  for (double q : {1.0, 0.6}) {
    std::vector<double> ratio;
    for (std::size_t r : rows_where(a, "q", q)) ratio.push_back(a.number(r, "peak_to_pmax"));
    for (std::size_t k = 1; k < ratio.size(); ++k) ok = ok && ratio[k] < ratio[k - 1];
    detail += fmt("q=%.1f peak/pmax %.4g, %.4g, ", q, ratio.at(0), ratio.at(1)) + fmt("%.4g; ", ratio.at(2));
  }
  return {ok, detail};
}

Verdict ac9(const ExperimentOutput& out) {
  const Table& t = out.table;
  const std::vector<std::size_t> rows = rows_where(t, "K", 10.0);
  double threshold = std::nan("");
  for (std::size_t r : rows) {
    if (t.number(r, "q") >= t.number(r, "f_ne")) {
      threshold = t.number(r, "q");
      break;
    }
  }
  double jump = -1.0;
  double jump_q = std::nan("");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double d = t.number(rows[k], "poa") - t.number(rows[k - 1], "poa");
    if (d > jump) {
      jump = d;
      jump_q = t.number(rows[k], "q");
    }
  }
  const bool ok = std::abs(jump_q - threshold) <= 0.02 + 1e-9;
  return {ok, fmt("K=10: largest step %.4g at q=%.2f, smallest q >= f(sinr_NE) is %.2f", jump, jump_q,
                  threshold)};
}

Verdict ac10(const ExperimentOutput& fig3) {
  gen::Gen g(1010);
  int below_one = 0;
  int instances = 0;
  for (int t = 0; t < 30; ++t) {
    const GameConfig cfg = g.game(g.coin(), 3);
    ++instances;
    if (price_of_anarchy(cfg, 64, 1).poa < 1.0) ++below_one;
  }
  for (std::size_t r = 0; r < fig3.table.rows.size(); ++r) {
    ++instances;
    if (fig3.table.number(r, "poa") < 1.0) ++below_one;
  }
  double worst_decoupled = 1.0;
  for (int t = 0; t < 10; ++t) {
    const GameConfig single = g.game(g.coin(), 1);
    worst_decoupled = std::max(worst_decoupled, price_of_anarchy(single, 200, 3).poa);
    const std::size_t n = 2 + g.index(2);
    std::vector<double> gains(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) gains[i * n + i] = g.uniform(1.0, 5.0);
    const GameConfig zero(ChannelMatrix(n, gains, g.uniform(0.5, 2.0)), g.link(g.coin()), default_solver(1000.0));
    worst_decoupled = std::max(worst_decoupled, price_of_anarchy(zero, n == 2 ? 200 : 64, 2).poa);
  }
  return {below_one == 0 && worst_decoupled <= 1.0 + 1e-3,
          fmt("PoA < 1 on %.0f of %.0f instances; worst decoupled PoA - 1 = %.3g", below_one, instances,
              worst_decoupled - 1.0)};
}

struct RerunInputs {
  ExperimentOutput fig2;
  double seconds = 0.0;
};

Verdict ac11(RerunInputs& keep) {
  const auto t0 = std::chrono::steady_clock::now();
  keep.fig2 = run(shipped("fig2_power_gain.cfg"));
  const ExperimentOutput fig5 = run(shipped("fig5_sum_payoff.cfg"));
  const ExperimentOutput fig6 = run(shipped("fig6_energy_full_buffer.cfg"));
  keep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool gain_ok = true;
  const Table& t2 = keep.fig2.table;
  for (double n : {2.0, 3.0}) {
    const std::vector<std::size_t> rows = rows_where(t2, "N", n);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      gain_ok = gain_ok && t2.number(rows[k], "gain_db") <= t2.number(rows[k - 1], "gain_db");
    }
    gain_ok = gain_ok && t2.number(rows.back(), "q") == 1.0 && t2.number(rows.back(), "gain_db") == 0.0;
  }

  const Table& a5 = fig5.side("argmax");
  bool argmax_ok = true;
  std::string argmax_list;
  for (std::size_t r = 0; r < a5.rows.size(); ++r) {
    if (r > 0) argmax_ok = argmax_ok && a5.number(r, "argmax_q") <= a5.number(r - 1, "argmax_q");
    argmax_list += fmt("%.2f ", a5.number(r, "argmax_q"));
  }

  // b = 0 carries no idle power to save; the ordering is checked for b > 0.
  const Table& t6 = fig6.table;
  bool saving_ok = true;
  std::string savings;
  for (std::size_t r : rows_where(t6, "q", 0.3)) {
    const double b = t6.number(r, "b");
    if (b == 0.0) continue;
    double other = std::nan("");
    for (std::size_t s : rows_where(t6, "q", 0.5)) {
      if (t6.number(s, "b") == b) other = t6.number(s, "saving_pct");
    }
    const double mine = t6.number(r, "saving_pct");
    saving_ok = saving_ok && mine > other;
    savings += fmt("b=%.0f %.3g%% vs %.3g%%; ", b, mine, other);
  }
  const bool fast = keep.seconds < 600.0;
  return {gain_ok && argmax_ok && saving_ok && fast,
          std::string("gain ") + (gain_ok ? "ok" : "FAIL") + "; argmax q over N=2,3,4,6: " + argmax_list +
              (argmax_ok ? "ok" : "FAIL") + "; saving q=0.3 vs q=0.5: " + savings +
              (saving_ok ? "ok" : "FAIL") + fmt("; %.1f s", keep.seconds)};
}

Verdict ac12(const RerunInputs& kept) {
  const ExperimentOutput again = run(shipped("fig2_power_gain.cfg"));
  bool same = to_csv(again.table) == to_csv(kept.fig2.table);
  for (const auto& [name, table] : kept.fig2.extra) same = same && to_csv(again.side(name)) == to_csv(table);
  const ExperimentConfig qos = shipped("fig8_qos.cfg");
  same = same && to_csv(run(qos).table) == to_csv(run(qos).table);
  return {same, same ? "fig2 and fig8 reruns byte-identical" : "CSV differs between reruns"};
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&](const char* name, const std::function<Verdict()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failed;
    std::printf("%s %s %s [%.1f s]\n", name, v.pass ? "PASS" : "FAIL", v.detail.c_str(), s);
    std::fflush(stdout);
  };

  report("AC1", ac1);
  report("AC2", ac2);
  report("AC3", ac3);
  report("AC4", ac4);
  report("AC5", ac5);
  report("AC6", ac6);
  report("AC7", ac7);
  report("AC8", ac8);
  ExperimentOutput fig3;
  report("AC9", [&] {
    fig3 = run(shipped("fig3_poa_vs_q.cfg"));
    return ac9(fig3);
  });
  report("AC10", [&] { return ac10(fig3); });
  RerunInputs kept;
  report("AC11", [&] { return ac11(kept); });
  report("AC12", [&] { return ac12(kept); });
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
