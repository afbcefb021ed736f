#include "eepc/social.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eepc/errors.hpp"

namespace eepc {

namespace {

constexpr double kNoValue = -std::numeric_limits<double>::infinity();
constexpr double kMaxGridEvaluations = 2e8;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Candidate {
  double value = kNoValue;
  unsigned long long index = 0;
};

// Strict total order on (value, index): larger value wins, then smaller index.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

double safe_sum(const PowerProfile& p, const GameConfig& cfg) {
  const double v = sum_payoff(p, cfg);
  return std::isnan(v) ? kNoValue : v;
}

double axis_point(const Box& box, std::size_t dim, std::size_t digit, std::size_t grid) {
  if (grid == 1) return box.lo[dim];
  const double t = static_cast<double>(digit) / static_cast<double>(grid - 1);
  return digit + 1 == grid ? box.hi[dim] : box.lo[dim] + t * (box.hi[dim] - box.lo[dim]);
}

void decode(unsigned long long index, const Box& box, std::size_t grid, PowerProfile& out) {
  const std::size_t n = out.size();
  for (std::size_t d = n; d-- > 0;) {
    out[d] = axis_point(box, d, static_cast<std::size_t>(index % grid), grid);
    index /= grid;
  }
}

// Flat index with dimension 0 most significant, so index order is the
// lexicographic order of the profiles.
Candidate search_box(const GameConfig& cfg, const Box& box, std::size_t grid, Execution exec) {
  const std::size_t n = cfg.users();
  unsigned long long total = 1;
  for (std::size_t d = 0; d < n; ++d) total *= grid;
  const long long count = static_cast<long long>(total);

  Candidate best;
  if (exec == Execution::Parallel) {
#pragma omp parallel
    {
      Candidate local;
      PowerProfile p(n, 0.0);
#pragma omp for schedule(static)
      for (long long k = 0; k < count; ++k) {
        decode(static_cast<unsigned long long>(k), box, grid, p);
        const Candidate c{safe_sum(p, cfg), static_cast<unsigned long long>(k)};
        if (better(c, local)) local = c;
      }
#pragma omp critical(eepc_social_merge)
      {
        if (better(local, best)) best = local;
      }
    }
  } else {
    PowerProfile p(n, 0.0);
    for (long long k = 0; k < count; ++k) {
      decode(static_cast<unsigned long long>(k), box, grid, p);
      const Candidate c{safe_sum(p, cfg), static_cast<unsigned long long>(k)};
      if (better(c, best)) best = c;
    }
  }
  return best;
}

struct Incumbent {
  PowerProfile profile;
  double value = kNoValue;
  bool set = false;

  void offer(const PowerProfile& p, double v) {
    if (!set || v > value || (v == value && p.vector() < profile.vector())) {
      profile = p;
      value = v;
      set = true;
    }
  }
};

}  // namespace

SocialOptimum social_optimum(const GameConfig& cfg, std::size_t grid_per_dim,
                             std::size_t refine_rounds, const PowerProfile* candidate,
                             Execution exec) {
  const std::size_t n = cfg.users();
  if (n > 4) {
    throw CapabilityError("exhaustive social optimum supports N <= 4 (got N = " +
                          std::to_string(n) + "); use social_optimum_coordinate_ascent");
  }
  if (grid_per_dim < 64) throw ConfigError("social optimum grid_per_dim must be >= 64");
  if (std::pow(static_cast<double>(grid_per_dim), static_cast<double>(n)) >
      kMaxGridEvaluations) {
    throw CapabilityError("social optimum grid of " + std::to_string(grid_per_dim) + "^" +
                          std::to_string(n) +
                          " points is too large; lower grid_per_dim or use coordinate ascent");
  }
  const double pmax = cfg.max_power();

  Incumbent inc;
  if (candidate) {
    if (candidate->size() != n) throw ConfigError("candidate profile size mismatch");
    inc.offer(*candidate, safe_sum(*candidate, cfg));
  }

  SocialOptimum out;
  Box box{std::vector<double>(n, 0.0), std::vector<double>(n, pmax)};
  for (std::size_t stage = 0; stage <= refine_rounds; ++stage) {
    if (stage > 0) {
      for (std::size_t d = 0; d < n; ++d) {
        const double half = (box.hi[d] - box.lo[d]) / 20.0;
        const double centre = inc.profile[d];
        box.lo[d] = std::max(0.0, centre - half);
        box.hi[d] = std::min(pmax, centre + half);
      }
    }
    const Candidate best = search_box(cfg, box, grid_per_dim, exec);
    PowerProfile p(n, 0.0);
    decode(best.index, box, grid_per_dim, p);
    inc.offer(p, best.value);
    out.stage_best.push_back(inc.value);
  }
  out.profile = inc.profile;
  out.sum_payoff = inc.value;
  return out;
}

SocialOptimum social_optimum_coordinate_ascent(const GameConfig& cfg, std::size_t grid_per_dim,
                                               std::size_t sweeps, const PowerProfile* start) {
  if (grid_per_dim < 64) throw ConfigError("coordinate ascent grid_per_dim must be >= 64");
  const std::size_t n = cfg.users();
  const double pmax = cfg.max_power();
  PowerProfile p = start ? *start : cfg.full_power();
  if (p.size() != n) throw ConfigError("start profile size mismatch");
  double value = safe_sum(p, cfg);

  SocialOptimum out;
  out.heuristic = true;
  for (std::size_t s = 0; s < sweeps; ++s) {
    const double before = value;
    for (std::size_t d = 0; d < n; ++d) {
      // Coarse pass over the whole axis, then a 10x finer pass around the best.
      double lo = 0.0;
      double hi = pmax;
      for (int pass = 0; pass < 3; ++pass) {
        double best_x = p[d];
        for (std::size_t k = 0; k < grid_per_dim; ++k) {
          const double x =
              lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid_per_dim - 1);
          const PowerProfile trial = p.with(d, x);
          const double v = safe_sum(trial, cfg);
          if (v > value) {
            value = v;
            best_x = x;
          }
        }
        p[d] = best_x;
        const double half = (hi - lo) / 20.0;
        lo = std::max(0.0, best_x - half);
        hi = std::min(pmax, best_x + half);
      }
    }
    out.stage_best.push_back(value);
    if (value <= before) break;
  }
  out.profile = p;
  out.sum_payoff = value;
  return out;
}

PoaReport price_of_anarchy(const GameConfig& cfg, std::size_t grid_per_dim,
                           std::size_t refine_rounds, Execution exec) {
  const NEResult ne = run_dynamics(cfg);
  return price_of_anarchy(cfg, ne, grid_per_dim, refine_rounds, exec);
}

PoaReport price_of_anarchy(const GameConfig& cfg, const NEResult& ne, std::size_t grid_per_dim,
                           std::size_t refine_rounds, Execution exec) {
  if (!ne.converged) {
    throw NonConvergence("best-response dynamics did not converge in " +
                             std::to_string(ne.rounds_used) + " sweeps",
                         ne.rounds_used,
                         ne.trajectory.empty() ? 0.0 : ne.trajectory.back().delta);
  }
  const SocialOptimum opt =
      social_optimum(cfg, grid_per_dim, refine_rounds, &ne.final_profile, exec);
  PoaReport r;
  r.ne_profile = ne.final_profile;
  r.ne_sum_payoff = sum_payoff(ne.final_profile, cfg);
  r.opt_profile = opt.profile;
  r.opt_sum_payoff = opt.sum_payoff;
  r.poa = r.ne_sum_payoff > 0.0 ? r.opt_sum_payoff / r.ne_sum_payoff
                                : std::numeric_limits<double>::infinity();
  r.grid_resolution = grid_per_dim;
  r.refine_rounds = refine_rounds;
  r.ne_rounds = ne.rounds_used;
  return r;
}

}  // namespace eepc
