/*
 * Copyright (C) 2026 The nullswarm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#include <nullswarm/ga.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

namespace nullswarm {

std::string to_string(GaMode mode)
{
  switch (mode)
  {
    case GaMode::OrientationOnly: return "orientation-only";
    case GaMode::JointStatic: return "joint";
    case GaMode::PositionStatic: return "position-only";
    case GaMode::PositionProgressing: return "progressing";
  }
  return "progressing";
}

GaMode parse_ga_mode(const std::string& text)
{
  if (text == "orientation-only") return GaMode::OrientationOnly;
  if (text == "joint") return GaMode::JointStatic;
  if (text == "position-only") return GaMode::PositionStatic;
  if (text == "progressing") return GaMode::PositionProgressing;
  throw std::invalid_argument("unknown GA mode '" + text
    + "' (expected orientation-only, joint, position-only or progressing)");
}

void validate(const GaParams& p)
{
  auto fail = [](const std::string& msg) { throw std::invalid_argument("GaParams: " + msg); };
  if (p.population_size < 2) fail("population_size must be >= 2");
  if (p.generations < 0) fail("generations must be >= 0");
  if (p.tournament_size < 2) fail("tournament_size must be >= 2");
  if (p.elitism < 0 || p.elitism >= p.population_size)
    fail("elitism must be in [0, population_size)");
  if (!(p.crossover_rate >= 0.0 && p.crossover_rate <= 1.0))
    fail("crossover_rate must be in [0, 1]");
  if (!(p.mutation_rate >= 0.0 && p.mutation_rate <= 1.0))
    fail("mutation_rate must be in [0, 1]");
  if (!(p.mutation_sigma_frac >= 0.0) || !std::isfinite(p.mutation_sigma_frac))
    fail("mutation_sigma_frac must be finite and >= 0");
  if (p.init_attempts < 1) fail("init_attempts must be >= 1");
}

//==============================================================================
std::size_t genome_length(GaMode mode, const ScenarioConfig& cfg)
{
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  switch (mode)
  {
    case GaMode::OrientationOnly: return n;
    case GaMode::JointStatic: return 3 * n;
    case GaMode::PositionStatic: return 2 * n;
    case GaMode::PositionProgressing:
      return 2 * n * static_cast<std::size_t>(cfg.scored_slots());
  }
  return 0;
}

namespace {

bool is_static(GaMode mode)
{
  return mode != GaMode::PositionProgressing;
}

std::size_t waypoint_index(std::size_t uav, std::size_t slot, std::size_t scored)
{
  return 2 * (uav * scored + (slot - 1));
}

void require_context(const GaContext& ctx)
{
  if (ctx.initial_positions.size() != static_cast<std::size_t>(ctx.cfg.num_uavs))
    throw std::invalid_argument("GaContext: initial positions do not match num_uavs");
}

} // anonymous namespace

DecodedGenome decode(const Genome& genome, const GaContext& ctx, GaMode mode)
{
  require_context(ctx);
  const auto& cfg = ctx.cfg;
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  if (genome.genes.size() != genome_length(mode, cfg))
    throw std::invalid_argument("decode: genome length does not match mode");

  const auto& g = genome.genes;
  DecodedGenome out;
  if (is_static(mode))
  {
    const SlotCell cell = slot_cell(ctx.epoch, 0, cfg);
    out.block = PositionBlock(n, 1);
    out.null_angles_deg.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      switch (mode)
      {
        case GaMode::OrientationOnly:
          out.block.at(i, 0) = ctx.initial_positions[i];
          out.null_angles_deg[i] = wrap_angle_deg(g[i]);
          break;
        case GaMode::JointStatic:
          out.block.at(i, 0) = cell.clamp({g[3 * i], g[3 * i + 1]});
          out.null_angles_deg[i] = wrap_angle_deg(g[3 * i + 2]);
          break;
        case GaMode::PositionStatic:
          out.block.at(i, 0) = cell.clamp({g[2 * i], g[2 * i + 1]});
          break;
        case GaMode::PositionProgressing:
          break;
      }
    }
    if (mode == GaMode::PositionStatic)
      out.null_angles_deg = nulls_toward(out.block.column(0), ctx.jammer);
    return out;
  }

  const auto scored = static_cast<std::size_t>(cfg.scored_slots());
  out.block = PositionBlock(n, scored + 1);
  for (std::size_t i = 0; i < n; ++i)
  {
    Vec2 prev = ctx.initial_positions[i];
    out.block.at(i, 0) = prev;
    for (std::size_t t = 1; t <= scored; ++t)
    {
      const std::size_t k = waypoint_index(i, t, scored);
      prev = reachable_in_cell(prev, {g[k], g[k + 1]},
        slot_cell(ctx.epoch, t, cfg), cfg);
      out.block.at(i, t) = prev;
    }
  }
  return out;
}

Genome encode(const DecodedGenome& decoded, GaMode mode)
{
  const auto& block = decoded.block;
  const std::size_t n = block.num_uavs();
  Genome genome;
  switch (mode)
  {
    case GaMode::OrientationOnly:
      genome.genes = decoded.null_angles_deg;
      break;
    case GaMode::JointStatic:
      for (std::size_t i = 0; i < n; ++i)
      {
        genome.genes.push_back(block.at(i, 0).x);
        genome.genes.push_back(block.at(i, 0).y);
        genome.genes.push_back(decoded.null_angles_deg.at(i));
      }
      break;
    case GaMode::PositionStatic:
      for (std::size_t i = 0; i < n; ++i)
      {
        genome.genes.push_back(block.at(i, 0).x);
        genome.genes.push_back(block.at(i, 0).y);
      }
      break;
    case GaMode::PositionProgressing:
      for (std::size_t i = 0; i < n; ++i)
      {
        for (std::size_t t = 1; t < block.num_points(); ++t)
        {
          genome.genes.push_back(block.at(i, t).x);
          genome.genes.push_back(block.at(i, t).y);
        }
      }
      break;
  }
  return genome;
}

namespace {

Evaluation evaluate_decoded(const DecodedGenome& d, const GaContext& ctx,
  GaMode mode, Rng* shadowing)
{
  Evaluation ev;
  if (is_static(mode))
  {
    ev.finding = check_plan(d.block, ctx.cfg, ctx.epoch);
    if (ev.finding.ok())
    {
      const SwarmState state{d.block.column(0), d.null_angles_deg, ctx.jammer};
      ev.fitness = link_report(state, ctx.cfg, shadowing).fitness;
    }
    return ev;
  }

  ev.finding = check_plan(d.block, ctx.cfg, ctx.epoch);
  if (ev.finding.ok())
    ev.fitness = epoch_objective(d.block, ctx.jammer, ctx.cfg, shadowing).objective;
  return ev;
}

} // anonymous namespace

Evaluation evaluate(const Genome& genome, const GaContext& ctx, GaMode mode)
{
  return evaluate_decoded(decode(genome, ctx, mode), ctx, mode, nullptr);
}

//==============================================================================
namespace {

/// Orders evaluations: feasible beats infeasible, then higher fitness.
bool better(const Evaluation& a, const Evaluation& b)
{
  if (a.feasible() != b.feasible())
    return a.feasible();
  return a.fitness > b.fitness;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn)
{
  if (threads <= 1 || count < 2)
  {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back([=, &fn]
    {
      for (std::size_t i = w; i < count; i += workers)
        fn(i);
    });
  }
  for (auto& t : pool)
    t.join();
}

double gene_span(GaMode mode, std::size_t index, const ScenarioConfig& cfg)
{
  if (mode == GaMode::OrientationOnly)
    return 360.0;
  if (mode == GaMode::JointStatic && index % 3 == 2)
    return 360.0;
  return cfg.cell_size_m;
}

DecodedGenome heuristic_individual(const GaContext& ctx, GaMode mode)
{
  const auto& cfg = ctx.cfg;
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  DecodedGenome d;
  if (is_static(mode))
  {
    const SlotCell cell = slot_cell(ctx.epoch, 0, cfg);
    d.block = PositionBlock(n, 1);
    for (std::size_t i = 0; i < n; ++i)
      d.block.at(i, 0) = mode == GaMode::OrientationOnly
        ? ctx.initial_positions[i] : cell.clamp(ctx.initial_positions[i]);
    d.null_angles_deg = nulls_toward(d.block.column(0), ctx.jammer);
    return d;
  }

  // Advance the formation rigidly with the corridor. Relative positions never
  // change, so a separated start stays separated at every instant.
  const auto scored = static_cast<std::size_t>(cfg.scored_slots());
  d.block = PositionBlock(n, scored + 1);
  d.block.set_column(0, ctx.initial_positions);
  for (std::size_t t = 1; t <= scored; ++t)
  {
    const SlotCell prev_cell = slot_cell(ctx.epoch, t - 1, cfg);
    const SlotCell cell = slot_cell(ctx.epoch, t, cfg);
    const double shift = cell.y_min - prev_cell.y_min;
    for (std::size_t i = 0; i < n; ++i)
    {
      const Vec2 prev = d.block.at(i, t - 1);
      d.block.at(i, t) = reachable_in_cell(prev, {prev.x, prev.y + shift}, cell, cfg);
    }
  }
  return d;
}

std::vector<double> random_angles(std::size_t n, Rng& rng)
{
  std::vector<double> angles(n);
  for (auto& a : angles)
    a = rng.uniform(0.0, 360.0);
  return angles;
}

std::optional<DecodedGenome> random_static(const GaContext& ctx, GaMode mode, Rng& rng)
{
  const auto& cfg = ctx.cfg;
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  const SlotCell cell = slot_cell(ctx.epoch, 0, cfg);
  DecodedGenome d;
  d.block = PositionBlock(n, 1);
  for (std::size_t i = 0; i < n; ++i)
  {
    d.block.at(i, 0) = mode == GaMode::OrientationOnly
      ? ctx.initial_positions[i]
      : Vec2{rng.uniform(cell.x_min, cell.x_max), rng.uniform(cell.y_min, cell.y_max)};
  }
  d.null_angles_deg = mode == GaMode::PositionStatic
    ? nulls_toward(d.block.column(0), ctx.jammer) : random_angles(n, rng);
  return d;
}

/// Builds one epoch UAV by UAV and slot by slot, drawing each waypoint
/// uniformly in its cell, pulling it within reach, and rejecting draws that
/// break separation with the UAVs already placed. Returns nothing when some
/// waypoint cannot be placed.
std::optional<DecodedGenome> random_walk(const GaContext& ctx, Rng& rng)
{
  constexpr int WaypointTries = 30;
  const auto& cfg = ctx.cfg;
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  const auto scored = static_cast<std::size_t>(cfg.scored_slots());
  const double d_min = cfg.min_separation_m;

  DecodedGenome d;
  d.block = PositionBlock(n, scored + 1);
  d.block.set_column(0, ctx.initial_positions);
  for (std::size_t t = 1; t <= scored; ++t)
  {
    const SlotCell cell = slot_cell(ctx.epoch, t, cfg);
    for (std::size_t i = 0; i < n; ++i)
    {
      const Vec2 prev = d.block.at(i, t - 1);
      bool placed = false;
      for (int attempt = 0; attempt < WaypointTries && !placed; ++attempt)
      {
        const Vec2 draw{rng.uniform(cell.x_min, cell.x_max),
          rng.uniform(cell.y_min, cell.y_max)};
        const Vec2 cand = reachable_in_cell(prev, draw, cell, cfg);
        placed = true;
        for (std::size_t j = 0; j < i && placed; ++j)
        {
          if (cfg.collision_rule == CollisionRule::Rule3)
          {
            placed = segment_pair_min_distance(prev, cand,
              d.block.at(j, t - 1), d.block.at(j, t)) >= d_min;
          }
          else if (cfg.collision_rule == CollisionRule::Rule2 && t == scored)
          {
            placed = distance(cand, d.block.at(j, t)) >= d_min;
          }
        }
        if (placed)
          d.block.at(i, t) = cand;
      }
      if (!placed)
        return std::nullopt;
    }
  }
  return d;
}

DecodedGenome random_individual(const GaContext& ctx, GaMode mode,
  int attempts, Rng& rng)
{
  const bool constrained = ctx.cfg.collision_rule != CollisionRule::Rule1
    && mode != GaMode::OrientationOnly;
  std::optional<DecodedGenome> last;
  for (int a = 0; a < (constrained ? attempts : 1); ++a)
  {
    auto d = is_static(mode) ? random_static(ctx, mode, rng) : random_walk(ctx, rng);
    if (!d)
      continue;
    if (!constrained || check_plan(d->block, ctx.cfg, ctx.epoch).ok())
      return *d;
    last = std::move(d);
  }
  if (last)
    return *last;

  // Every constructive attempt stalled; fall back to an unconstrained walk,
  // which the penalty will score as 0.
  GaContext loose = ctx;
  loose.cfg.collision_rule = CollisionRule::Rule1;
  return *random_walk(loose, rng);
}

std::size_t tournament(const std::vector<Evaluation>& evals, int size, Rng& rng)
{
  std::size_t best = rng.index(evals.size());
  for (int k = 1; k < size; ++k)
  {
    const std::size_t c = rng.index(evals.size());
    if (better(evals[c], evals[best]) || (!better(evals[best], evals[c]) && c < best))
      best = c;
  }
  return best;
}

} // anonymous namespace

GaResult run_ga(const GaParams& params, const GaContext& ctx, std::uint64_t seed)
{
  validate(params);
  require_valid(ctx.cfg);
  require_context(ctx);

  const auto start = std::chrono::steady_clock::now();
  const GaMode mode = params.mode;
  const auto pop_size = static_cast<std::size_t>(params.population_size);
  const std::size_t length = genome_length(mode, ctx.cfg);
  const bool shadowed = ctx.cfg.shadowing_sigma_db > 0.0;

  Rng rng = Rng::stream(seed, "ga");
  std::vector<Genome> pop;
  pop.reserve(pop_size);
  if (params.seed_heuristic)
    pop.push_back(encode(heuristic_individual(ctx, mode), mode));
  while (pop.size() < pop_size)
    pop.push_back(encode(random_individual(ctx, mode, params.init_attempts, rng), mode));

  GaResult result;
  std::vector<Evaluation> evals(pop_size);
  std::uint64_t generation = 0;

  auto evaluate_range = [&](std::size_t first)
  {
    parallel_for(pop_size - first, params.threads, [&](std::size_t k)
    {
      const std::size_t i = first + k;
      auto decoded = decode(pop[i], ctx, mode);
      std::optional<Rng> shadow;
      if (shadowed)
        shadow = Rng::stream(seed, "shadowing", generation * pop_size + i);
      evals[i] = evaluate_decoded(decoded, ctx, mode, shadow ? &*shadow : nullptr);
      pop[i] = encode(decoded, mode);
    });
    result.evaluations += pop_size - first;
  };

  Evaluation best_eval;
  best_eval.finding.kind = CollisionFinding::Kind::BoundsViolation;
  best_eval.fitness = -1.0;
  auto track_best = [&]
  {
    for (std::size_t i = 0; i < pop_size; ++i)
    {
      if (better(evals[i], best_eval))
      {
        best_eval = evals[i];
        result.best_genome = pop[i];
      }
    }
    result.fitness_history.push_back(best_eval.fitness);
  };

  evaluate_range(0);
  track_best();

  const auto elites = static_cast<std::size_t>(params.elitism);
  for (int g = 0; g < params.generations; ++g)
  {
    ++generation;
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b)
    {
      return better(evals[a], evals[b]);
    });

    std::vector<Genome> next;
    std::vector<Evaluation> next_evals;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < elites; ++e)
    {
      next.push_back(pop[order[e]]);
      next_evals.push_back(evals[order[e]]);
    }

    while (next.size() < pop_size)
    {
      Genome a = pop[tournament(evals, params.tournament_size, rng)];
      Genome b = pop[tournament(evals, params.tournament_size, rng)];
      if (rng.uniform() < params.crossover_rate)
      {
        for (std::size_t k = 0; k < length; ++k)
        {
          if (rng.uniform() < 0.5)
            std::swap(a.genes[k], b.genes[k]);
        }
      }
      for (Genome* child : {&a, &b})
      {
        for (std::size_t k = 0; k < length; ++k)
        {
          if (rng.uniform() < params.mutation_rate)
          {
            child->genes[k] += params.mutation_sigma_frac
              * gene_span(mode, k, ctx.cfg) * rng.normal();
          }
        }
      }
      next.push_back(std::move(a));
      if (next.size() < pop_size)
        next.push_back(std::move(b));
    }

    pop = std::move(next);
    std::copy(next_evals.begin(), next_evals.end(), evals.begin());
    evaluate_range(elites);
    track_best();
  }

  result.best_fitness = std::max(best_eval.fitness, 0.0);
  result.feasible_found = best_eval.feasible();
  result.wall_time_s = std::chrono::duration<double>(
    std::chrono::steady_clock::now() - start).count();
  return result;
}

//==============================================================================
bool TargetBand::contains_all(const std::vector<Vec2>& positions) const
{
  return std::all_of(positions.begin(), positions.end(), [&](Vec2 p)
  {
    return p.y >= y_min - GeometryTolerance && p.y <= y_max + GeometryTolerance;
  });
}

TargetBand epoch_final_band(std::size_t epoch, const ScenarioConfig& cfg)
{
  const SlotCell cell = slot_cell(epoch, static_cast<std::size_t>(cfg.scored_slots()), cfg);
  return {cell.y_min, cell.y_max};
}

TrajectoryPlan run_mission(const GaParams& params,
  const std::vector<Vec2>& initial_positions, Vec2 jammer, TargetBand target,
  const ScenarioConfig& cfg, std::uint64_t seed, std::size_t max_epochs)
{
  require_valid(cfg);
  if (initial_positions.size() != static_cast<std::size_t>(cfg.num_uavs))
    throw std::invalid_argument("run_mission: initial positions do not match num_uavs");

  const auto start = check_start(initial_positions, cfg, 0);
  if (!start.ok())
    throw InfeasibleStart("initial positions violate the active rule: "
      + to_string(start.kind));

  GaParams epoch_params = params;
  epoch_params.mode = GaMode::PositionProgressing;

  TrajectoryPlan plan;
  plan.complete = false;
  std::vector<Vec2> current = initial_positions;
  for (std::size_t e = 0; e < max_epochs; ++e)
  {
    if (target.contains_all(current))
      break;

    GaContext ctx{current, jammer, cfg, e};
    const GaResult r = run_ga(epoch_params, ctx, mix_seed(seed, e));
    const DecodedGenome d = decode(r.best_genome, ctx, GaMode::PositionProgressing);
    plan.epochs.push_back(d.block);
    plan.fitness_per_epoch.push_back(r.feasible_found ? r.best_fitness : 0.0);
    plan.feasible = plan.feasible && r.feasible_found;
    current = d.block.column(d.block.num_points() - 1);
  }
  plan.complete = target.contains_all(current);
  return plan;
}

//==============================================================================
double canonical_rotation(Vec2 center, Vec2 target)
{
  const Vec2 d = target - center;
  if (d.x == 0.0 && d.y == 0.0)
    throw std::invalid_argument("canonical_rotation: target coincides with the swarm center");

  double theta = std::numbers::pi / 2.0 - std::atan2(d.y, d.x);
  if (theta > std::numbers::pi)
    theta -= 2.0 * std::numbers::pi;
  return theta;
}

CanonicalFrame to_canonical_frame(const std::vector<Vec2>& initial_positions,
  Vec2 jammer, Vec2 target, const ScenarioConfig& cfg)
{
  const SlotCell start_cell = slot_cell(0, 0, cfg);
  const Vec2 circle = start_cell.center();
  const double radius = 0.5 * cfg.cell_size_m;
  for (const auto& p : initial_positions)
  {
    if (distance(p, circle) > radius + GeometryTolerance)
      throw InfeasibleStart("initial position outside the circle inscribed in the first cell");
  }

  CanonicalFrame f;
  f.center = centroid(initial_positions);
  f.rotation_rad = canonical_rotation(f.center, target);
  for (const auto& p : initial_positions)
  {
    const Vec2 q = rotate_about(p, f.center, f.rotation_rad);
    if (!start_cell.contains(q, GeometryTolerance))
      throw InfeasibleStart("rotated start position leaves the first cell");
    f.initial_positions.push_back(start_cell.clamp(q));
  }
  f.jammer = rotate_about(jammer, f.center, f.rotation_rad);
  f.target = rotate_about(target, f.center, f.rotation_rad);

  // Stop at the first epoch whose final cell reaches the target.
  std::size_t epoch = 0;
  while (epoch_final_band(epoch, cfg).y_max < f.target.y)
    ++epoch;
  f.band = epoch_final_band(epoch, cfg);
  return f;
}

TrajectoryPlan run_adaptive(const GaParams& params,
  const std::vector<Vec2>& initial_positions, Vec2 jammer, Vec2 target,
  const ScenarioConfig& cfg, std::uint64_t seed, std::size_t max_epochs)
{
  const CanonicalFrame f = to_canonical_frame(initial_positions, jammer, target, cfg);
  TrajectoryPlan plan = run_mission(params, f.initial_positions, f.jammer, f.band,
    cfg, seed, max_epochs);

  for (auto& block : plan.epochs)
  {
    for (std::size_t i = 0; i < block.num_uavs(); ++i)
    {
      for (std::size_t t = 0; t < block.num_points(); ++t)
        block.at(i, t) = rotate_about(block.at(i, t), f.center, -f.rotation_rad);
    }
  }
  plan.rotation_angle_deg = rad_to_deg(f.rotation_rad);
  return plan;
}

} // namespace nullswarm
