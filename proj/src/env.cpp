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

#include <nullswarm/env.hpp>

#include <nullswarm/objective.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nullswarm {

EnvConfig make_default_env_config()
{
  EnvConfig cfg;
  cfg.base = make_default_config();
  cfg.fixed_initials = std::vector<Vec2>{
    {7.5, 7.5}, {52.5, 7.5}, {7.5, 52.5}, {52.5, 52.5}};
  cfg.fixed_jammer = Vec2{30.0, 500.0};
  return cfg;
}

void require_valid(const EnvConfig& cfg)
{
  require_valid(cfg.base);
  if (!(cfg.reward_scale > 0.0) || !std::isfinite(cfg.reward_scale))
    throw std::invalid_argument("reward_scale must be positive and finite");
  if (!cfg.jammer_min.finite() || !cfg.jammer_max.finite()
    || cfg.jammer_min.x > cfg.jammer_max.x || cfg.jammer_min.y > cfg.jammer_max.y)
  {
    throw std::invalid_argument("jammer band must be a finite box with min <= max");
  }

  if (cfg.randomize == EnvConfig::Randomize::Fixed)
  {
    if (!cfg.fixed_initials || !cfg.fixed_jammer)
      throw std::invalid_argument("fixed mode needs fixed_initials and fixed_jammer");
    if (cfg.fixed_initials->size() != static_cast<std::size_t>(cfg.base.num_uavs))
      throw std::invalid_argument("fixed_initials must hold one position per UAV");
    if (!cfg.fixed_jammer->finite())
      throw std::invalid_argument("fixed_jammer must be finite");
    const auto finding = check_start(*cfg.fixed_initials, cfg.base);
    if (!finding.ok())
      throw std::invalid_argument("fixed_initials rejected: " + to_string(finding.kind));
  }
}

std::string to_string(EnvConfig::Randomize mode)
{
  return mode == EnvConfig::Randomize::Fixed ? "fixed" : "randomized";
}

std::size_t observation_size(std::size_t num_uavs)
{
  return 2 * num_uavs + 3 + num_uavs * (num_uavs - 1) / 2;
}

std::vector<Vec2> denormalize_positions(const std::vector<double>& observation,
  std::size_t num_uavs, std::size_t slot, const ScenarioConfig& cfg)
{
  if (observation.size() < 2 * num_uavs)
    throw std::invalid_argument("observation too short");
  const SlotCell cell = slot_cell(0, slot, cfg);
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < num_uavs; ++i)
  {
    out.push_back({cell.x_min + observation[2 * i] * cfg.cell_size_m,
      cell.y_min + observation[2 * i + 1] * cfg.cell_size_m});
  }
  return out;
}

//==============================================================================
Environment::Environment(EnvConfig cfg)
  : _cfg(std::move(cfg))
{
  require_valid(_cfg);
}

std::vector<double> Environment::reset(std::uint64_t seed)
{
  const ScenarioConfig& base = _cfg.base;
  const auto n = static_cast<std::size_t>(base.num_uavs);

  if (_cfg.randomize == EnvConfig::Randomize::Fixed)
  {
    _positions = *_cfg.fixed_initials;
    _jammer = *_cfg.fixed_jammer;
  }
  else
  {
    Rng rng = Rng::stream(seed, "env-reset");
    const SlotCell cell = slot_cell(0, 0, base);
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt)
    {
      _positions.clear();
      for (std::size_t i = 0; i < n; ++i)
      {
        _positions.push_back({rng.uniform(cell.x_min, cell.x_max),
          rng.uniform(cell.y_min, cell.y_max)});
      }
      placed = check_start(_positions, base).ok();
    }
    if (!placed)
      throw std::runtime_error("no starting formation satisfies the collision rule");
    _jammer = {rng.uniform(_cfg.jammer_min.x, _cfg.jammer_max.x),
      rng.uniform(_cfg.jammer_min.y, _cfg.jammer_max.y)};
  }

  _shadowing = Rng::stream(seed, "env-shadowing");
  _history.assign(1, _positions);
  _slot = 0;
  _started = true;
  _done = false;
  return observe();
}

PositionBlock Environment::trajectory() const
{
  PositionBlock block(_positions.size(), _history.size());
  for (std::size_t s = 0; s < _history.size(); ++s)
    block.set_column(s, _history[s]);
  return block;
}

namespace {

/// One edge per unordered pair whatever the configured aggregation.
LinkReport pair_report(const std::vector<Vec2>& positions, Vec2 jammer,
  const ScenarioConfig& cfg, Rng* shadowing)
{
  ScenarioConfig c = cfg;
  if (c.edge_aggregation == EdgeAggregation::Directed)
    c.edge_aggregation = EdgeAggregation::Min;
  return link_report(
    SwarmState::make(positions, nulls_toward(positions, jammer), jammer), c, shadowing);
}

} // anonymous namespace

std::vector<double> Environment::observe() const
{
  if (!_started)
    throw std::logic_error("environment has not been reset");

  const ScenarioConfig& base = _cfg.base;
  const SlotCell cell = slot_cell(0, _slot, base);
  std::vector<double> obs;
  obs.reserve(observation_size(_positions.size()));
  for (const Vec2& p : _positions)
  {
    obs.push_back((p.x - cell.x_min) / base.cell_size_m);
    obs.push_back((p.y - cell.y_min) / base.cell_size_m);
  }
  const Vec2 rel = _jammer - cell.center();
  obs.push_back(rel.x / JammerRange);
  obs.push_back(rel.y / JammerRange);
  obs.push_back(static_cast<double>(_slot) / base.scored_slots());

  // Observations never consume shadowing draws so they stay reproducible.
  for (const auto& e : pair_report(_positions, _jammer, base, nullptr).edges)
    obs.push_back(std::log10(1.0 + e.capacity_bps) / CapacityLogScale);
  return obs;
}

StepResult Environment::step(const std::vector<double>& action)
{
  if (!_started)
    throw std::logic_error("environment has not been reset");
  if (_done)
    throw std::logic_error("episode is done");

  const ScenarioConfig& base = _cfg.base;
  const std::size_t n = _positions.size();
  if (action.size() != 2 * n)
    throw std::invalid_argument("action must hold 2N values");
  for (double a : action)
  {
    if (!std::isfinite(a))
      throw std::invalid_argument("action values must be finite");
  }

  const double reach = base.max_step_m();
  const SlotCell next = slot_cell(0, _slot + 1, base);
  std::vector<Vec2> moved(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    const Vec2 delta{std::clamp(action[2 * i], -1.0, 1.0) * reach,
      std::clamp(action[2 * i + 1], -1.0, 1.0) * reach};
    moved[i] = reachable_in_cell(_positions[i], _positions[i] + delta, next, base);
  }

  _positions = std::move(moved);
  _history.push_back(_positions);
  ++_slot;
  const bool final_slot = _slot == static_cast<std::size_t>(base.scored_slots());

  // Rule 2 only judges the final column, so earlier prefixes are checked
  // for bounds and speed alone.
  ScenarioConfig check_cfg = base;
  if (base.collision_rule == CollisionRule::Rule2 && !final_slot)
    check_cfg.collision_rule = CollisionRule::Rule1;
  const CollisionFinding finding = check_plan(trajectory(), check_cfg);

  StepResult r;
  r.slot = _slot;
  r.fitness = link_report(SwarmState::make(_positions,
    nulls_toward(_positions, _jammer), _jammer), base, &_shadowing).fitness;
  if (finding.ok())
  {
    r.reward = r.fitness / _cfg.reward_scale;
  }
  else
  {
    r.violation = finding.kind;
    r.reward = 0.0;
  }
  _done = final_slot || !finding.ok();
  r.done = _done;
  r.observation = observe();
  return r;
}

} // namespace nullswarm
