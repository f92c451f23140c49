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

#include <nullswarm/motion.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullswarm {

//==============================================================================
bool SlotCell::contains(Vec2 p, double tol) const
{
  return p.x >= x_min - tol && p.x <= x_max + tol
    && p.y >= y_min - tol && p.y <= y_max + tol;
}

Vec2 SlotCell::clamp(Vec2 p) const
{
  return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

Vec2 SlotCell::center() const
{
  return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)};
}

SlotCell slot_cell(std::size_t epoch, std::size_t slot, const ScenarioConfig& cfg)
{
  const auto last = static_cast<std::size_t>(cfg.scored_slots());
  if (slot > last)
    throw std::out_of_range("slot_cell: slot " + std::to_string(slot)
      + " outside 0.." + std::to_string(last));

  const double advance = cfg.epoch_length_m - cfg.cell_size_m;
  const double step = advance / static_cast<double>(last);
  // The final slot is computed from the next epoch's origin so that chaining
  // is exact for any cell/epoch geometry.
  const double y0 = slot == last
    ? static_cast<double>(epoch + 1) * advance
    : static_cast<double>(epoch) * advance + static_cast<double>(slot) * step;
  return {0.0, cfg.cell_size_m, y0, y0 + cfg.cell_size_m};
}

bool speed_feasible(Vec2 from, Vec2 to, const ScenarioConfig& cfg)
{
  return distance(from, to) <= cfg.max_step_m() + GeometryTolerance;
}

Vec2 reachable_in_cell(Vec2 from, Vec2 target, const SlotCell& cell,
  const ScenarioConfig& cfg)
{
  const double reach = cfg.max_step_m();
  const Vec2 goal = cell.clamp(target);
  if (distance(from, goal) <= reach)
    return goal;

  // Walk back along [anchor, goal] until inside the reach disc. The anchor is
  // the closest cell point to `from`, which is reachable whenever any cell
  // point is.
  const Vec2 anchor = cell.clamp(from);
  const Vec2 w = anchor - from;
  const Vec2 d = goal - anchor;
  const double a = d.dot(d);
  const double b = 2.0 * w.dot(d);
  const double c = w.dot(w) - reach * reach;
  if (a == 0.0 || c > 0.0)
    return anchor;

  const double disc = std::max(b * b - 4.0 * a * c, 0.0);
  double s = (-b + std::sqrt(disc)) / (2.0 * a);
  s = std::clamp(s, 0.0, 1.0) * (1.0 - 1e-12);
  return cell.clamp(anchor + s * d);
}

double segment_pair_min_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1)
{
  const Vec2 w0 = a0 - b0;
  const Vec2 dv = (a1 - a0) - (b1 - b0);
  const double dd = dv.dot(dv);
  if (dd == 0.0)
    return w0.norm();

  const double s = std::clamp(-w0.dot(dv) / dd, 0.0, 1.0);
  return (w0 + s * dv).norm();
}

//==============================================================================
std::string to_string(CollisionFinding::Kind kind)
{
  switch (kind)
  {
    case CollisionFinding::Kind::None: return "none";
    case CollisionFinding::Kind::FinalOverlap: return "final_overlap";
    case CollisionFinding::Kind::TrajectoryOverlap: return "trajectory_overlap";
    case CollisionFinding::Kind::SpeedViolation: return "speed_violation";
    case CollisionFinding::Kind::BoundsViolation: return "bounds_violation";
  }
  return "none";
}

namespace {

double closest_approach(const PositionBlock& block)
{
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = block.num_uavs();
  const std::size_t m = block.num_points();
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      if (m == 1)
      {
        best = std::min(best, distance(block.at(i, 0), block.at(j, 0)));
        continue;
      }
      for (std::size_t t = 0; t + 1 < m; ++t)
      {
        best = std::min(best, segment_pair_min_distance(
          block.at(i, t), block.at(i, t + 1), block.at(j, t), block.at(j, t + 1)));
      }
    }
  }
  return std::isfinite(best) ? best : 0.0;
}

} // anonymous namespace

CollisionFinding check_plan(const PositionBlock& block, const ScenarioConfig& cfg,
  std::size_t epoch)
{
  const std::size_t n = block.num_uavs();
  const std::size_t m = block.num_points();
  if (m == 0 || m > static_cast<std::size_t>(cfg.slots_per_epoch))
    throw std::invalid_argument("check_plan: block has too many timeslot points");

  CollisionFinding f;
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t t = 0; t < m; ++t)
    {
      if (!slot_cell(epoch, t, cfg).contains(block.at(i, t), GeometryTolerance))
      {
        f.kind = CollisionFinding::Kind::BoundsViolation;
        f.uav = i;
        f.slot = t;
        return f;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t t = 1; t < m; ++t)
    {
      if (!speed_feasible(block.at(i, t - 1), block.at(i, t), cfg))
      {
        f.kind = CollisionFinding::Kind::SpeedViolation;
        f.uav = i;
        f.slot = t;
        return f;
      }
    }
  }

  const double d_min = cfg.min_separation_m;
  if (cfg.collision_rule == CollisionRule::Rule2
    || (cfg.collision_rule == CollisionRule::Rule3 && m == 1))
  {
    const std::size_t last = m - 1;
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = i + 1; j < n; ++j)
      {
        const double d = distance(block.at(i, last), block.at(j, last));
        if (d < d_min)
        {
          f.kind = m == 1 && cfg.collision_rule == CollisionRule::Rule3
            ? CollisionFinding::Kind::TrajectoryOverlap
            : CollisionFinding::Kind::FinalOverlap;
          f.pair = std::make_pair(i, j);
          f.slot = last;
          f.min_dist_m = d;
          return f;
        }
      }
    }
  }
  else if (cfg.collision_rule == CollisionRule::Rule3)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = i + 1; j < n; ++j)
      {
        for (std::size_t t = 0; t + 1 < m; ++t)
        {
          const double d = segment_pair_min_distance(
            block.at(i, t), block.at(i, t + 1), block.at(j, t), block.at(j, t + 1));
          if (d < d_min)
          {
            f.kind = CollisionFinding::Kind::TrajectoryOverlap;
            f.pair = std::make_pair(i, j);
            f.slot = t + 1;
            f.min_dist_m = d;
            return f;
          }
        }
      }
    }
  }

  f.min_dist_m = closest_approach(block);
  return f;
}

CollisionFinding check_formation(const std::vector<Vec2>& positions,
  const ScenarioConfig& cfg)
{
  PositionBlock block(positions.size(), 1);
  block.set_column(0, positions);
  return check_plan(block, cfg, 0);
}

CollisionFinding check_start(const std::vector<Vec2>& positions,
  const ScenarioConfig& cfg, std::size_t epoch)
{
  PositionBlock block(positions.size(), 1);
  block.set_column(0, positions);
  ScenarioConfig start_cfg = cfg;
  if (cfg.collision_rule != CollisionRule::Rule3)
    start_cfg.collision_rule = CollisionRule::Rule1;
  return check_plan(block, start_cfg, epoch);
}

} // namespace nullswarm
