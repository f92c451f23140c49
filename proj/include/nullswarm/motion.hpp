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

#ifndef NULLSWARM__MOTION_HPP
#define NULLSWARM__MOTION_HPP

#include <nullswarm/scenario.hpp>

#include <optional>
#include <string>
#include <utility>

namespace nullswarm {

/// Slack allowed on cell bounds and the speed limit so that positions built
/// by convex combination or projection are not rejected for rounding.
inline constexpr double GeometryTolerance = 1e-9;

//==============================================================================
/// The square a UAV must occupy at one timeslot point.
struct SlotCell
{
  double x_min;
  double x_max;
  double y_min;
  double y_max;

  bool contains(Vec2 p, double tol = 0.0) const;
  Vec2 clamp(Vec2 p) const;
  Vec2 center() const;
};

/// Cell of slot `slot` (0..T) in epoch `epoch`. The corridor advances
/// linearly from the epoch's start cell to its final cell, and the final cell
/// of epoch e is the start cell of epoch e+1. Throws std::out_of_range for a
/// slot outside 0..T.
SlotCell slot_cell(std::size_t epoch, std::size_t slot, const ScenarioConfig& cfg);

bool speed_feasible(Vec2 from, Vec2 to, const ScenarioConfig& cfg);

/// Moves `target` onto the nearest point of the segment from `cell.clamp(from)`
/// to `cell.clamp(target)` that is reachable from `from` in one timeslot.
/// The result lies in the cell and within the speed limit of `from`.
Vec2 reachable_in_cell(Vec2 from, Vec2 target, const SlotCell& cell,
  const ScenarioConfig& cfg);

/// Minimum separation of two UAVs moving linearly and synchronously from a0
/// to a1 and from b0 to b1.
double segment_pair_min_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

//==============================================================================
struct CollisionFinding
{
  enum class Kind
  {
    None,
    FinalOverlap,
    TrajectoryOverlap,
    SpeedViolation,
    BoundsViolation,
  };

  Kind kind = Kind::None;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::optional<std::size_t> uav;
  std::optional<std::size_t> slot;
  /// Closest approach over the whole block, or the offending separation.
  double min_dist_m = 0.0;

  bool ok() const { return kind == Kind::None; }
};

std::string to_string(CollisionFinding::Kind kind);

/// Checks a block of epoch `epoch` against the cell bounds, the speed limit,
/// and the active collision rule. A one-column block is a static formation:
/// Rules 2 and 3 both require separation at that single point. Separation of
/// exactly d_min is legal. Bounds are scanned first (UAV, slot), then speed,
/// then separation (pairs lexicographic, slots ascending).
CollisionFinding check_plan(const PositionBlock& block, const ScenarioConfig& cfg,
  std::size_t epoch = 0);

/// Static formation inside the slot-0 cell of epoch 0.
CollisionFinding check_formation(const std::vector<Vec2>& positions,
  const ScenarioConfig& cfg);

/// True when the starting positions already break the active rule at t0.
/// Only Rule 3 constrains t0; bounds of the slot-0 cell always apply.
CollisionFinding check_start(const std::vector<Vec2>& positions,
  const ScenarioConfig& cfg, std::size_t epoch = 0);

} // namespace nullswarm

#endif // NULLSWARM__MOTION_HPP
