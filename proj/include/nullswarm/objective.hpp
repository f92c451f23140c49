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

#ifndef NULLSWARM__OBJECTIVE_HPP
#define NULLSWARM__OBJECTIVE_HPP

#include <nullswarm/radio.hpp>
#include <nullswarm/scenario.hpp>

#include <vector>

namespace nullswarm {

/// The pattern every UAV carries, steered by its null angle.
GainPattern uav_pattern(const ScenarioConfig& cfg);

/// The jammer's pattern. CosinePower is aimed at the swarm centroid.
GainPattern jammer_gain_pattern(const ScenarioConfig& cfg);

/// Shannon capacity of the link tx -> rx, including jammer interference at
/// the receiver. When `shadowing` is given and the config enables shadowing,
/// one Gaussian draw is taken for the signal path and one for the jammer path.
double directed_capacity_bps(const SwarmState& state, std::size_t tx,
  std::size_t rx, const ScenarioConfig& cfg, Rng* shadowing = nullptr);

//==============================================================================
struct LinkEdge
{
  std::size_t i;
  std::size_t j;
  double capacity_bps;
};

struct LinkReport
{
  /// Unordered pairs (i < j) in lexicographic order, or every ordered pair
  /// under EdgeAggregation::Directed.
  std::vector<LinkEdge> edges;
  double c_avg_bps = 0.0;
  double c_min_bps = 0.0;
  double fitness = 0.0;
};

/// C_avg^alpha * C_min^beta over already-computed edge capacities.
LinkReport aggregate_edges(std::vector<LinkEdge> edges, const ScenarioConfig& cfg);

LinkReport link_report(const SwarmState& state, const ScenarioConfig& cfg,
  Rng* shadowing = nullptr);

//==============================================================================
/// Null angles pointing every UAV's null at the jammer.
std::vector<double> nulls_toward(const std::vector<Vec2>& positions, Vec2 jammer);

struct EpochObjective
{
  /// Reports for the scored slots 1..T.
  std::vector<LinkReport> per_slot;
  double objective = 0.0;
};

/// Scores slots 1..T of a block with every null steered at the jammer. Slot 0
/// is the fixed initial condition and is not scored. Throws on a block whose
/// shape does not match the config.
EpochObjective epoch_objective(const PositionBlock& block, Vec2 jammer,
  const ScenarioConfig& cfg, Rng* shadowing = nullptr);

} // namespace nullswarm

#endif // NULLSWARM__OBJECTIVE_HPP
