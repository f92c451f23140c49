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

#ifndef NULLSWARM__GA_HPP
#define NULLSWARM__GA_HPP

#include <nullswarm/motion.hpp>
#include <nullswarm/objective.hpp>
#include <nullswarm/scenario.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullswarm {

//==============================================================================
enum class GaMode
{
  /// Formation fixed, one null angle per UAV.
  OrientationOnly,
  /// Position and null angle per UAV inside the start cell.
  JointStatic,
  /// Position per UAV inside the start cell, nulls steered at the jammer.
  PositionStatic,
  /// Positions for slots 1..T of one epoch, nulls steered at the jammer.
  PositionProgressing,
};

std::string to_string(GaMode mode);
GaMode parse_ga_mode(const std::string& text);

struct GaParams
{
  int population_size = 50;
  int generations = 50;
  int tournament_size = 3;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  /// Mutation standard deviation as a fraction of the gene's span (the cell
  /// side for coordinates, 360 degrees for angles).
  double mutation_sigma_frac = 0.1;
  int elitism = 2;
  GaMode mode = GaMode::PositionProgressing;
  /// Put one constructed individual in the initial population: the
  /// null-toward-jammer formation for static modes, the formation advancing
  /// rigidly with the corridor for PositionProgressing.
  bool seed_heuristic = true;
  /// Resampling attempts per random individual under Rules 2 and 3.
  int init_attempts = 100;
  /// Worker threads for population evaluation. Results do not depend on it.
  unsigned threads = 1;
};

/// Throws std::invalid_argument naming the first bad field.
void validate(const GaParams& params);

/// Everything a genome is decoded against.
struct GaContext
{
  std::vector<Vec2> initial_positions;
  Vec2 jammer;
  ScenarioConfig cfg;
  std::size_t epoch = 0;
};

struct Genome
{
  std::vector<double> genes;

  friend bool operator==(const Genome&, const Genome&) = default;
};

std::size_t genome_length(GaMode mode, const ScenarioConfig& cfg);

/// A genome turned into geometry. Static modes produce a one-column block.
struct DecodedGenome
{
  PositionBlock block;
  /// Null angles of the static formation; empty for PositionProgressing.
  std::vector<double> null_angles_deg;
};

/// Clamps coordinates into their cells, pulls progressing waypoints inside the
/// speed limit, and wraps angles. Throws on a genome of the wrong length.
DecodedGenome decode(const Genome& genome, const GaContext& ctx, GaMode mode);

/// Writes the repaired geometry of `decoded` back into genome form.
Genome encode(const DecodedGenome& decoded, GaMode mode);

struct Evaluation
{
  double fitness = 0.0;
  CollisionFinding finding;

  bool feasible() const { return finding.ok(); }
};

/// Fitness of a genome: the single-slot fitness for static modes, the epoch
/// objective for PositionProgressing, and 0 whenever check_plan reports
/// anything under the active rule.
Evaluation evaluate(const Genome& genome, const GaContext& ctx, GaMode mode);

struct GaResult
{
  Genome best_genome;
  double best_fitness = 0.0;
  bool feasible_found = false;
  /// Best-so-far fitness after the initial population and each generation.
  std::vector<double> fitness_history;
  std::size_t evaluations = 0;
  double wall_time_s = 0.0;
};

GaResult run_ga(const GaParams& params, const GaContext& ctx, std::uint64_t seed);

//==============================================================================
class InfeasibleStart : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Longitudinal band the whole swarm must reach.
struct TargetBand
{
  double y_min;
  double y_max;

  bool contains_all(const std::vector<Vec2>& positions) const;
};

/// Final cell of epoch `epoch` as a band.
TargetBand epoch_final_band(std::size_t epoch, const ScenarioConfig& cfg);

/// Optimizes epoch after epoch in PositionProgressing mode, each epoch
/// starting from the previous epoch's final positions, until every UAV lies
/// in `target` or `max_epochs` epochs have run.
TrajectoryPlan run_mission(const GaParams& params,
  const std::vector<Vec2>& initial_positions, Vec2 jammer, TargetBand target,
  const ScenarioConfig& cfg, std::uint64_t seed, std::size_t max_epochs);

//==============================================================================
/// Rotation (radians, CCW) about `center` that takes the direction toward
/// `target` onto the mission axis. Exactly zero when the target lies due +y.
double canonical_rotation(Vec2 center, Vec2 target);

/// Inputs of an adaptive run expressed in the canonical corridor frame.
struct CanonicalFrame
{
  Vec2 center;
  double rotation_rad = 0.0;
  std::vector<Vec2> initial_positions;
  Vec2 jammer;
  Vec2 target;
  TargetBand band;
};

/// Validates the start circle and rotates the scenario into the corridor
/// frame. Throws InfeasibleStart when a start lies outside the circle
/// inscribed in the first cell, or leaves the cell after rotation.
CanonicalFrame to_canonical_frame(const std::vector<Vec2>& initial_positions,
  Vec2 jammer, Vec2 target, const ScenarioConfig& cfg);

/// Adaptive Movement Model: rotates the scenario about the swarm's center of
/// mass so the target lies along the corridor, runs the mission there, and
/// rotates the Best Solution Matrix back.
TrajectoryPlan run_adaptive(const GaParams& params,
  const std::vector<Vec2>& initial_positions, Vec2 jammer, Vec2 target,
  const ScenarioConfig& cfg, std::uint64_t seed, std::size_t max_epochs = 50);

} // namespace nullswarm

#endif // NULLSWARM__GA_HPP
