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

#ifndef NULLSWARM__ENV_HPP
#define NULLSWARM__ENV_HPP

#include <nullswarm/motion.hpp>
#include <nullswarm/scenario.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nullswarm {

//==============================================================================
struct EnvConfig
{
  enum class Randomize { Fixed, Randomized };

  ScenarioConfig base;
  Randomize randomize = Randomize::Fixed;
  std::optional<std::vector<Vec2>> fixed_initials;
  std::optional<Vec2> fixed_jammer;
  double reward_scale = 1e6;

  /// Randomized mode draws the jammer uniformly in this box.
  Vec2 jammer_min{0.0, 500.0};
  Vec2 jammer_max{60.0, 500.0};
};

/// Fixed mode with a square four-UAV formation and the jammer ahead of the
/// corridor.
EnvConfig make_default_env_config();

/// Throws std::invalid_argument (or InvalidConfig) on an unusable config.
void require_valid(const EnvConfig& cfg);

std::string to_string(EnvConfig::Randomize mode);

//==============================================================================
// Observation layout, all doubles:
//   [0, 2N)          UAV position inside the current slot cell, / cell size
//   [2N, 2N+2)       jammer offset from the cell center, / JammerRange
//   2N+2             slot / T
//   [2N+3, ...)      log10(1 + C_ij) / CapacityLogScale for pairs i < j

inline constexpr double JammerRange = 1000.0;
inline constexpr double CapacityLogScale = 10.0;

std::size_t observation_size(std::size_t num_uavs);

/// Inverse of the position part of the observation.
std::vector<Vec2> denormalize_positions(const std::vector<double>& observation,
  std::size_t num_uavs, std::size_t slot, const ScenarioConfig& cfg);

struct StepResult
{
  std::vector<double> observation;
  double reward = 0.0;
  bool done = false;
  /// Slot fitness of the realized positions, reported even when the reward
  /// was zeroed by a violation.
  double fitness = 0.0;
  std::size_t slot = 0;
  std::optional<CollisionFinding::Kind> violation;
};

//==============================================================================
/// One epoch of the swarm as a sequential decision process. Actions are 2N
/// values in [-1, 1] scaling a move of up to v_max * T_ts per axis; null
/// angles always point at the jammer.
class Environment
{
public:
  explicit Environment(EnvConfig cfg);

  std::vector<double> reset(std::uint64_t seed);

  /// Throws std::logic_error before reset or after done, and
  /// std::invalid_argument for a wrong-length or non-finite action.
  StepResult step(const std::vector<double>& action);

  bool started() const { return _started; }
  bool done() const { return _done; }
  std::size_t slot() const { return _slot; }
  const EnvConfig& config() const { return _cfg; }
  const std::vector<Vec2>& positions() const { return _positions; }
  Vec2 jammer() const { return _jammer; }

  /// Realized columns 0..slot.
  PositionBlock trajectory() const;

  std::vector<double> observe() const;

private:
  EnvConfig _cfg;
  bool _started = false;
  bool _done = false;
  std::size_t _slot = 0;
  std::vector<Vec2> _positions;
  std::vector<std::vector<Vec2>> _history;
  Vec2 _jammer;
  Rng _shadowing{0};
};

} // namespace nullswarm

#endif // NULLSWARM__ENV_HPP
