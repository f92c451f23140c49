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

#ifndef NULLSWARM__SCENARIO_HPP
#define NULLSWARM__SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nullswarm {

//==============================================================================
/// Planar position or displacement in meters.
struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double dot(Vec2 other) const { return x * other.x + y * other.y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Vec2 a, Vec2 b) { return (b - a).norm(); }

/// The mission corridor advances along +y. Table-style scenario files place
/// the target band and the jammer downrange in y.
inline constexpr Vec2 MissionAxis{0.0, 1.0};

//==============================================================================
enum class CollisionRule
{
  /// Collisions allowed everywhere.
  Rule1 = 1,
  /// Pairwise separation enforced at the final slot only.
  Rule2 = 2,
  /// Pairwise separation enforced along the whole continuous trajectory.
  Rule3 = 3,
};

/// How the two directed capacities of a UAV pair become graph edges.
enum class EdgeAggregation
{
  Min,
  Mean,
  /// Every ordered pair is its own edge.
  Directed,
};

struct JammerPattern
{
  enum class Kind { Isotropic, CosinePower };

  Kind kind = Kind::Isotropic;
  double q = 1.0;
  double max_gain_db = 0.0;
};

//==============================================================================
/// Every physical, propagation, and spatio-temporal parameter of a scenario.
///
/// `slots_per_epoch` counts timeslot points t0..t(T) inside one epoch, so the
/// number of scored decision slots is `slots_per_epoch - 1`.
struct ScenarioConfig
{
  double wavelength_m = 0.125;
  double bandwidth_hz = 20e6;
  double uav_tx_power_dbm = 20.0;
  /// -inf disables the jammer.
  double jammer_power_dbm = 100.0;
  double noise_power_dbm = -100.0;
  double min_separation_m = 20.0;
  int num_uavs = 4;

  double ref_distance_m = 1.0;
  double ref_path_loss_db = 30.0;
  double path_loss_exponent = 2.7;
  double shadowing_sigma_db = 0.0;

  double cell_size_m = 60.0;
  double epoch_length_m = 120.0;
  double v_max_mps = 20.0;
  double timeslot_duration_s = 2.23;
  int slots_per_epoch = 6;
  int grid_resolution = 4;

  double alpha = 1.0;
  double beta = 1.0;
  CollisionRule collision_rule = CollisionRule::Rule1;
  EdgeAggregation edge_aggregation = EdgeAggregation::Min;
  double null_depth_floor_db = -60.0;
  JammerPattern jammer_pattern;
  std::uint64_t rng_seed = 1;

  int scored_slots() const { return slots_per_epoch - 1; }
  double max_step_m() const { return v_max_mps * timeslot_duration_s; }
};

ScenarioConfig make_default_config();

struct ConfigViolation
{
  std::string field;
  std::string message;
};

/// Returns every violated invariant. Empty means the config is valid.
std::vector<ConfigViolation> validate_config(const ScenarioConfig& cfg);

class InvalidConfig : public std::invalid_argument
{
public:
  explicit InvalidConfig(std::vector<ConfigViolation> violations);

  const std::vector<ConfigViolation>& violations() const
  {
    return _violations;
  }

private:
  std::vector<ConfigViolation> _violations;
};

/// Throws InvalidConfig when validate_config reports anything.
void require_valid(const ScenarioConfig& cfg);

//==============================================================================
/// Wraps a finite angle into [0, 360). Throws std::domain_error otherwise.
double wrap_angle_deg(double deg);

/// Wraps a finite angle into (-180, 180].
double wrap_signed_deg(double deg);

/// Bearing from `from` to `to`, counter-clockwise from +x, in [0, 360).
double bearing_deg(Vec2 from, Vec2 to);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Rotates `p` about `center` by `angle_rad` counter-clockwise. An angle of
/// exactly zero returns `p` unchanged.
Vec2 rotate_about(Vec2 p, Vec2 center, double angle_rad);

Vec2 centroid(const std::vector<Vec2>& points);

//==============================================================================
struct SwarmState
{
  std::vector<Vec2> positions;
  std::vector<double> null_angles_deg;
  Vec2 jammer;

  /// Builds a state with the angles wrapped into [0, 360). Throws when the
  /// list lengths disagree.
  static SwarmState make(
    std::vector<Vec2> positions,
    std::vector<double> null_angles_deg,
    Vec2 jammer);

  std::size_t size() const { return positions.size(); }
};

//==============================================================================
/// N UAVs by (T+1) timeslot points. Column 0 is the epoch's initial condition.
class PositionBlock
{
public:
  PositionBlock() = default;
  PositionBlock(std::size_t num_uavs, std::size_t num_points);

  std::size_t num_uavs() const { return _num_uavs; }
  std::size_t num_points() const { return _num_points; }

  Vec2& at(std::size_t uav, std::size_t slot);
  const Vec2& at(std::size_t uav, std::size_t slot) const;

  std::vector<Vec2> column(std::size_t slot) const;
  void set_column(std::size_t slot, const std::vector<Vec2>& positions);

  friend bool operator==(const PositionBlock&, const PositionBlock&) = default;

private:
  std::size_t _num_uavs = 0;
  std::size_t _num_points = 0;
  std::vector<Vec2> _data;
};

/// The multi-epoch Best Solution Matrix plus its fitness vector.
struct TrajectoryPlan
{
  std::vector<PositionBlock> epochs;
  std::vector<double> fitness_per_epoch;
  std::optional<double> rotation_angle_deg;
  /// False when the mission stopped at its epoch budget before the target.
  bool complete = true;
  /// False when some epoch's optimizer never saw a feasible candidate.
  bool feasible = true;

  std::size_t num_epochs() const { return epochs.size(); }
};

/// Checks the chaining and fitness invariants of a plan. Returns an empty
/// string when they hold, otherwise a description of the first failure.
std::string check_plan_invariants(const TrajectoryPlan& plan);

//==============================================================================
/// Deterministic 64-bit generator with named sub-streams derived from a seed.
class Rng
{
public:
  explicit Rng(std::uint64_t seed);

  /// Stream derived from (seed, name, index), independent of draw history.
  static Rng stream(std::uint64_t seed, std::string_view name,
    std::uint64_t index = 0);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  double normal();

private:
  std::uint64_t _state[4];
  std::optional<double> _spare_normal;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t fnv1a(std::string_view text);

//==============================================================================
// Config file: one `key = value` per line, `#` starts a comment.

std::string serialize_config(const ScenarioConfig& cfg);

/// Parses config text over the defaults. Throws std::runtime_error naming the
/// line on unknown keys or unparseable values.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base);

ScenarioConfig load_config_file(const std::string& path);
void save_config_file(const ScenarioConfig& cfg, const std::string& path);

/// Applies one `key = value` override.
void set_config_field(ScenarioConfig& cfg, std::string_view key,
  std::string_view value);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

CollisionRule parse_rule(int rule);

} // namespace nullswarm

#endif // NULLSWARM__SCENARIO_HPP
