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

#ifndef NULLSWARM__DATASET_HPP
#define NULLSWARM__DATASET_HPP

#include <nullswarm/ga.hpp>
#include <nullswarm/records.hpp>
#include <nullswarm/scenario.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace nullswarm {

/// Centers of a grid_resolution x grid_resolution subdivision of the first
/// cell, row by row.
std::vector<Vec2> grid_points(const ScenarioConfig& cfg);

struct SampleSpec
{
  enum class Mode
  {
    /// Initial positions on distinct grid points, jammer x on the grid columns.
    Discrete,
    /// Uniform initial positions and jammer.
    Continuous,
  };

  std::size_t count = 0;
  Mode mode = Mode::Discrete;
  double jammer_x_min = 0.0;
  double jammer_x_max = 60.0;
  double jammer_y_min = 500.0;
  double jammer_y_max = 500.0;
  /// Worker threads. Records are identical for any value.
  unsigned threads = 1;
};

std::string to_string(SampleSpec::Mode mode);

/// Draws the initial positions and jammer for sample `index`. Under Rule 3
/// the initial positions are redrawn until separated. A non-zero `redraw`
/// selects an independent alternative draw for the same index.
struct SampleContext
{
  std::vector<Vec2> initial_positions;
  Vec2 jammer;
};

SampleContext draw_sample_context(const ScenarioConfig& cfg, const SampleSpec& spec,
  std::uint64_t seed, std::size_t index, std::size_t redraw = 0);

struct DatasetHeader
{
  std::string cfg_hash;
  std::size_t num_uavs = 0;
  std::size_t scored_slots = 0;
  CollisionRule collision_rule = CollisionRule::Rule1;
  SampleSpec::Mode mode = SampleSpec::Mode::Discrete;
  std::uint64_t seed = 0;
};

DatasetHeader make_header(const ScenarioConfig& cfg, SampleSpec::Mode mode,
  std::uint64_t seed);

/// Hex digest of the serialized config.
std::string config_hash(const ScenarioConfig& cfg);

/// Runs the GA on every sample and hands finished records to `sink` in index
/// order. No two samples share a feature vector: a context already drawn is
/// replaced by the next redraw of the same index. Samples whose GA never found a feasible plan are skipped and
/// reported through `warn`. Throws std::invalid_argument when discrete mode
/// asks for more distinct grid points than exist.
std::vector<SampleRecord> generate_dataset(const ScenarioConfig& cfg,
  const GaParams& ga_params, const SampleSpec& spec, std::uint64_t seed,
  const std::function<void(const SampleRecord&)>& sink = {},
  const std::function<void(const std::string&)>& warn = {});

//==============================================================================
// Dataset files: a header line, then one JSON record per line.

std::string serialize_header(const DatasetHeader& header);
std::string serialize_record(const SampleRecord& record);
DatasetHeader parse_header(const std::string& line);
SampleRecord parse_record(const std::string& line, std::size_t num_uavs,
  std::size_t scored_slots);

struct Dataset
{
  DatasetHeader header;
  std::vector<SampleRecord> records;
};

void write_dataset(std::ostream& out, const Dataset& dataset);
Dataset read_dataset(std::istream& in);
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& dataset, const std::string& path);

/// Prediction files: one line per test sample, {"index": i, "label": [...]}
/// with the label in dataset-record layout.
std::string serialize_prediction(std::size_t index, const PositionBlock& label_block);
std::vector<PositionBlock> load_predictions(const std::string& path,
  std::size_t num_uavs, std::size_t scored_slots);

//==============================================================================
struct MetricTable
{
  std::string algorithm;
  CollisionRule collision_rule = CollisionRule::Rule1;
  double mean_fitness = 0.0;
  double mean_c_avg_bps = 0.0;
  double mean_c_min_bps = 0.0;
  double collision_pct = 0.0;
  double med_m = 0.0;
  double mean_wall_time_s = 0.0;
  std::size_t samples = 0;
  /// Per-sample fitness in sample order.
  std::vector<double> per_sample_fitness;
};

/// Scores full N x (T+1) predicted blocks against the GA references.
/// Violating samples count 0 fitness but still report their capacities.
/// C_avg and C_min are averaged over the scored slots, then over samples.
/// MED is the mean distance between predicted and reference final positions.
MetricTable evaluate_predictor(const std::string& algorithm,
  const std::vector<PositionBlock>& predictions,
  const std::vector<SampleRecord>& references, const ScenarioConfig& cfg,
  double mean_wall_time_s = 0.0);

inline constexpr const char* MetricCsvHeader =
  "algorithm,rule,mean_fitness,mean_c_avg_bps,mean_c_min_bps,"
  "collision_pct,med_m,mean_wall_time_s";

std::string metric_csv_row(const MetricTable& table);
std::string metric_json(const MetricTable& table);

} // namespace nullswarm

#endif // NULLSWARM__DATASET_HPP
