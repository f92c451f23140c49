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

#ifndef NULLSWARM__BASELINES_HPP
#define NULLSWARM__BASELINES_HPP

#include <nullswarm/records.hpp>
#include <nullswarm/scenario.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nullswarm {

//==============================================================================
// Random placement

struct RandomPlan
{
  /// N x (T+1); column 0 holds the given initial positions.
  PositionBlock block;
  /// True when `respect_rule` was requested but no draw satisfied it.
  bool flagged = false;
};

/// Draws each waypoint uniformly in its slot cell and pulls it within one
/// timeslot's reach of the previous waypoint. With `respect_rule`, redraws
/// the whole epoch (up to 1000 times) until check_plan passes.
RandomPlan random_plan(const std::vector<Vec2>& initial_positions,
  const ScenarioConfig& cfg, std::uint64_t seed, bool respect_rule,
  std::size_t epoch = 0);

struct RandomFormation
{
  std::vector<Vec2> positions;
  std::vector<double> null_angles_deg;
  bool flagged = false;
};

/// Static counterpart: uniform positions in the start cell and uniform null
/// angles.
RandomFormation random_formation(const ScenarioConfig& cfg, std::uint64_t seed,
  bool respect_rule);

//==============================================================================
/// Points every UAV's null straight at the jammer. Throws std::invalid_argument
/// when a UAV sits on the jammer.
std::vector<double> null_at_jammer(const std::vector<Vec2>& positions, Vec2 jammer);

//==============================================================================
// K nearest neighbours over GA-labelled samples

struct KnnModel
{
  std::size_t k = 1;
  double weight_epsilon = 1e-9;
  std::size_t num_uavs = 0;
  std::size_t scored_slots = 0;
  std::vector<std::vector<double>> features;
  std::vector<std::vector<double>> labels;

  std::size_t feature_dim() const { return 2 + 2 * num_uavs; }
  std::size_t label_dim() const { return 2 * num_uavs * scored_slots; }
  std::size_t size() const { return features.size(); }
};

/// Throws std::invalid_argument for an empty or mixed dataset, or for k
/// outside [1, sample count].
KnnModel knn_fit(const std::vector<SampleRecord>& dataset, std::size_t k);

/// Inverse-distance weighted mean of the k nearest labels (flattened). Ties
/// in distance go to the lower sample index; a query that matches a sample
/// exactly returns that sample's label.
std::vector<double> knn_predict_flat(const KnnModel& model,
  const std::vector<double>& features);

/// knn_predict_flat as an N x (T+1) block starting at the query's positions.
PositionBlock knn_predict(const KnnModel& model, const std::vector<double>& features);

std::string serialize_knn(const KnnModel& model);
KnnModel parse_knn(const std::string& text);
void save_knn(const KnnModel& model, const std::string& path);
KnnModel load_knn(const std::string& path);

} // namespace nullswarm

#endif // NULLSWARM__BASELINES_HPP
