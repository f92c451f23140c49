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

#ifndef NULLSWARM__RECORDS_HPP
#define NULLSWARM__RECORDS_HPP

#include <nullswarm/scenario.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nullswarm {

/// One dataset row.
///
/// Features are ordered jammer x, jammer y, then UAV 0..N-1 each x, y.
/// The label holds the positions of slots 1..T (slot 0 is in the features).
/// Flattened labels are ordered UAV-major, then slot, then x, y.
struct SampleRecord
{
  std::vector<double> features;
  PositionBlock label_block;
  double fitness = 0.0;
  CollisionRule collision_rule = CollisionRule::Rule1;
  std::uint64_t seed = 0;
  /// "GA" or "predictor:<name>".
  std::string generator = "GA";

  Vec2 jammer() const;
  std::vector<Vec2> initial_positions() const;

  /// N x (T+1) block: the initial positions followed by the label.
  PositionBlock full_block() const;
};

std::vector<double> make_features(Vec2 jammer, const std::vector<Vec2>& initial_positions);

std::vector<double> flatten_label(const PositionBlock& label_block);

/// Inverse of flatten_label. Throws when the size is not num_uavs * 2 * slots.
PositionBlock unflatten_label(const std::vector<double>& flat,
  std::size_t num_uavs, std::size_t scored_slots);

/// Prepends the initial positions to a label block.
PositionBlock with_initial_column(const std::vector<Vec2>& initial_positions,
  const PositionBlock& label_block);

} // namespace nullswarm

#endif // NULLSWARM__RECORDS_HPP
