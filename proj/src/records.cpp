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

#include <nullswarm/records.hpp>

#include <stdexcept>

namespace nullswarm {

Vec2 SampleRecord::jammer() const
{
  if (features.size() < 2)
    throw std::invalid_argument("SampleRecord: feature vector too short");
  return {features[0], features[1]};
}

std::vector<Vec2> SampleRecord::initial_positions() const
{
  if (features.size() < 2 || features.size() % 2 != 0)
    throw std::invalid_argument("SampleRecord: malformed feature vector");
  std::vector<Vec2> out;
  for (std::size_t k = 2; k < features.size(); k += 2)
    out.push_back({features[k], features[k + 1]});
  return out;
}

PositionBlock SampleRecord::full_block() const
{
  return with_initial_column(initial_positions(), label_block);
}

std::vector<double> make_features(Vec2 jammer, const std::vector<Vec2>& initial_positions)
{
  std::vector<double> f{jammer.x, jammer.y};
  for (const auto& p : initial_positions)
  {
    f.push_back(p.x);
    f.push_back(p.y);
  }
  return f;
}

std::vector<double> flatten_label(const PositionBlock& label_block)
{
  std::vector<double> flat;
  flat.reserve(label_block.num_uavs() * label_block.num_points() * 2);
  for (std::size_t i = 0; i < label_block.num_uavs(); ++i)
  {
    for (std::size_t t = 0; t < label_block.num_points(); ++t)
    {
      flat.push_back(label_block.at(i, t).x);
      flat.push_back(label_block.at(i, t).y);
    }
  }
  return flat;
}

PositionBlock unflatten_label(const std::vector<double>& flat,
  std::size_t num_uavs, std::size_t scored_slots)
{
  if (flat.size() != num_uavs * scored_slots * 2)
    throw std::invalid_argument("unflatten_label: size does not match N x T x 2");

  PositionBlock block(num_uavs, scored_slots);
  std::size_t k = 0;
  for (std::size_t i = 0; i < num_uavs; ++i)
  {
    for (std::size_t t = 0; t < scored_slots; ++t, k += 2)
      block.at(i, t) = {flat[k], flat[k + 1]};
  }
  return block;
}

PositionBlock with_initial_column(const std::vector<Vec2>& initial_positions,
  const PositionBlock& label_block)
{
  if (initial_positions.size() != label_block.num_uavs())
    throw std::invalid_argument("with_initial_column: UAV count mismatch");

  PositionBlock block(label_block.num_uavs(), label_block.num_points() + 1);
  block.set_column(0, initial_positions);
  for (std::size_t i = 0; i < label_block.num_uavs(); ++i)
  {
    for (std::size_t t = 0; t < label_block.num_points(); ++t)
      block.at(i, t + 1) = label_block.at(i, t);
  }
  return block;
}

} // namespace nullswarm
