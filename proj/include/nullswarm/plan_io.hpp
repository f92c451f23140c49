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

#ifndef NULLSWARM__PLAN_IO_HPP
#define NULLSWARM__PLAN_IO_HPP

#include <nullswarm/scenario.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nullswarm {

/// A plan as stored on disk, with the scenario pieces needed to re-check it.
struct PlanFile
{
  TrajectoryPlan plan;
  Vec2 jammer;
  /// Null angles of a static formation plan.
  std::optional<std::vector<double>> null_angles_deg;
};

/// JSON document: every block is a list of UAV rows holding x, y per point.
std::string serialize_plan(const PlanFile& file);
PlanFile parse_plan(const std::string& text);

PlanFile load_plan_file(const std::string& path);
void save_plan_file(const PlanFile& file, const std::string& path);

} // namespace nullswarm

#endif // NULLSWARM__PLAN_IO_HPP
