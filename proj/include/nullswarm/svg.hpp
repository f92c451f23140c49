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

#ifndef NULLSWARM__SVG_HPP
#define NULLSWARM__SVG_HPP

#include <nullswarm/scenario.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nullswarm {

/// Corridor cells, UAV paths, the jammer, and (when given) each UAV's null
/// direction at the last waypoint. `blocks` are consecutive epochs.
std::string trajectory_svg(const std::vector<PositionBlock>& blocks, Vec2 jammer,
  const ScenarioConfig& cfg,
  const std::optional<std::vector<double>>& final_null_angles_deg = std::nullopt,
  const std::string& title = "", bool draw_cells = true);

/// Static formation in the start cell with its null directions.
std::string formation_svg(const std::vector<Vec2>& positions,
  const std::vector<double>& null_angles_deg, Vec2 jammer,
  const ScenarioConfig& cfg, const std::string& title = "");

/// Polyline chart of one series against its index.
std::string line_chart_svg(const std::vector<double>& values,
  const std::string& title, const std::string& x_label, const std::string& y_label);

} // namespace nullswarm

#endif // NULLSWARM__SVG_HPP
