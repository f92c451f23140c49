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

#include <nullswarm/plan_io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nullswarm {

using nlohmann::json;

std::string serialize_plan(const PlanFile& file)
{
  const TrajectoryPlan& plan = file.plan;
  json epochs = json::array();
  for (const PositionBlock& block : plan.epochs)
  {
    json rows = json::array();
    for (std::size_t i = 0; i < block.num_uavs(); ++i)
    {
      json row = json::array();
      for (std::size_t s = 0; s < block.num_points(); ++s)
      {
        row.push_back(block.at(i, s).x);
        row.push_back(block.at(i, s).y);
      }
      rows.push_back(std::move(row));
    }
    epochs.push_back(std::move(rows));
  }

  json j;
  j["format"] = "nullswarm-plan";
  j["version"] = 1;
  j["epochs"] = std::move(epochs);
  j["fitness_per_epoch"] = plan.fitness_per_epoch;
  j["rotation_angle_deg"] = plan.rotation_angle_deg
    ? json(*plan.rotation_angle_deg) : json(nullptr);
  j["complete"] = plan.complete;
  j["feasible"] = plan.feasible;
  j["jammer"] = {file.jammer.x, file.jammer.y};
  j["null_angles_deg"] = file.null_angles_deg
    ? json(*file.null_angles_deg) : json(nullptr);
  return j.dump(1) + "\n";
}

PlanFile parse_plan(const std::string& text)
{
  const json j = json::parse(text);
  if (j.value("format", "") != "nullswarm-plan" || j.value("version", 0) != 1)
    throw std::runtime_error("not a nullswarm plan file");

  PlanFile file;
  TrajectoryPlan& plan = file.plan;
  for (const auto& rows : j.at("epochs"))
  {
    if (!rows.is_array() || rows.empty())
      throw std::runtime_error("plan epoch must list UAV rows");
    const std::size_t n = rows.size();
    const std::size_t width = rows[0].size();
    if (width == 0 || width % 2 != 0)
      throw std::runtime_error("plan rows must hold x, y pairs");
    PositionBlock block(n, width / 2);
    for (std::size_t i = 0; i < n; ++i)
    {
      if (rows[i].size() != width)
        throw std::runtime_error("plan rows differ in length");
      for (std::size_t s = 0; s < width / 2; ++s)
        block.at(i, s) = {rows[i][2 * s].get<double>(), rows[i][2 * s + 1].get<double>()};
    }
    plan.epochs.push_back(std::move(block));
  }
  plan.fitness_per_epoch = j.at("fitness_per_epoch").get<std::vector<double>>();
  if (!j.at("rotation_angle_deg").is_null())
    plan.rotation_angle_deg = j.at("rotation_angle_deg").get<double>();
  plan.complete = j.at("complete").get<bool>();
  plan.feasible = j.at("feasible").get<bool>();

  const auto& jam = j.at("jammer");
  file.jammer = {jam.at(0).get<double>(), jam.at(1).get<double>()};
  if (!j.at("null_angles_deg").is_null())
    file.null_angles_deg = j.at("null_angles_deg").get<std::vector<double>>();
  return file;
}

PlanFile load_plan_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open plan '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_plan(buf.str());
}

void save_plan_file(const PlanFile& file, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write plan '" + path + "'");
  out << serialize_plan(file);
}

} // namespace nullswarm
