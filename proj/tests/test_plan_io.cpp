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

#include <nullswarm/ga.hpp>
#include <nullswarm/plan_io.hpp>
#include <nullswarm/svg.hpp>

#include <doctest.h>

#include <cstdio>

using namespace nullswarm;

namespace {

TrajectoryPlan short_mission()
{
  GaParams p;
  p.population_size = 10;
  p.generations = 3;
  const ScenarioConfig cfg = make_default_config();
  return run_mission(p, {{7.5, 7.5}, {52.5, 7.5}, {7.5, 52.5}, {52.5, 52.5}},
    {30, 500}, TargetBand{120, 180}, cfg, 2, 10);
}

} // anonymous namespace

TEST_CASE("Plan files round-trip")
{
  PlanFile f;
  f.plan = short_mission();
  f.jammer = {30, 500};
  REQUIRE(f.plan.num_epochs() == 2);

  const std::string text = serialize_plan(f);
  const PlanFile back = parse_plan(text);
  CHECK(back.jammer == f.jammer);
  CHECK(back.plan.epochs == f.plan.epochs);
  CHECK(back.plan.fitness_per_epoch == f.plan.fitness_per_epoch);
  CHECK(back.plan.complete == f.plan.complete);
  CHECK(back.plan.feasible == f.plan.feasible);
  CHECK_FALSE(back.plan.rotation_angle_deg);
  CHECK_FALSE(back.null_angles_deg);
  CHECK(serialize_plan(back) == text);

  SUBCASE("Optional fields")
  {
    f.plan.rotation_angle_deg = -33.25;
    f.null_angles_deg = std::vector<double>{1.5, 90, 180.25, 359.9};
    const PlanFile g = parse_plan(serialize_plan(f));
    REQUIRE(g.plan.rotation_angle_deg);
    CHECK(*g.plan.rotation_angle_deg == -33.25);
    CHECK(g.null_angles_deg == f.null_angles_deg);
  }

  SUBCASE("Files")
  {
    const std::string path = "test_plan_io.json";
    save_plan_file(f, path);
    CHECK(serialize_plan(load_plan_file(path)) == text);
    std::remove(path.c_str());
    CHECK_THROWS(load_plan_file("does/not/exist.json"));
  }

  SUBCASE("Malformed input")
  {
    CHECK_THROWS(parse_plan("{"));
    CHECK_THROWS(parse_plan("{\"format\":\"something-else\",\"version\":1}"));
    CHECK_THROWS(parse_plan(
      "{\"format\":\"nullswarm-plan\",\"version\":1,\"epochs\":[[[1,2,3]]]}"));
  }
}

TEST_CASE("Figures are deterministic SVG")
{
  const ScenarioConfig cfg = make_default_config();
  const auto plan = short_mission();

  const std::string t = trajectory_svg(plan.epochs, {30, 500}, cfg, std::nullopt, "run");
  CHECK(t == trajectory_svg(plan.epochs, {30, 500}, cfg, std::nullopt, "run"));
  CHECK(t.rfind("<svg", 0) == 0);
  CHECK(t.find("</svg>") != std::string::npos);
  CHECK(t.find("run") != std::string::npos);
  CHECK(t != trajectory_svg(plan.epochs, {30, 500}, cfg, std::nullopt, "run", false));

  const std::vector<Vec2> p{{10, 10}, {50, 10}, {30, 50}};
  const std::string f = formation_svg(p, {90, 90, 90}, {30, 500}, cfg, "formation");
  CHECK(f == formation_svg(p, {90, 90, 90}, {30, 500}, cfg, "formation"));
  CHECK(f.find("</svg>") != std::string::npos);

  const std::string c = line_chart_svg({1, 2, 2, 5}, "fitness", "generation", "F");
  CHECK(c.find("<polyline") != std::string::npos);
  CHECK(c.find("generation") != std::string::npos);
  CHECK_NOTHROW(line_chart_svg({}, "empty", "x", "y"));
  CHECK_NOTHROW(line_chart_svg({3, 3}, "flat", "x", "y"));
}
