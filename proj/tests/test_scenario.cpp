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

#include <nullswarm/scenario.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

using namespace nullswarm;

namespace {

bool names_field(const std::vector<ConfigViolation>& v, const std::string& field)
{
  return std::any_of(v.begin(), v.end(),
    [&](const ConfigViolation& c) { return c.field == field; });
}

} // anonymous namespace

TEST_CASE("Default config carries the experiment parameters")
{
  const ScenarioConfig c = make_default_config();
  CHECK(c.path_loss_exponent == 2.7);
  CHECK(c.jammer_power_dbm == 100.0);
  CHECK(c.slots_per_epoch == 6);
  CHECK(c.scored_slots() == 5);
  CHECK(c.wavelength_m == 0.125);
  CHECK(c.bandwidth_hz == 20e6);
  CHECK(c.uav_tx_power_dbm == 20.0);
  CHECK(c.noise_power_dbm == -100.0);
  CHECK(c.min_separation_m == 20.0);
  CHECK(c.num_uavs == 4);
  CHECK(c.ref_path_loss_db == 30.0);
  CHECK(c.cell_size_m == 60.0);
  CHECK(c.epoch_length_m == 120.0);
  CHECK(c.v_max_mps == 20.0);
  CHECK(c.timeslot_duration_s == 2.23);
  CHECK(c.grid_resolution == 4);
  CHECK(c.alpha == 1.0);
  CHECK(c.beta == 1.0);
  CHECK(c.collision_rule == CollisionRule::Rule1);
  CHECK(c.shadowing_sigma_db == 0.0);
  CHECK(c.max_step_m() == doctest::Approx(44.6).epsilon(1e-12));
}

TEST_CASE("validate_config lists every violated field")
{
  CHECK(validate_config(make_default_config()).empty());

  ScenarioConfig c = make_default_config();
  c.bandwidth_hz = 0.0;
  CHECK(names_field(validate_config(c), "bandwidth_hz"));

  c = make_default_config();
  c.num_uavs = 1;
  CHECK(names_field(validate_config(c), "num_uavs"));

  c = make_default_config();
  c.bandwidth_hz = -1.0;
  c.num_uavs = 0;
  c.null_depth_floor_db = 3.0;
  c.slots_per_epoch = 1;
  const auto v = validate_config(c);
  CHECK(v.size() == 4);
  CHECK(names_field(v, "null_depth_floor_db"));
  CHECK(names_field(v, "slots_per_epoch"));
  CHECK_THROWS_AS(require_valid(c), InvalidConfig);

  c = make_default_config();
  c.jammer_power_dbm = -std::numeric_limits<double>::infinity();
  CHECK(validate_config(c).empty());
  c.jammer_power_dbm = std::numeric_limits<double>::quiet_NaN();
  CHECK(names_field(validate_config(c), "jammer_power_dbm"));
}

TEST_CASE("wrap_angle_deg")
{
  CHECK(wrap_angle_deg(360.0) == 0.0);
  CHECK(wrap_angle_deg(-90.0) == 270.0);
  CHECK(wrap_angle_deg(725.0) == 5.0);
  CHECK(wrap_angle_deg(0.0) == 0.0);
  CHECK_THROWS_AS(wrap_angle_deg(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(wrap_angle_deg(std::nan("")), std::domain_error);

  SUBCASE("Idempotent and congruent over sampled angles")
  {
    Rng rng(11);
    for (int k = 0; k < 20000; ++k)
    {
      const double a = rng.uniform(-1e5, 1e5);
      const double w = wrap_angle_deg(a);
      REQUIRE(w >= 0.0);
      REQUIRE(w < 360.0);
      CHECK(wrap_angle_deg(w) == w);
      const double turns = (a - w) / 360.0;
      CHECK(std::abs(turns - std::round(turns)) < 1e-9);
    }
    // The largest double below zero wraps to just under 360, never to 360.
    const double tiny = -std::numeric_limits<double>::denorm_min();
    CHECK(wrap_angle_deg(tiny) < 360.0);
  }
}

TEST_CASE("Bearings and rotations use counter-clockwise degrees from +x")
{
  CHECK(bearing_deg({0, 0}, {0, 500}) == doctest::Approx(90.0));
  CHECK(bearing_deg({0, 500}, {0, 0}) == doctest::Approx(270.0));
  CHECK(bearing_deg({0, 0}, {500, 500}) == doctest::Approx(45.0));
  CHECK(wrap_signed_deg(270.0) == doctest::Approx(-90.0));
  CHECK(wrap_signed_deg(-180.0) == doctest::Approx(180.0));

  const Vec2 p{3.25, -7.5};
  CHECK(rotate_about(p, {1, 1}, 0.0) == p);
  const Vec2 q = rotate_about({1, 0}, {0, 0}, std::acos(-1.0) / 2.0);
  CHECK(q.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.y == doctest::Approx(1.0));

  const Vec2 c = centroid({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(c == Vec2{1, 1});
  CHECK_THROWS(centroid({}));
}

TEST_CASE("PositionBlock and plan invariants")
{
  PositionBlock b(2, 3);
  b.at(1, 2) = {4, 5};
  CHECK(b.column(2)[1] == Vec2{4, 5});
  CHECK_THROWS(b.at(2, 0));
  CHECK_THROWS(b.set_column(0, {{0, 0}}));

  TrajectoryPlan plan;
  PositionBlock e0(1, 2);
  PositionBlock e1(1, 2);
  e0.at(0, 1) = {1.0, 60.0};
  e1.at(0, 0) = {1.0, 60.0};
  plan.epochs = {e0, e1};
  plan.fitness_per_epoch = {1.0, 2.0};
  CHECK(check_plan_invariants(plan).empty());

  SUBCASE("Chaining is compared exactly")
  {
    plan.epochs[1].at(0, 0).y = std::nextafter(60.0, 61.0);
    CHECK_FALSE(check_plan_invariants(plan).empty());
  }
  SUBCASE("Fitness vector length")
  {
    plan.fitness_per_epoch.pop_back();
    CHECK_FALSE(check_plan_invariants(plan).empty());
  }
  SUBCASE("Negative fitness")
  {
    plan.fitness_per_epoch[0] = -1.0;
    CHECK_FALSE(check_plan_invariants(plan).empty());
  }
}

TEST_CASE("SwarmState wraps angles and rejects ragged input")
{
  const auto s = SwarmState::make({{0, 0}, {1, 1}}, {-90.0, 450.0}, {0, 500});
  CHECK(s.null_angles_deg[0] == 270.0);
  CHECK(s.null_angles_deg[1] == 90.0);
  CHECK_THROWS(SwarmState::make({{0, 0}}, {1.0, 2.0}, {0, 0}));
}

TEST_CASE("Rng streams are deterministic and independent of draw history")
{
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 100; ++k)
    CHECK(a.next() == b.next());

  Rng s1 = Rng::stream(7, "ga", 3);
  Rng s2 = Rng::stream(7, "ga", 3);
  CHECK(s1.next() == s2.next());
  CHECK(Rng::stream(7, "ga", 3).next() != Rng::stream(7, "ga", 4).next());
  CHECK(Rng::stream(7, "ga", 3).next() != Rng::stream(7, "baseline", 3).next());
  CHECK(Rng::stream(7, "ga", 3).next() != Rng::stream(8, "ga", 3).next());

  SUBCASE("Uniform and normal moments")
  {
    Rng r(5);
    const int n = 200000;
    double sum = 0.0;
    double nsum = 0.0;
    double nsq = 0.0;
    for (int k = 0; k < n; ++k)
    {
      const double u = r.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
      const double z = r.normal();
      nsum += z;
      nsq += z * z;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(nsum / n) < 0.01);
    CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.02));
  }

  SUBCASE("index covers its range")
  {
    Rng r(9);
    std::set<std::size_t> seen;
    for (int k = 0; k < 1000; ++k)
    {
      const auto i = r.index(7);
      REQUIRE(i < 7);
      seen.insert(i);
    }
    CHECK(seen.size() == 7);
  }
}

TEST_CASE("Config file format")
{
  SUBCASE("Round trip is a fixpoint")
  {
    const std::string text = serialize_config(make_default_config());
    CHECK(serialize_config(parse_config(text)) == text);
  }

  SUBCASE("Random configs round-trip bit-identically")
  {
    Rng rng(3);
    for (int k = 0; k < 200; ++k)
    {
      ScenarioConfig c = make_default_config();
      c.wavelength_m = rng.uniform(0.01, 1.0);
      c.bandwidth_hz = rng.uniform(1e5, 1e8);
      c.uav_tx_power_dbm = rng.uniform(-10, 40);
      c.jammer_power_dbm = k % 7 == 0
        ? -std::numeric_limits<double>::infinity() : rng.uniform(0, 120);
      c.path_loss_exponent = rng.uniform(1.5, 4.0);
      c.shadowing_sigma_db = rng.uniform(0.0, 8.0);
      c.alpha = rng.uniform(0.0, 2.0);
      c.beta = rng.uniform(0.0, 2.0);
      c.num_uavs = 2 + static_cast<int>(rng.index(6));
      c.collision_rule = parse_rule(1 + static_cast<int>(rng.index(3)));
      c.edge_aggregation = static_cast<EdgeAggregation>(rng.index(3));
      c.jammer_pattern.kind = k % 2 ? JammerPattern::Kind::CosinePower
                                    : JammerPattern::Kind::Isotropic;
      c.jammer_pattern.q = rng.uniform(1.0, 5.0);
      c.jammer_pattern.max_gain_db = rng.uniform(0.0, 20.0);
      c.rng_seed = rng.next();

      const std::string text = serialize_config(c);
      const ScenarioConfig back = parse_config(text);
      CHECK(serialize_config(back) == text);
      CHECK(back.alpha == c.alpha);
      CHECK(back.rng_seed == c.rng_seed);
      CHECK(back.jammer_power_dbm == c.jammer_power_dbm);
    }
  }

  SUBCASE("Comments, blank lines, and partial files")
  {
    const auto c = parse_config(
      "# swarm\n\nnum_uavs = 6   # more UAVs\ncollision_rule = 3\n"
      "edge_aggregation = mean\njammer_pattern = cosine_power(2, 10)\n");
    CHECK(c.num_uavs == 6);
    CHECK(c.collision_rule == CollisionRule::Rule3);
    CHECK(c.edge_aggregation == EdgeAggregation::Mean);
    CHECK(c.jammer_pattern.kind == JammerPattern::Kind::CosinePower);
    CHECK(c.jammer_pattern.q == 2.0);
    CHECK(c.jammer_pattern.max_gain_db == 10.0);
    CHECK(c.path_loss_exponent == 2.7);
  }

  SUBCASE("Errors name the line")
  {
    CHECK_THROWS_WITH_AS(parse_config("num_uavs = 4\nbogus = 1\n"),
      doctest::Contains("line 2"), std::runtime_error);
    CHECK_THROWS_AS(parse_config("num_uavs = four\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config("num_uavs\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config("collision_rule = 4\n"), std::runtime_error);
  }

  SUBCASE("Missing file")
  {
    CHECK_THROWS_AS(load_config_file("/nonexistent/nullswarm.cfg"), std::runtime_error);
  }
}

TEST_CASE("mix_seed and fnv1a")
{
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}
