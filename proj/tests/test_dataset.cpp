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

#include <nullswarm/baselines.hpp>
#include <nullswarm/dataset.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace nullswarm;

namespace {

GaParams quick_ga()
{
  GaParams p;
  p.population_size = 12;
  p.generations = 4;
  return p;
}

std::string dataset_text(const Dataset& d)
{
  std::ostringstream out;
  write_dataset(out, d);
  return out.str();
}

Dataset small_dataset(CollisionRule rule, std::size_t count, std::uint64_t seed,
  SampleSpec::Mode mode = SampleSpec::Mode::Discrete, unsigned threads = 1)
{
  ScenarioConfig cfg = make_default_config();
  cfg.collision_rule = rule;
  SampleSpec spec;
  spec.count = count;
  spec.mode = mode;
  spec.threads = threads;
  Dataset d;
  d.header = make_header(cfg, mode, seed);
  d.records = generate_dataset(cfg, quick_ga(), spec, seed);
  return d;
}

} // anonymous namespace

TEST_CASE("Grid points")
{
  ScenarioConfig cfg = make_default_config();
  auto pts = grid_points(cfg);
  CHECK(pts.size() == 16);
  double lo = 1e9;
  double hi = -1e9;
  for (auto p : pts)
  {
    lo = std::min({lo, p.x, p.y});
    hi = std::max({hi, p.x, p.y});
  }
  CHECK(lo == 7.5);
  CHECK(hi == 52.5);

  cfg.grid_resolution = 1;
  pts = grid_points(cfg);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == Vec2{30, 30});

  cfg.grid_resolution = 2;
  pts = grid_points(cfg);
  REQUIRE(pts.size() == 4);
  for (auto p : pts)
  {
    CHECK((p.x == 15.0 || p.x == 45.0));
    CHECK((p.y == 15.0 || p.y == 45.0));
  }
}

TEST_CASE("Sample contexts")
{
  ScenarioConfig cfg = make_default_config();
  SampleSpec spec;
  spec.count = 100;

  SUBCASE("Discrete draws sit on distinct grid points")
  {
    const std::set<double> grid{7.5, 22.5, 37.5, 52.5};
    for (std::size_t i = 0; i < 100; ++i)
    {
      const auto c = draw_sample_context(cfg, spec, 5, i);
      std::set<std::pair<double, double>> seen;
      for (auto p : c.initial_positions)
      {
        CHECK(grid.count(p.x) == 1);
        CHECK(grid.count(p.y) == 1);
        seen.insert({p.x, p.y});
      }
      CHECK(seen.size() == 4);
      CHECK(grid.count(c.jammer.x) == 1);
      CHECK(c.jammer.y == 500.0);
      const auto again = draw_sample_context(cfg, spec, 5, i);
      CHECK(again.initial_positions == c.initial_positions);
      CHECK(again.jammer == c.jammer);
    }
  }

  SUBCASE("Continuous draws stay in range")
  {
    spec.mode = SampleSpec::Mode::Continuous;
    for (std::size_t i = 0; i < 100; ++i)
    {
      const auto c = draw_sample_context(cfg, spec, 5, i);
      for (auto p : c.initial_positions)
        CHECK(slot_cell(0, 0, cfg).contains(p));
      CHECK(c.jammer.x >= 0.0);
      CHECK(c.jammer.x <= 60.0);
    }
  }

  SUBCASE("Rule 3 starts are separated")
  {
    cfg.collision_rule = CollisionRule::Rule3;
    spec.mode = SampleSpec::Mode::Continuous;
    for (std::size_t i = 0; i < 50; ++i)
      CHECK(check_start(draw_sample_context(cfg, spec, 9, i).initial_positions, cfg).ok());
  }

  SUBCASE("Datasets never repeat a context")
  {
    cfg.grid_resolution = 2;
    GaParams tiny = quick_ga();
    tiny.population_size = 4;
    tiny.generations = 0;
    // 4! orderings of the four grid points times two jammer columns.
    spec.count = 48;
    const auto recs = generate_dataset(cfg, tiny, spec, 3);
    std::set<std::vector<double>> features;
    for (const auto& r : recs)
      features.insert(r.features);
    CHECK(features.size() == 48);
    spec.count = 49;
    CHECK_THROWS_AS(generate_dataset(cfg, tiny, spec, 3), std::invalid_argument);
  }

  SUBCASE("Too many UAVs for the grid")
  {
    cfg.num_uavs = 17;
    spec.count = 1;
    CHECK_THROWS_AS(generate_dataset(cfg, quick_ga(), spec, 1), std::invalid_argument);
  }
}

TEST_CASE("Generation is deterministic")
{
  const auto a = small_dataset(CollisionRule::Rule1, 10, 77);
  const auto b = small_dataset(CollisionRule::Rule1, 10, 77, SampleSpec::Mode::Discrete, 3);
  CHECK(a.records.size() == 10);
  CHECK(dataset_text(a) == dataset_text(b));
  CHECK(dataset_text(a) != dataset_text(small_dataset(CollisionRule::Rule1, 10, 78)));

  std::size_t streamed = 0;
  ScenarioConfig cfg = make_default_config();
  SampleSpec spec;
  spec.count = 10;
  const auto recs = generate_dataset(cfg, quick_ga(), spec, 77,
    [&](const SampleRecord& r)
    {
      CHECK(serialize_record(r) == serialize_record(a.records[streamed]));
      ++streamed;
    });
  CHECK(streamed == 10);
  CHECK(recs.size() == 10);
}

TEST_CASE("Dataset files round-trip")
{
  const auto d = small_dataset(CollisionRule::Rule2, 6, 3, SampleSpec::Mode::Continuous);
  const std::string text = dataset_text(d);
  std::istringstream in(text);
  const auto back = read_dataset(in);
  CHECK(dataset_text(back) == text);
  CHECK(back.header.cfg_hash == d.header.cfg_hash);
  CHECK(back.header.collision_rule == CollisionRule::Rule2);
  CHECK(back.header.mode == SampleSpec::Mode::Continuous);
  REQUIRE(back.records.size() == d.records.size());
  for (std::size_t i = 0; i < d.records.size(); ++i)
  {
    CHECK(back.records[i].features == d.records[i].features);
    CHECK(back.records[i].label_block == d.records[i].label_block);
    CHECK(back.records[i].fitness == d.records[i].fitness);
    CHECK(back.records[i].seed == d.records[i].seed);
  }

  const std::string path = "test_dataset_roundtrip.jsonl";
  save_dataset(d, path);
  CHECK(dataset_text(load_dataset(path)) == text);
  std::remove(path.c_str());

  SUBCASE("Bad lines name their line number")
  {
    std::istringstream broken(serialize_header(d.header) + "\n{\"features\": [1]}\n");
    try
    {
      read_dataset(broken);
      FAIL("expected a parse error");
    }
    catch (const std::exception& e)
    {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream empty("");
    CHECK_THROWS(read_dataset(empty));
  }

  SUBCASE("Config hashes follow the config")
  {
    ScenarioConfig cfg = make_default_config();
    const auto h = config_hash(cfg);
    CHECK(h.size() == 16);
    CHECK(config_hash(cfg) == h);
    cfg.bandwidth_hz *= 2.0;
    CHECK(config_hash(cfg) != h);
  }
}

TEST_CASE("Predictor evaluation")
{
  const ScenarioConfig cfg = make_default_config();
  const auto d = small_dataset(CollisionRule::Rule1, 8, 21);
  std::vector<PositionBlock> refs;
  for (const auto& r : d.records)
    refs.push_back(r.full_block());

  SUBCASE("The references score themselves")
  {
    const auto m = evaluate_predictor("GA", refs, d.records, cfg);
    CHECK(m.med_m == 0.0);
    CHECK(m.collision_pct == 0.0);
    CHECK(m.samples == 8);
    double mean = 0.0;
    for (std::size_t i = 0; i < d.records.size(); ++i)
    {
      CHECK(oracle::rel_diff(m.per_sample_fitness[i], d.records[i].fitness) < 1e-9);
      CHECK(oracle::rel_diff(m.per_sample_fitness[i],
        oracle::epoch_objective(refs[i], d.records[i].jammer(), cfg)) < 1e-9);
      mean += d.records[i].fitness;
    }
    CHECK(oracle::rel_diff(m.mean_fitness, mean / 8.0) < 1e-12);
    CHECK(m.mean_c_min_bps <= m.mean_c_avg_bps);
  }

  SUBCASE("A (3, 4) shift gives MED 5")
  {
    auto shifted = refs;
    for (auto& b : shifted)
    {
      for (std::size_t i = 0; i < b.num_uavs(); ++i)
      {
        for (std::size_t t = 0; t < b.num_points(); ++t)
          b.at(i, t) = b.at(i, t) + Vec2{3, 4};
      }
    }
    CHECK(evaluate_predictor("shift", shifted, d.records, cfg).med_m
      == doctest::Approx(5.0));
  }

  SUBCASE("Random plans collide under Rule 2")
  {
    ScenarioConfig c2 = cfg;
    c2.collision_rule = CollisionRule::Rule2;
    std::vector<PositionBlock> random;
    std::vector<SampleRecord> refs2;
    for (std::uint64_t s = 0; s < 100; ++s)
    {
      const auto& r = d.records[s % d.records.size()];
      random.push_back(random_plan(r.initial_positions(), c2, s, false).block);
      refs2.push_back(r);
    }
    const auto m = evaluate_predictor("random", random, refs2, c2);
    CHECK(m.collision_pct > 0.0);
    CHECK(m.mean_c_min_bps <= m.mean_c_avg_bps);
    for (std::size_t i = 0; i < random.size(); ++i)
    {
      if (!check_plan(random[i], c2).ok())
        CHECK(m.per_sample_fitness[i] == 0.0);
    }
  }

  SUBCASE("Shape mismatches are rejected")
  {
    CHECK_THROWS(evaluate_predictor("x", {refs[0]}, d.records, cfg));
    CHECK_THROWS(evaluate_predictor("x", std::vector<PositionBlock>(8, PositionBlock(4, 5)),
      d.records, cfg));
  }

  SUBCASE("Metric output")
  {
    const auto m = evaluate_predictor("GA", refs, d.records, cfg, 0.25);
    const std::string row = metric_csv_row(m);
    CHECK(row.rfind("GA,1,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',')
      == std::count(MetricCsvHeader, MetricCsvHeader + std::string(MetricCsvHeader).size(), ','));
    CHECK(metric_json(m).find("\"med_m\"") != std::string::npos);
  }
}

TEST_CASE("Rule 3 GA records never collide")
{
  const ScenarioConfig base = make_default_config();
  const auto d = small_dataset(CollisionRule::Rule3, 10, 4, SampleSpec::Mode::Continuous);
  ScenarioConfig cfg = base;
  cfg.collision_rule = CollisionRule::Rule3;
  std::vector<PositionBlock> refs;
  for (const auto& r : d.records)
  {
    refs.push_back(r.full_block());
    CHECK(r.collision_rule == CollisionRule::Rule3);
  }
  REQUIRE_FALSE(refs.empty());
  CHECK(evaluate_predictor("GA", refs, d.records, cfg).collision_pct == 0.0);
}

TEST_CASE("Prediction files")
{
  PositionBlock a(2, 2);
  a.at(0, 0) = {1, 2};
  a.at(1, 1) = {3.25, 4.5};
  PositionBlock b(2, 2);
  b.at(1, 0) = {9, 9};
  const std::string path = "test_predictions.jsonl";
  {
    std::ofstream out(path);
    out << serialize_prediction(0, a) << '\n' << serialize_prediction(1, b) << '\n';
  }
  const auto back = load_predictions(path, 2, 2);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);
  {
    std::ofstream out(path);
    out << serialize_prediction(1, b) << '\n';
  }
  CHECK_THROWS(load_predictions(path, 2, 2));
  {
    std::ofstream out(path);
    out << serialize_prediction(0, a) << '\n';
  }
  CHECK_THROWS(load_predictions(path, 3, 2));
  std::remove(path.c_str());
}
