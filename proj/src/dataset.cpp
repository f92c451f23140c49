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

#include <nullswarm/dataset.hpp>

#include <nullswarm/motion.hpp>
#include <nullswarm/objective.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nullswarm {

using nlohmann::json;

std::vector<Vec2> grid_points(const ScenarioConfig& cfg)
{
  if (cfg.grid_resolution < 1)
    throw std::invalid_argument("grid_points: grid_resolution must be >= 1");

  const SlotCell cell = slot_cell(0, 0, cfg);
  const int res = cfg.grid_resolution;
  const double dx = (cell.x_max - cell.x_min) / res;
  const double dy = (cell.y_max - cell.y_min) / res;
  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(res * res));
  for (int r = 0; r < res; ++r)
  {
    for (int c = 0; c < res; ++c)
      points.push_back({cell.x_min + (c + 0.5) * dx, cell.y_min + (r + 0.5) * dy});
  }
  return points;
}

std::string to_string(SampleSpec::Mode mode)
{
  return mode == SampleSpec::Mode::Discrete ? "discrete" : "continuous";
}

namespace {

constexpr int ContextAttempts = 1000;

bool separated(const std::vector<Vec2>& positions, double d_min)
{
  for (std::size_t i = 0; i < positions.size(); ++i)
  {
    for (std::size_t j = i + 1; j < positions.size(); ++j)
    {
      if (distance(positions[i], positions[j]) < d_min)
        return false;
    }
  }
  return true;
}

double grid_coordinate(double lo, double hi, int res, Rng& rng)
{
  if (hi <= lo)
    return lo;
  const auto k = static_cast<double>(rng.index(static_cast<std::size_t>(res)));
  return lo + (k + 0.5) * (hi - lo) / res;
}

} // anonymous namespace

SampleContext draw_sample_context(const ScenarioConfig& cfg, const SampleSpec& spec,
  std::uint64_t seed, std::size_t index, std::size_t redraw)
{
  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  Rng rng = redraw == 0 ? Rng::stream(seed, "dataset", index)
    : Rng::stream(mix_seed(seed, redraw), "dataset-redraw", index);
  const bool needs_separation = cfg.collision_rule == CollisionRule::Rule3;

  SampleContext ctx;
  if (spec.mode == SampleSpec::Mode::Discrete)
  {
    const auto grid = grid_points(cfg);
    if (n > grid.size())
      throw std::invalid_argument("sample spec asks for " + std::to_string(n)
        + " distinct grid points but the grid has " + std::to_string(grid.size()));

    for (int a = 0; a < ContextAttempts; ++a)
    {
      std::vector<std::size_t> idx(grid.size());
      for (std::size_t k = 0; k < idx.size(); ++k)
        idx[k] = k;
      ctx.initial_positions.clear();
      for (std::size_t i = 0; i < n; ++i)
      {
        const std::size_t pick = i + rng.index(idx.size() - i);
        std::swap(idx[i], idx[pick]);
        ctx.initial_positions.push_back(grid[idx[i]]);
      }
      if (!needs_separation || separated(ctx.initial_positions, cfg.min_separation_m))
        break;
      if (a + 1 == ContextAttempts)
        throw std::runtime_error("no separated grid formation found");
    }
    ctx.jammer = {
      grid_coordinate(spec.jammer_x_min, spec.jammer_x_max, cfg.grid_resolution, rng),
      grid_coordinate(spec.jammer_y_min, spec.jammer_y_max, cfg.grid_resolution, rng)};
    return ctx;
  }

  const SlotCell cell = slot_cell(0, 0, cfg);
  for (int a = 0; a < ContextAttempts; ++a)
  {
    ctx.initial_positions.clear();
    for (std::size_t i = 0; i < n; ++i)
    {
      ctx.initial_positions.push_back({rng.uniform(cell.x_min, cell.x_max),
        rng.uniform(cell.y_min, cell.y_max)});
    }
    if (!needs_separation || separated(ctx.initial_positions, cfg.min_separation_m))
      break;
    if (a + 1 == ContextAttempts)
      throw std::runtime_error("no separated continuous formation found");
  }
  ctx.jammer = {rng.uniform(spec.jammer_x_min, spec.jammer_x_max),
    rng.uniform(spec.jammer_y_min, spec.jammer_y_max)};
  return ctx;
}

std::string config_hash(const ScenarioConfig& cfg)
{
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
    static_cast<unsigned long long>(fnv1a(serialize_config(cfg))));
  return buf;
}

DatasetHeader make_header(const ScenarioConfig& cfg, SampleSpec::Mode mode,
  std::uint64_t seed)
{
  DatasetHeader h;
  h.cfg_hash = config_hash(cfg);
  h.num_uavs = static_cast<std::size_t>(cfg.num_uavs);
  h.scored_slots = static_cast<std::size_t>(cfg.scored_slots());
  h.collision_rule = cfg.collision_rule;
  h.mode = mode;
  h.seed = seed;
  return h;
}

std::vector<SampleRecord> generate_dataset(const ScenarioConfig& cfg,
  const GaParams& ga_params, const SampleSpec& spec, std::uint64_t seed,
  const std::function<void(const SampleRecord&)>& sink,
  const std::function<void(const std::string&)>& warn)
{
  require_valid(cfg);
  if (spec.mode == SampleSpec::Mode::Discrete
    && static_cast<std::size_t>(cfg.num_uavs) > grid_points(cfg).size())
  {
    throw std::invalid_argument("sample spec asks for more distinct grid points than exist");
  }

  // Contexts are drawn serially so that no two samples share a feature
  // vector; a duplicate would give one input two different labels.
  std::vector<SampleContext> contexts;
  contexts.reserve(spec.count);
  std::set<std::vector<double>> seen;
  for (std::size_t index = 0; index < spec.count; ++index)
  {
    for (std::size_t redraw = 0;; ++redraw)
    {
      if (redraw == static_cast<std::size_t>(ContextAttempts))
      {
        throw std::invalid_argument("sample " + std::to_string(index)
          + ": no unused context left; the grid is too coarse for this many samples");
      }
      SampleContext sc = draw_sample_context(cfg, spec, seed, index, redraw);
      if (seen.insert(make_features(sc.jammer, sc.initial_positions)).second)
      {
        contexts.push_back(std::move(sc));
        break;
      }
    }
  }

  GaParams params = ga_params;
  params.mode = GaMode::PositionProgressing;
  params.threads = 1;

  auto make_record = [&](std::size_t index) -> std::optional<SampleRecord>
  {
    const SampleContext& sc = contexts[index];
    const GaContext ctx{sc.initial_positions, sc.jammer, cfg, 0};
    const std::uint64_t ga_seed = Rng::stream(seed, "dataset-ga", index).next();
    const GaResult r = run_ga(params, ctx, ga_seed);
    if (!r.feasible_found)
      return std::nullopt;

    const PositionBlock block = decode(r.best_genome, ctx, GaMode::PositionProgressing).block;
    SampleRecord rec;
    rec.features = make_features(sc.jammer, sc.initial_positions);
    rec.label_block = PositionBlock(block.num_uavs(), block.num_points() - 1);
    for (std::size_t i = 0; i < block.num_uavs(); ++i)
    {
      for (std::size_t t = 1; t < block.num_points(); ++t)
        rec.label_block.at(i, t - 1) = block.at(i, t);
    }
    rec.fitness = r.best_fitness;
    rec.collision_rule = cfg.collision_rule;
    rec.seed = ga_seed;
    rec.generator = "GA";
    return rec;
  };

  std::vector<SampleRecord> out;
  out.reserve(spec.count);
  const std::size_t workers = std::max(1u, spec.threads);
  const std::size_t batch = workers * 4;
  for (std::size_t first = 0; first < spec.count; first += batch)
  {
    const std::size_t last = std::min(spec.count, first + batch);
    std::vector<std::optional<SampleRecord>> slots(last - first);
    if (workers == 1)
    {
      for (std::size_t i = first; i < last; ++i)
        slots[i - first] = make_record(i);
    }
    else
    {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w)
      {
        pool.emplace_back([&, w]
        {
          for (std::size_t i = first + w; i < last; i += workers)
            slots[i - first] = make_record(i);
        });
      }
      for (auto& t : pool)
        t.join();
    }

    for (std::size_t k = 0; k < slots.size(); ++k)
    {
      if (!slots[k])
      {
        if (warn)
          warn("sample " + std::to_string(first + k)
            + ": GA found no feasible plan, excluded");
        continue;
      }
      if (sink)
        sink(*slots[k]);
      out.push_back(std::move(*slots[k]));
    }
  }
  return out;
}

//==============================================================================
std::string serialize_header(const DatasetHeader& h)
{
  json j;
  j["format"] = "nullswarm-dataset";
  j["version"] = 1;
  j["cfg_hash"] = h.cfg_hash;
  j["num_uavs"] = h.num_uavs;
  j["scored_slots"] = h.scored_slots;
  j["rule"] = static_cast<int>(h.collision_rule);
  j["mode"] = to_string(h.mode);
  j["seed"] = h.seed;
  return j.dump();
}

DatasetHeader parse_header(const std::string& line)
{
  const auto j = json::parse(line);
  if (j.value("format", "") != "nullswarm-dataset")
    throw std::runtime_error("dataset header: not a nullswarm dataset");
  if (j.value("version", 0) != 1)
    throw std::runtime_error("dataset header: unsupported version");

  DatasetHeader h;
  h.cfg_hash = j.at("cfg_hash").get<std::string>();
  h.num_uavs = j.at("num_uavs").get<std::size_t>();
  h.scored_slots = j.at("scored_slots").get<std::size_t>();
  h.collision_rule = parse_rule(j.at("rule").get<int>());
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "discrete") h.mode = SampleSpec::Mode::Discrete;
  else if (mode == "continuous") h.mode = SampleSpec::Mode::Continuous;
  else throw std::runtime_error("dataset header: unknown mode '" + mode + "'");
  h.seed = j.at("seed").get<std::uint64_t>();
  return h;
}

namespace {

json label_json(const PositionBlock& label_block)
{
  json rows = json::array();
  for (std::size_t i = 0; i < label_block.num_uavs(); ++i)
  {
    json row = json::array();
    for (std::size_t t = 0; t < label_block.num_points(); ++t)
    {
      row.push_back(label_block.at(i, t).x);
      row.push_back(label_block.at(i, t).y);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PositionBlock label_from_json(const json& rows, std::size_t num_uavs,
  std::size_t scored_slots)
{
  if (!rows.is_array() || rows.size() != num_uavs)
    throw std::runtime_error("label must have one row per UAV");

  PositionBlock block(num_uavs, scored_slots);
  for (std::size_t i = 0; i < num_uavs; ++i)
  {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != 2 * scored_slots)
      throw std::runtime_error("label row must hold 2 x scored_slots numbers");
    for (std::size_t t = 0; t < scored_slots; ++t)
      block.at(i, t) = {row[2 * t].get<double>(), row[2 * t + 1].get<double>()};
  }
  return block;
}

} // anonymous namespace

std::string serialize_record(const SampleRecord& r)
{
  json j;
  j["features"] = r.features;
  j["label"] = label_json(r.label_block);
  j["fitness"] = r.fitness;
  j["rule"] = static_cast<int>(r.collision_rule);
  j["seed"] = r.seed;
  j["generator"] = r.generator;
  return j.dump();
}

SampleRecord parse_record(const std::string& line, std::size_t num_uavs,
  std::size_t scored_slots)
{
  const auto j = json::parse(line);
  SampleRecord r;
  r.features = j.at("features").get<std::vector<double>>();
  if (r.features.size() != 2 + 2 * num_uavs)
    throw std::runtime_error("record features must hold 2 + 2N numbers");
  r.label_block = label_from_json(j.at("label"), num_uavs, scored_slots);
  r.fitness = j.at("fitness").get<double>();
  r.collision_rule = parse_rule(j.at("rule").get<int>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.generator = j.at("generator").get<std::string>();
  return r;
}

void write_dataset(std::ostream& out, const Dataset& dataset)
{
  out << serialize_header(dataset.header) << '\n';
  for (const auto& r : dataset.records)
    out << serialize_record(r) << '\n';
}

Dataset read_dataset(std::istream& in)
{
  Dataset d;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("dataset: missing header line");
  d.header = parse_header(line);

  std::size_t line_no = 1;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
      continue;
    try
    {
      d.records.push_back(parse_record(line, d.header.num_uavs, d.header.scored_slots));
    }
    catch (const std::exception& e)
    {
      throw std::runtime_error("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return d;
}

Dataset load_dataset(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open dataset '" + path + "'");
  return read_dataset(in);
}

void save_dataset(const Dataset& dataset, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write dataset '" + path + "'");
  write_dataset(out, dataset);
}

std::string serialize_prediction(std::size_t index, const PositionBlock& label_block)
{
  json j;
  j["index"] = index;
  j["label"] = label_json(label_block);
  return j.dump();
}

std::vector<PositionBlock> load_predictions(const std::string& path,
  std::size_t num_uavs, std::size_t scored_slots)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open predictions '" + path + "'");

  std::vector<PositionBlock> out;
  std::string line;
  while (std::getline(in, line))
  {
    if (line.empty())
      continue;
    const auto j = json::parse(line);
    if (j.at("index").get<std::size_t>() != out.size())
      throw std::runtime_error("predictions must be listed in index order");
    out.push_back(label_from_json(j.at("label"), num_uavs, scored_slots));
  }
  return out;
}

//==============================================================================
MetricTable evaluate_predictor(const std::string& algorithm,
  const std::vector<PositionBlock>& predictions,
  const std::vector<SampleRecord>& references, const ScenarioConfig& cfg,
  double mean_wall_time_s)
{
  if (predictions.size() != references.size())
    throw std::invalid_argument("evaluate_predictor: predictions and references differ in count");
  if (predictions.empty())
    throw std::invalid_argument("evaluate_predictor: no samples");

  const auto n = static_cast<std::size_t>(cfg.num_uavs);
  const auto points = static_cast<std::size_t>(cfg.slots_per_epoch);

  MetricTable table;
  table.algorithm = algorithm;
  table.collision_rule = cfg.collision_rule;
  table.samples = predictions.size();
  table.mean_wall_time_s = mean_wall_time_s;

  std::size_t violations = 0;
  double med_sum = 0.0;
  for (std::size_t s = 0; s < predictions.size(); ++s)
  {
    const PositionBlock& pred = predictions[s];
    const PositionBlock ref = references[s].full_block();
    if (pred.num_uavs() != n || pred.num_points() != points || ref.num_points() != points)
      throw std::invalid_argument("evaluate_predictor: sample " + std::to_string(s)
        + " has the wrong shape");

    const auto finding = check_plan(pred, cfg);
    const auto eo = epoch_objective(pred, references[s].jammer(), cfg);
    const double fitness = finding.ok() ? eo.objective : 0.0;
    double c_avg = 0.0;
    double c_min = 0.0;
    for (const auto& slot : eo.per_slot)
    {
      c_avg += slot.c_avg_bps;
      c_min += slot.c_min_bps;
    }
    c_avg /= static_cast<double>(eo.per_slot.size());
    c_min /= static_cast<double>(eo.per_slot.size());

    table.per_sample_fitness.push_back(fitness);
    table.mean_fitness += fitness;
    table.mean_c_avg_bps += c_avg;
    table.mean_c_min_bps += c_min;
    if (!finding.ok())
      ++violations;

    double uav_err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      uav_err += distance(pred.at(i, points - 1), ref.at(i, points - 1));
    med_sum += uav_err / static_cast<double>(n);
  }

  const auto count = static_cast<double>(predictions.size());
  table.mean_fitness /= count;
  table.mean_c_avg_bps /= count;
  table.mean_c_min_bps /= count;
  table.collision_pct = 100.0 * static_cast<double>(violations) / count;
  table.med_m = med_sum / count;
  return table;
}

std::string metric_csv_row(const MetricTable& t)
{
  return t.algorithm + "," + std::to_string(static_cast<int>(t.collision_rule)) + ","
    + format_double(t.mean_fitness) + "," + format_double(t.mean_c_avg_bps) + ","
    + format_double(t.mean_c_min_bps) + "," + format_double(t.collision_pct) + ","
    + format_double(t.med_m) + "," + format_double(t.mean_wall_time_s);
}

std::string metric_json(const MetricTable& t)
{
  json j;
  j["algorithm"] = t.algorithm;
  j["rule"] = static_cast<int>(t.collision_rule);
  j["mean_fitness"] = t.mean_fitness;
  j["mean_c_avg_bps"] = t.mean_c_avg_bps;
  j["mean_c_min_bps"] = t.mean_c_min_bps;
  j["collision_pct"] = t.collision_pct;
  j["med_m"] = t.med_m;
  j["mean_wall_time_s"] = t.mean_wall_time_s;
  j["samples"] = t.samples;
  return j.dump(2) + "\n";
}

} // namespace nullswarm
