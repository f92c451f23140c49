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

#include <nullswarm/motion.hpp>
#include <nullswarm/objective.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nullswarm {

namespace {

constexpr int RandomPlanAttempts = 1000;

PositionBlock draw_walk(const std::vector<Vec2>& initial_positions,
  const ScenarioConfig& cfg, std::size_t epoch, Rng& rng)
{
  const std::size_t n = initial_positions.size();
  const auto scored = static_cast<std::size_t>(cfg.scored_slots());
  PositionBlock block(n, scored + 1);
  block.set_column(0, initial_positions);
  for (std::size_t t = 1; t <= scored; ++t)
  {
    const SlotCell cell = slot_cell(epoch, t, cfg);
    for (std::size_t i = 0; i < n; ++i)
    {
      const Vec2 draw{rng.uniform(cell.x_min, cell.x_max),
        rng.uniform(cell.y_min, cell.y_max)};
      block.at(i, t) = reachable_in_cell(block.at(i, t - 1), draw, cell, cfg);
    }
  }
  return block;
}

} // anonymous namespace

RandomPlan random_plan(const std::vector<Vec2>& initial_positions,
  const ScenarioConfig& cfg, std::uint64_t seed, bool respect_rule,
  std::size_t epoch)
{
  if (initial_positions.size() != static_cast<std::size_t>(cfg.num_uavs))
    throw std::invalid_argument("random_plan: initial positions do not match num_uavs");

  Rng rng = Rng::stream(seed, "baseline");
  RandomPlan plan;
  plan.block = draw_walk(initial_positions, cfg, epoch, rng);
  if (!respect_rule)
    return plan;

  for (int a = 1; a < RandomPlanAttempts && !check_plan(plan.block, cfg, epoch).ok(); ++a)
    plan.block = draw_walk(initial_positions, cfg, epoch, rng);
  plan.flagged = !check_plan(plan.block, cfg, epoch).ok();
  return plan;
}

RandomFormation random_formation(const ScenarioConfig& cfg, std::uint64_t seed,
  bool respect_rule)
{
  Rng rng = Rng::stream(seed, "baseline");
  const SlotCell cell = slot_cell(0, 0, cfg);
  RandomFormation f;
  for (int a = 0; a < RandomPlanAttempts; ++a)
  {
    f.positions.clear();
    f.null_angles_deg.clear();
    for (int i = 0; i < cfg.num_uavs; ++i)
    {
      f.positions.push_back({rng.uniform(cell.x_min, cell.x_max),
        rng.uniform(cell.y_min, cell.y_max)});
      f.null_angles_deg.push_back(rng.uniform(0.0, 360.0));
    }
    if (!respect_rule || check_formation(f.positions, cfg).ok())
      return f;
  }
  f.flagged = true;
  return f;
}

//==============================================================================
std::vector<double> null_at_jammer(const std::vector<Vec2>& positions, Vec2 jammer)
{
  for (const auto& p : positions)
  {
    if (p == jammer)
      throw std::invalid_argument("null_at_jammer: UAV coincides with the jammer");
  }
  return nulls_toward(positions, jammer);
}

//==============================================================================
KnnModel knn_fit(const std::vector<SampleRecord>& dataset, std::size_t k)
{
  if (dataset.empty())
    throw std::invalid_argument("knn_fit: empty dataset");
  if (k < 1)
    throw std::invalid_argument("knn_fit: k must be >= 1");
  if (k > dataset.size())
    throw std::invalid_argument("knn_fit: k exceeds the sample count");

  KnnModel model;
  model.k = k;
  model.num_uavs = dataset.front().label_block.num_uavs();
  model.scored_slots = dataset.front().label_block.num_points();
  for (const auto& r : dataset)
  {
    if (r.label_block.num_uavs() != model.num_uavs
      || r.label_block.num_points() != model.scored_slots
      || r.features.size() != model.feature_dim())
    {
      throw std::invalid_argument("knn_fit: dataset mixes UAV counts or slot counts");
    }
    model.features.push_back(r.features);
    model.labels.push_back(flatten_label(r.label_block));
  }
  return model;
}

std::vector<double> knn_predict_flat(const KnnModel& model,
  const std::vector<double>& features)
{
  if (features.size() != model.feature_dim())
    throw std::invalid_argument("knn_predict: feature dimension mismatch");
  if (model.size() == 0 || model.k < 1 || model.k > model.size())
    throw std::invalid_argument("knn_predict: model is not fitted");

  std::vector<double> dist(model.size());
  for (std::size_t r = 0; r < model.size(); ++r)
  {
    double s = 0.0;
    for (std::size_t c = 0; c < features.size(); ++c)
    {
      const double d = model.features[r][c] - features[c];
      s += d * d;
    }
    dist[r] = std::sqrt(s);
    if (dist[r] == 0.0)
      return model.labels[r];
  }

  std::vector<std::size_t> order(model.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(model.k),
    order.end(), [&](std::size_t a, std::size_t b)
    {
      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });
  if (model.k == 1)
    return model.labels[order.front()];

  std::vector<double> out(model.label_dim(), 0.0);
  double weight_sum = 0.0;
  for (std::size_t m = 0; m < model.k; ++m)
  {
    const std::size_t r = order[m];
    const double w = 1.0 / (dist[r] + model.weight_epsilon);
    weight_sum += w;
    for (std::size_t c = 0; c < out.size(); ++c)
      out[c] += w * model.labels[r][c];
  }
  for (auto& v : out)
    v /= weight_sum;
  return out;
}

PositionBlock knn_predict(const KnnModel& model, const std::vector<double>& features)
{
  const auto flat = knn_predict_flat(model, features);
  std::vector<Vec2> initial;
  for (std::size_t k = 2; k < features.size(); k += 2)
    initial.push_back({features[k], features[k + 1]});
  return with_initial_column(initial,
    unflatten_label(flat, model.num_uavs, model.scored_slots));
}

//==============================================================================
std::string serialize_knn(const KnnModel& model)
{
  nlohmann::json j;
  j["format"] = "nullswarm-knn";
  j["version"] = 1;
  j["k"] = model.k;
  j["epsilon"] = model.weight_epsilon;
  j["num_uavs"] = model.num_uavs;
  j["scored_slots"] = model.scored_slots;
  j["feature_dim"] = model.feature_dim();
  j["label_dim"] = model.label_dim();
  j["features"] = model.features;
  j["labels"] = model.labels;
  return j.dump() + "\n";
}

KnnModel parse_knn(const std::string& text)
{
  const auto j = nlohmann::json::parse(text);
  if (j.value("format", "") != "nullswarm-knn")
    throw std::runtime_error("not a nullswarm KNN model file");

  KnnModel m;
  m.k = j.at("k").get<std::size_t>();
  m.weight_epsilon = j.at("epsilon").get<double>();
  m.num_uavs = j.at("num_uavs").get<std::size_t>();
  m.scored_slots = j.at("scored_slots").get<std::size_t>();
  m.features = j.at("features").get<std::vector<std::vector<double>>>();
  m.labels = j.at("labels").get<std::vector<std::vector<double>>>();
  if (m.features.size() != m.labels.size() || m.k < 1 || m.k > m.features.size())
    throw std::runtime_error("KNN model file is inconsistent");
  for (std::size_t r = 0; r < m.size(); ++r)
  {
    if (m.features[r].size() != m.feature_dim() || m.labels[r].size() != m.label_dim())
      throw std::runtime_error("KNN model file row " + std::to_string(r)
        + " has the wrong dimension");
  }
  return m;
}

void save_knn(const KnnModel& model, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_knn(model);
}

KnnModel load_knn(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_knn(buf.str());
}

} // namespace nullswarm
