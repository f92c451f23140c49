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

#include <nullswarm/objective.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullswarm {

GainPattern uav_pattern(const ScenarioConfig& cfg)
{
  return GainPattern::null_steer(cfg.null_depth_floor_db);
}

GainPattern jammer_gain_pattern(const ScenarioConfig& cfg)
{
  const auto& p = cfg.jammer_pattern;
  if (p.kind == JammerPattern::Kind::Isotropic)
    return GainPattern::isotropic(p.max_gain_db);
  return GainPattern::cosine_power(p.q, p.max_gain_db, cfg.null_depth_floor_db);
}

namespace {

double shadow(const ScenarioConfig& cfg, Rng* rng)
{
  if (rng == nullptr || cfg.shadowing_sigma_db == 0.0)
    return 0.0;
  return cfg.shadowing_sigma_db * rng->normal();
}

double clamped_distance(Vec2 a, Vec2 b, const ScenarioConfig& cfg)
{
  return std::max(distance(a, b), cfg.ref_distance_m);
}

} // anonymous namespace

double directed_capacity_bps(const SwarmState& state, std::size_t tx,
  std::size_t rx, const ScenarioConfig& cfg, Rng* shadowing)
{
  const std::size_t n = state.size();
  if (tx >= n || rx >= n || state.null_angles_deg.size() != n)
    throw std::out_of_range("directed_capacity_bps: UAV index out of range");
  if (tx == rx)
    throw std::invalid_argument("directed_capacity_bps: tx == rx");

  const Vec2 p_tx = state.positions[tx];
  const Vec2 p_rx = state.positions[rx];
  const GainPattern pattern = uav_pattern(cfg);

  const double g_tx = antenna_gain_db(
    pattern, state.null_angles_deg[tx], bearing_deg(p_tx, p_rx));
  const double g_rx = antenna_gain_db(
    pattern, state.null_angles_deg[rx], bearing_deg(p_rx, p_tx));
  const double loss = path_loss_db(
    clamped_distance(p_tx, p_rx, cfg), cfg, shadow(cfg, shadowing));
  const double signal = received_power_dbm(cfg.uav_tx_power_dbm, g_tx, g_rx, loss);

  double interference = -std::numeric_limits<double>::infinity();
  if (std::isfinite(cfg.jammer_power_dbm))
  {
    const GainPattern jp = jammer_gain_pattern(cfg);
    double jammer_reference = 0.0;
    if (jp.kind == GainPattern::Kind::CosinePower)
      jammer_reference = bearing_deg(state.jammer, centroid(state.positions));

    const double g_j = antenna_gain_db(
      jp, jammer_reference, bearing_deg(state.jammer, p_rx));
    const double g_rj = antenna_gain_db(
      pattern, state.null_angles_deg[rx], bearing_deg(p_rx, state.jammer));
    const double loss_j = path_loss_db(
      clamped_distance(state.jammer, p_rx, cfg), cfg, shadow(cfg, shadowing));
    interference = received_power_dbm(cfg.jammer_power_dbm, g_j, g_rj, loss_j);
  }

  return shannon_capacity_bps(cfg.bandwidth_hz,
    sinr_linear(signal, interference, cfg.noise_power_dbm));
}

//==============================================================================
LinkReport aggregate_edges(std::vector<LinkEdge> edges, const ScenarioConfig& cfg)
{
  if (edges.empty())
    throw std::invalid_argument("aggregate_edges: no edges");

  LinkReport report;
  report.edges = std::move(edges);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : report.edges)
  {
    sum += e.capacity_bps;
    lo = std::min(lo, e.capacity_bps);
  }
  report.c_avg_bps = sum / static_cast<double>(report.edges.size());
  report.c_min_bps = lo;
  // Rounding in the mean of identical values must not break c_min <= c_avg.
  report.c_avg_bps = std::max(report.c_avg_bps, report.c_min_bps);
  report.fitness = std::pow(report.c_avg_bps, cfg.alpha)
    * std::pow(report.c_min_bps, cfg.beta);
  return report;
}

LinkReport link_report(const SwarmState& state, const ScenarioConfig& cfg,
  Rng* shadowing)
{
  const std::size_t n = state.size();
  if (n < 2)
    throw std::invalid_argument("link_report: need at least two UAVs");

  std::vector<LinkEdge> edges;
  edges.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      const double ij = directed_capacity_bps(state, i, j, cfg, shadowing);
      const double ji = directed_capacity_bps(state, j, i, cfg, shadowing);
      switch (cfg.edge_aggregation)
      {
        case EdgeAggregation::Min:
          edges.push_back({i, j, std::min(ij, ji)});
          break;
        case EdgeAggregation::Mean:
          edges.push_back({i, j, 0.5 * (ij + ji)});
          break;
        case EdgeAggregation::Directed:
          edges.push_back({i, j, ij});
          edges.push_back({j, i, ji});
          break;
      }
    }
  }
  return aggregate_edges(std::move(edges), cfg);
}

//==============================================================================
std::vector<double> nulls_toward(const std::vector<Vec2>& positions, Vec2 jammer)
{
  std::vector<double> angles;
  angles.reserve(positions.size());
  for (const auto& p : positions)
    angles.push_back(bearing_deg(p, jammer));
  return angles;
}

EpochObjective epoch_objective(const PositionBlock& block, Vec2 jammer,
  const ScenarioConfig& cfg, Rng* shadowing)
{
  if (block.num_uavs() != static_cast<std::size_t>(cfg.num_uavs)
    || block.num_points() != static_cast<std::size_t>(cfg.slots_per_epoch))
  {
    throw std::invalid_argument(
      "epoch_objective: block shape does not match num_uavs x slots_per_epoch");
  }

  EpochObjective out;
  double sum = 0.0;
  for (std::size_t t = 1; t < block.num_points(); ++t)
  {
    auto positions = block.column(t);
    auto angles = nulls_toward(positions, jammer);
    const SwarmState state{std::move(positions), std::move(angles), jammer};
    out.per_slot.push_back(link_report(state, cfg, shadowing));
    sum += out.per_slot.back().fitness;
  }
  out.objective = sum / static_cast<double>(out.per_slot.size());
  return out;
}

} // namespace nullswarm
