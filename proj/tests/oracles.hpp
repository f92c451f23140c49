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

#ifndef NULLSWARM__TESTS__ORACLES_HPP
#define NULLSWARM__TESTS__ORACLES_HPP

// Reference computations written directly from the model equations. They
// share no code with the library so a test comparing the two catches drift
// in either.

#include <nullswarm/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

inline double pi() { return std::acos(-1.0); }

inline double path_loss_db(double d, double d0, double l0, double n)
{
  const double r = std::max(d, d0) / d0;
  return l0 + 10.0 * n * std::log(r) / std::log(10.0);
}

inline double to_mw(double dbm)
{
  if (std::isinf(dbm) && dbm < 0)
    return 0.0;
  return std::exp(dbm * std::log(10.0) / 10.0);
}

inline double two_element_gain_db(double null_rad, double target_rad, double floor_db)
{
  const double g = std::abs(std::sin(0.5 * (target_rad - null_rad)));
  if (g == 0.0)
    return floor_db;
  return std::max(20.0 * std::log10(g), floor_db);
}

inline double bearing_rad(nullswarm::Vec2 from, nullswarm::Vec2 to)
{
  return std::atan2(to.y - from.y, to.x - from.x);
}

inline double capacity_bps(double bandwidth, double sinr)
{
  return bandwidth * std::log1p(sinr) / std::log(2.0);
}

/// Directed capacity with the two-element pattern on every UAV, an isotropic
/// jammer, and no shadowing.
inline double directed_capacity(const std::vector<nullswarm::Vec2>& p,
  const std::vector<double>& nulls_deg, nullswarm::Vec2 jammer,
  std::size_t tx, std::size_t rx, const nullswarm::ScenarioConfig& c)
{
  const double deg = pi() / 180.0;
  const double d = std::hypot(p[rx].x - p[tx].x, p[rx].y - p[tx].y);
  const double g_tx = two_element_gain_db(nulls_deg[tx] * deg,
    bearing_rad(p[tx], p[rx]), c.null_depth_floor_db);
  const double g_rx = two_element_gain_db(nulls_deg[rx] * deg,
    bearing_rad(p[rx], p[tx]), c.null_depth_floor_db);
  const double signal = c.uav_tx_power_dbm + g_tx + g_rx
    - path_loss_db(d, c.ref_distance_m, c.ref_path_loss_db, c.path_loss_exponent);

  const double dj = std::hypot(jammer.x - p[rx].x, jammer.y - p[rx].y);
  const double g_rj = two_element_gain_db(nulls_deg[rx] * deg,
    bearing_rad(p[rx], jammer), c.null_depth_floor_db);
  const double interference = c.jammer_power_dbm + g_rj
    - path_loss_db(dj, c.ref_distance_m, c.ref_path_loss_db, c.path_loss_exponent);

  const double sinr = to_mw(signal) / (to_mw(interference) + to_mw(c.noise_power_dbm));
  return capacity_bps(c.bandwidth_hz, sinr);
}

struct Slot
{
  double c_avg;
  double c_min;
  double fitness;
};

/// Undirected min-edge aggregation over all pairs.
inline Slot slot_fitness(const std::vector<nullswarm::Vec2>& p,
  const std::vector<double>& nulls_deg, nullswarm::Vec2 jammer,
  const nullswarm::ScenarioConfig& c)
{
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  int edges = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    for (std::size_t j = i + 1; j < p.size(); ++j)
    {
      const double e = std::min(directed_capacity(p, nulls_deg, jammer, i, j, c),
        directed_capacity(p, nulls_deg, jammer, j, i, c));
      sum += e;
      lo = std::min(lo, e);
      ++edges;
    }
  }
  const double avg = sum / edges;
  return {avg, lo, std::pow(avg, c.alpha) * std::pow(lo, c.beta)};
}

inline std::vector<double> nulls_at(const std::vector<nullswarm::Vec2>& p,
  nullswarm::Vec2 jammer)
{
  std::vector<double> out;
  for (const auto& q : p)
  {
    double a = bearing_rad(q, jammer) * 180.0 / pi();
    if (a < 0.0)
      a += 360.0;
    out.push_back(a);
  }
  return out;
}

/// Mean slot fitness over columns 1..T with nulls at the jammer.
inline double epoch_objective(const nullswarm::PositionBlock& b,
  nullswarm::Vec2 jammer, const nullswarm::ScenarioConfig& c)
{
  double sum = 0.0;
  for (std::size_t t = 1; t < b.num_points(); ++t)
  {
    std::vector<nullswarm::Vec2> col;
    for (std::size_t i = 0; i < b.num_uavs(); ++i)
      col.push_back(b.at(i, t));
    sum += slot_fitness(col, nulls_at(col, jammer), jammer, c).fitness;
  }
  return sum / static_cast<double>(b.num_points() - 1);
}

/// Closest approach of two synchronous linear motions by sampling s.
inline double sampled_min_distance(nullswarm::Vec2 a0, nullswarm::Vec2 a1,
  nullswarm::Vec2 b0, nullswarm::Vec2 b1, double step = 1e-4)
{
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::llround(1.0 / step));
  for (int k = 0; k <= n; ++k)
  {
    const double s = static_cast<double>(k) / n;
    const double dx = (a0.x + s * (a1.x - a0.x)) - (b0.x + s * (b1.x - b0.x));
    const double dy = (a0.y + s * (a1.y - a0.y)) - (b0.y + s * (b1.y - b0.y));
    best = std::min(best, std::hypot(dx, dy));
  }
  return best;
}

/// Relative difference scaled by the larger magnitude.
inline double rel_diff(double a, double b)
{
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace oracle

#endif // NULLSWARM__TESTS__ORACLES_HPP
