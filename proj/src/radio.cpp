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

#include <nullswarm/radio.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nullswarm {

//==============================================================================
GainPattern GainPattern::null_steer(double floor_db)
{
  return {Kind::NullSteerTwoElement, floor_db, 1.0, 0.0};
}

GainPattern GainPattern::isotropic(double max_gain_db)
{
  return {Kind::Isotropic, -60.0, 1.0, max_gain_db};
}

GainPattern GainPattern::cosine_power(double q, double max_gain_db,
  double floor_db)
{
  if (!(q >= 1.0))
    throw std::invalid_argument("cosine_power: q must be >= 1");
  return {Kind::CosinePower, floor_db, q, max_gain_db};
}

double antenna_gain_db(const GainPattern& pattern, double reference_deg,
  double target_bearing_deg)
{
  if (!std::isfinite(reference_deg) || !std::isfinite(target_bearing_deg))
    throw std::domain_error("antenna_gain_db: non-finite angle");

  const double delta = wrap_signed_deg(target_bearing_deg - reference_deg);
  switch (pattern.kind)
  {
    case GainPattern::Kind::Isotropic:
      return pattern.max_gain_db;

    case GainPattern::Kind::NullSteerTwoElement:
    {
      const double g = std::abs(std::sin(deg_to_rad(delta) / 2.0));
      if (g == 0.0)
        return pattern.null_depth_floor_db;
      return std::max(20.0 * std::log10(g), pattern.null_depth_floor_db);
    }

    case GainPattern::Kind::CosinePower:
    {
      if (std::abs(delta) >= 90.0)
        return pattern.null_depth_floor_db;
      const double c = std::cos(deg_to_rad(delta));
      return std::max(pattern.max_gain_db + 10.0 * pattern.q * std::log10(c),
        pattern.null_depth_floor_db);
    }
  }
  return pattern.null_depth_floor_db;
}

//==============================================================================
double path_loss_db(double distance_m, const ScenarioConfig& cfg, double chi_db)
{
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss_db: distance must be > 0");
  if (!std::isfinite(chi_db))
    throw std::domain_error("path_loss_db: non-finite shadowing term");

  const double d = std::max(distance_m, cfg.ref_distance_m);
  return cfg.ref_path_loss_db
    + 10.0 * cfg.path_loss_exponent * std::log10(d / cfg.ref_distance_m)
    + chi_db;
}

double received_power_dbm(double tx_dbm, double g_tx_db, double g_rx_db,
  double loss_db)
{
  return tx_dbm + g_tx_db + g_rx_db - loss_db;
}

LinkBudget LinkBudget::make(double tx_dbm, double g_tx_db, double g_rx_db,
  double loss_db)
{
  return {tx_dbm, g_tx_db, g_rx_db, loss_db,
    received_power_dbm(tx_dbm, g_tx_db, g_rx_db, loss_db)};
}

double dbm_to_mw(double dbm)
{
  return std::pow(10.0, dbm / 10.0);
}

double mw_to_dbm(double mw)
{
  return 10.0 * std::log10(mw);
}

double sinr_linear(double rx_dbm, double interference_dbm, double noise_dbm)
{
  // dbm_to_mw(-inf) is exactly 0
  return dbm_to_mw(rx_dbm) / (dbm_to_mw(interference_dbm) + dbm_to_mw(noise_dbm));
}

double shannon_capacity_bps(double bandwidth_hz, double sinr)
{
  if (!(bandwidth_hz > 0.0))
    throw std::domain_error("shannon_capacity_bps: bandwidth must be > 0");
  if (!(sinr >= 0.0))
    throw std::domain_error("shannon_capacity_bps: SINR must be >= 0");
  // log1p keeps deeply jammed links accurate
  if (sinr < 1e-3)
    return bandwidth_hz * std::log1p(sinr) / std::numbers::ln2;
  return bandwidth_hz * std::log2(1.0 + sinr);
}

} // namespace nullswarm
