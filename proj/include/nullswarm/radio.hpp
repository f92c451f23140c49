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

#ifndef NULLSWARM__RADIO_HPP
#define NULLSWARM__RADIO_HPP

#include <nullswarm/scenario.hpp>

namespace nullswarm {

//==============================================================================
/// Azimuth gain pattern of a single antenna.
///
/// NullSteerTwoElement is the two-element pattern |sin(delta/2)|, where delta
/// is the offset of the target direction from the steered null. It has one
/// deep null (clamped to `null_depth_floor_db`) and its 0 dB peak directly
/// opposite the null.
struct GainPattern
{
  enum class Kind { NullSteerTwoElement, Isotropic, CosinePower };

  Kind kind = Kind::NullSteerTwoElement;
  double null_depth_floor_db = -60.0;
  double q = 1.0;
  double max_gain_db = 0.0;

  static GainPattern null_steer(double floor_db = -60.0);
  static GainPattern isotropic(double max_gain_db = 0.0);
  static GainPattern cosine_power(double q, double max_gain_db,
    double floor_db = -60.0);
};

/// Gain toward `target_bearing_deg` of an antenna whose reference direction
/// (the null for NullSteerTwoElement, the boresight for CosinePower) points
/// at `reference_deg`.
double antenna_gain_db(const GainPattern& pattern, double reference_deg,
  double target_bearing_deg);

//==============================================================================
/// Log-distance path loss. Distances below the reference distance are
/// evaluated at the reference distance. Throws std::domain_error for d <= 0.
double path_loss_db(double distance_m, const ScenarioConfig& cfg,
  double chi_db = 0.0);

double received_power_dbm(double tx_dbm, double g_tx_db, double g_rx_db,
  double loss_db);

struct LinkBudget
{
  double tx_power_dbm;
  double tx_gain_db;
  double rx_gain_db;
  double path_loss_db;
  double rx_power_dbm;

  static LinkBudget make(double tx_dbm, double g_tx_db, double g_rx_db,
    double loss_db);
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Signal over interference plus noise, in linear units. An interference of
/// -inf dBm means no interference.
double sinr_linear(double rx_dbm, double interference_dbm, double noise_dbm);

/// B log2(1 + SINR). Throws std::domain_error for negative SINR or
/// non-positive bandwidth.
double shannon_capacity_bps(double bandwidth_hz, double sinr);

} // namespace nullswarm

#endif // NULLSWARM__RADIO_HPP
