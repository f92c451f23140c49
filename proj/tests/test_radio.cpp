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

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace nullswarm;

namespace {
const double inf = std::numeric_limits<double>::infinity();
} // anonymous namespace

TEST_CASE("Path loss")
{
  const ScenarioConfig c = make_default_config();
  CHECK(path_loss_db(1.0, c) == 30.0);
  CHECK(path_loss_db(10.0, c) == 57.0);
  CHECK(path_loss_db(0.5, c) == 30.0);
  CHECK(path_loss_db(10.0, c, 3.5) == 60.5);
  CHECK_THROWS_AS(path_loss_db(0.0, c), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(-1.0, c), std::domain_error);

  SUBCASE("Monotone and matching the oracle")
  {
    Rng rng(1);
    double prev = path_loss_db(1.0, c);
    double d = 1.0;
    for (int k = 0; k < 5000; ++k)
    {
      d += rng.uniform(0.0, 2.0);
      const double l = path_loss_db(d, c);
      CHECK(l >= prev);
      CHECK(l == doctest::Approx(oracle::path_loss_db(d, 1.0, 30.0, 2.7)).epsilon(1e-12));
      prev = l;
    }
  }
}

TEST_CASE("Null-steering gain pattern")
{
  const GainPattern p = GainPattern::null_steer(-60.0);
  CHECK(antenna_gain_db(p, 90.0, 90.0) == -60.0);
  CHECK(antenna_gain_db(p, 0.0, 180.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(antenna_gain_db(p, 0.0, 60.0) == doctest::Approx(-6.0206).epsilon(1e-5));
  CHECK(antenna_gain_db(p, 350.0, 10.0) == doctest::Approx(antenna_gain_db(p, 0.0, 20.0)));

  SUBCASE("Even in the offset, floor only at zero, peak only opposite")
  {
    for (int deg = -179; deg <= 180; ++deg)
    {
      const double g = antenna_gain_db(p, 0.0, deg);
      CHECK(g == doctest::Approx(antenna_gain_db(p, 0.0, -deg)));
      CHECK(g == doctest::Approx(oracle::two_element_gain_db(
        0.0, deg * oracle::pi() / 180.0, -60.0)).epsilon(1e-12));
      if (deg == 0)
        CHECK(g == -60.0);
      else
        CHECK(g > -60.0);
      if (deg == 180)
        CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
      else
        CHECK(g < 0.0);
    }
  }
}

TEST_CASE("Isotropic and cosine-power patterns")
{
  CHECK(antenna_gain_db(GainPattern::isotropic(), 12.0, 200.0) == 0.0);
  CHECK(antenna_gain_db(GainPattern::isotropic(3.0), 12.0, 200.0) == 3.0);

  const GainPattern cp = GainPattern::cosine_power(2.0, 10.0, -60.0);
  CHECK(antenna_gain_db(cp, 0.0, 0.0) == 10.0);
  CHECK(antenna_gain_db(cp, 0.0, 60.0)
    == doctest::Approx(10.0 + 20.0 * std::log10(0.5)));
  CHECK(antenna_gain_db(cp, 0.0, 90.0) == -60.0);
  CHECK(antenna_gain_db(cp, 0.0, 135.0) == -60.0);
}

TEST_CASE("Received power and link budget")
{
  CHECK(received_power_dbm(20, 0, 0, 70) == -50.0);
  CHECK(received_power_dbm(20, -60, 0, 100) == -140.0);
  CHECK(received_power_dbm(100, 0, -60, 102.148) == doctest::Approx(-62.148).epsilon(1e-12));

  const ScenarioConfig c = make_default_config();
  const double l470 = path_loss_db(470.0, c);
  CHECK(std::abs(l470 - 102.148) < 2e-3);
  CHECK(l470 == doctest::Approx(30.0 + 27.0 * std::log10(470.0)).epsilon(1e-14));

  const LinkBudget b = LinkBudget::make(20, -3, -4, 57);
  CHECK(b.rx_power_dbm == b.tx_power_dbm + b.tx_gain_db + b.rx_gain_db - b.path_loss_db);
}

TEST_CASE("SINR and capacity")
{
  CHECK(sinr_linear(0, -inf, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinr_linear(-50, -inf, -100) == doctest::Approx(1e5).epsilon(1e-12));
  const double s = sinr_linear(-49.88, -62.15, -100);
  CHECK(s == doctest::Approx(16.87).epsilon(1e-3));
  CHECK(s == doctest::Approx(oracle::to_mw(-49.88)
    / (oracle::to_mw(-62.15) + oracle::to_mw(-100))).epsilon(1e-12));

  CHECK(shannon_capacity_bps(20e6, 1.0) == 2e7);
  CHECK(shannon_capacity_bps(20e6, 0.0) == 0.0);
  // 8.335e7 is a hand-rounded figure; the exact value is 8.319e7.
  CHECK(shannon_capacity_bps(20e6, 16.87) == doctest::Approx(8.335e7).epsilon(3e-3));
  CHECK(shannon_capacity_bps(20e6, 16.87)
    == doctest::Approx(oracle::capacity_bps(20e6, 16.87)).epsilon(1e-14));
  CHECK_THROWS_AS(shannon_capacity_bps(20e6, -0.1), std::domain_error);
  CHECK_THROWS_AS(shannon_capacity_bps(0.0, 1.0), std::domain_error);

  SUBCASE("Monotone in SINR, linear in bandwidth, accurate for tiny SINR")
  {
    Rng rng(2);
    double prev = 0.0;
    double sinr = 0.0;
    for (int k = 0; k < 2000; ++k)
    {
      sinr += rng.uniform(1e-9, 1.0);
      const double cap = shannon_capacity_bps(1e6, sinr);
      CHECK(cap > prev);
      CHECK(shannon_capacity_bps(2e6, sinr) == doctest::Approx(2.0 * cap).epsilon(1e-14));
      CHECK(cap == doctest::Approx(oracle::capacity_bps(1e6, sinr)).epsilon(1e-12));
      prev = cap;
    }
    CHECK(shannon_capacity_bps(1.0, 1e-12) == doctest::Approx(1e-12 / std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("dBm and mW round trip")
{
  for (double dbm = -200.0; dbm <= 200.0; dbm += 0.37)
    CHECK(mw_to_dbm(dbm_to_mw(dbm)) == doctest::Approx(dbm).epsilon(1e-12).scale(1.0));
  CHECK(dbm_to_mw(-inf) == 0.0);
  CHECK(dbm_to_mw(0.0) == 1.0);
  CHECK(dbm_to_mw(30.0) == doctest::Approx(1000.0));
}
