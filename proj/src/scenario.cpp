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

#include <charconv>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace nullswarm {

//==============================================================================
ScenarioConfig make_default_config()
{
  return ScenarioConfig{};
}

namespace {

void require(std::vector<ConfigViolation>& out, bool ok,
  const char* field, const char* message)
{
  if (!ok)
    out.push_back({field, message});
}

} // anonymous namespace

//==============================================================================
std::vector<ConfigViolation> validate_config(const ScenarioConfig& c)
{
  std::vector<ConfigViolation> v;
  require(v, std::isfinite(c.wavelength_m) && c.wavelength_m > 0.0,
    "wavelength_m", "must be finite and > 0");
  require(v, std::isfinite(c.bandwidth_hz) && c.bandwidth_hz > 0.0,
    "bandwidth_hz", "must be finite and > 0");
  require(v, std::isfinite(c.uav_tx_power_dbm),
    "uav_tx_power_dbm", "must be finite");
  require(v, std::isfinite(c.jammer_power_dbm)
    || c.jammer_power_dbm == -std::numeric_limits<double>::infinity(),
    "jammer_power_dbm", "must be finite, or -inf to disable the jammer");
  require(v, std::isfinite(c.noise_power_dbm),
    "noise_power_dbm", "must be finite");
  require(v, std::isfinite(c.min_separation_m) && c.min_separation_m >= 0.0,
    "min_separation_m", "must be finite and >= 0");
  require(v, c.num_uavs >= 2, "num_uavs", "must be >= 2");
  require(v, std::isfinite(c.ref_distance_m) && c.ref_distance_m > 0.0,
    "ref_distance_m", "must be finite and > 0");
  require(v, std::isfinite(c.ref_path_loss_db),
    "ref_path_loss_db", "must be finite");
  require(v, std::isfinite(c.path_loss_exponent) && c.path_loss_exponent > 0.0,
    "path_loss_exponent", "must be finite and > 0");
  require(v, std::isfinite(c.shadowing_sigma_db) && c.shadowing_sigma_db >= 0.0,
    "shadowing_sigma_db", "must be finite and >= 0");
  require(v, std::isfinite(c.cell_size_m) && c.cell_size_m > 0.0,
    "cell_size_m", "must be finite and > 0");
  require(v, std::isfinite(c.epoch_length_m)
    && c.epoch_length_m >= c.cell_size_m,
    "epoch_length_m", "must be >= cell_size_m");
  require(v, c.slots_per_epoch >= 2, "slots_per_epoch",
    "must be >= 2 (t0 plus at least one scored slot)");
  require(v, std::isfinite(c.v_max_mps) && std::isfinite(c.timeslot_duration_s)
    && c.v_max_mps > 0.0 && c.timeslot_duration_s > 0.0,
    "v_max_mps", "v_max_mps * timeslot_duration_s must be > 0");
  require(v, c.grid_resolution >= 1, "grid_resolution", "must be >= 1");
  require(v, std::isfinite(c.alpha) && c.alpha >= 0.0,
    "alpha", "must be finite and >= 0");
  require(v, std::isfinite(c.beta) && c.beta >= 0.0,
    "beta", "must be finite and >= 0");
  require(v, std::isfinite(c.null_depth_floor_db) && c.null_depth_floor_db < 0.0,
    "null_depth_floor_db", "must be finite and < 0");
  if (c.jammer_pattern.kind == JammerPattern::Kind::CosinePower)
  {
    require(v, std::isfinite(c.jammer_pattern.q) && c.jammer_pattern.q >= 1.0,
      "jammer_pattern", "cosine_power exponent q must be >= 1");
    require(v, std::isfinite(c.jammer_pattern.max_gain_db),
      "jammer_pattern", "max gain must be finite");
  }
  return v;
}

namespace {

std::string describe(const std::vector<ConfigViolation>& violations)
{
  std::string out = "invalid scenario config:";
  for (const auto& v : violations)
    out += " " + v.field + " (" + v.message + ");";
  return out;
}

} // anonymous namespace

InvalidConfig::InvalidConfig(std::vector<ConfigViolation> violations)
: std::invalid_argument(describe(violations)),
  _violations(std::move(violations))
{
}

void require_valid(const ScenarioConfig& cfg)
{
  auto violations = validate_config(cfg);
  if (!violations.empty())
    throw InvalidConfig(std::move(violations));
}

//==============================================================================
double wrap_angle_deg(double deg)
{
  if (!std::isfinite(deg))
    throw std::domain_error("wrap_angle_deg: non-finite angle");

  double r = std::fmod(deg, 360.0);
  if (r < 0.0)
    r += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  if (r >= 360.0)
    r = 0.0;
  return r;
}

double wrap_signed_deg(double deg)
{
  double r = wrap_angle_deg(deg);
  if (r > 180.0)
    r -= 360.0;
  return r;
}

double deg_to_rad(double deg)
{
  return deg * (std::numbers::pi / 180.0);
}

double rad_to_deg(double rad)
{
  return rad * (180.0 / std::numbers::pi);
}

double bearing_deg(Vec2 from, Vec2 to)
{
  const Vec2 d = to - from;
  return wrap_angle_deg(rad_to_deg(std::atan2(d.y, d.x)));
}

Vec2 rotate_about(Vec2 p, Vec2 center, double angle_rad)
{
  if (angle_rad == 0.0)
    return p;

  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  const Vec2 d = p - center;
  return {center.x + c * d.x - s * d.y, center.y + s * d.x + c * d.y};
}

Vec2 centroid(const std::vector<Vec2>& points)
{
  if (points.empty())
    throw std::invalid_argument("centroid: empty point set");

  Vec2 sum;
  for (const auto& p : points)
    sum = sum + p;
  const double n = static_cast<double>(points.size());
  return {sum.x / n, sum.y / n};
}

//==============================================================================
SwarmState SwarmState::make(
  std::vector<Vec2> positions,
  std::vector<double> null_angles_deg,
  Vec2 jammer)
{
  if (positions.size() != null_angles_deg.size())
    throw std::invalid_argument("SwarmState: positions and angles differ in length");

  for (auto& a : null_angles_deg)
    a = wrap_angle_deg(a);
  return SwarmState{std::move(positions), std::move(null_angles_deg), jammer};
}

//==============================================================================
PositionBlock::PositionBlock(std::size_t num_uavs, std::size_t num_points)
: _num_uavs(num_uavs),
  _num_points(num_points),
  _data(num_uavs * num_points)
{
}

Vec2& PositionBlock::at(std::size_t uav, std::size_t slot)
{
  if (uav >= _num_uavs || slot >= _num_points)
    throw std::out_of_range("PositionBlock index out of range");
  return _data[uav * _num_points + slot];
}

const Vec2& PositionBlock::at(std::size_t uav, std::size_t slot) const
{
  if (uav >= _num_uavs || slot >= _num_points)
    throw std::out_of_range("PositionBlock index out of range");
  return _data[uav * _num_points + slot];
}

std::vector<Vec2> PositionBlock::column(std::size_t slot) const
{
  std::vector<Vec2> out;
  out.reserve(_num_uavs);
  for (std::size_t i = 0; i < _num_uavs; ++i)
    out.push_back(at(i, slot));
  return out;
}

void PositionBlock::set_column(std::size_t slot, const std::vector<Vec2>& positions)
{
  if (positions.size() != _num_uavs)
    throw std::invalid_argument("PositionBlock::set_column: wrong UAV count");
  for (std::size_t i = 0; i < _num_uavs; ++i)
    at(i, slot) = positions[i];
}

std::string check_plan_invariants(const TrajectoryPlan& plan)
{
  if (plan.fitness_per_epoch.size() != plan.epochs.size())
    return "fitness vector length differs from epoch count";

  for (std::size_t e = 0; e < plan.epochs.size(); ++e)
  {
    if (!(plan.fitness_per_epoch[e] >= 0.0))
      return "negative or NaN fitness in epoch " + std::to_string(e);

    if (e + 1 == plan.epochs.size())
      break;

    const auto& cur = plan.epochs[e];
    const auto& next = plan.epochs[e + 1];
    if (cur.num_uavs() != next.num_uavs())
      return "UAV count changes at epoch " + std::to_string(e + 1);
    const std::size_t last = cur.num_points() - 1;
    for (std::size_t i = 0; i < cur.num_uavs(); ++i)
    {
      if (!(cur.at(i, last) == next.at(i, 0)))
        return "epoch " + std::to_string(e + 1) + " does not start where epoch "
          + std::to_string(e) + " ended (UAV " + std::to_string(i) + ")";
    }
  }
  return {};
}

//==============================================================================
namespace {

std::uint64_t splitmix64(std::uint64_t& x)
{
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k)
{
  return (x << k) | (x >> (64 - k));
}

} // anonymous namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
  std::uint64_t s = seed ^ rotl(salt, 17) ^ 0x6a09e667f3bcc909ULL;
  splitmix64(s);
  return splitmix64(s) ^ salt;
}

std::uint64_t fnv1a(std::string_view text)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed)
{
  // xoshiro256** seeded through splitmix64
  for (auto& s : _state)
    s = splitmix64(seed);
}

Rng Rng::stream(std::uint64_t seed, std::string_view name, std::uint64_t index)
{
  return Rng(mix_seed(mix_seed(seed, fnv1a(name)), index));
}

std::uint64_t Rng::next()
{
  const std::uint64_t result = rotl(_state[1] * 5, 7) * 9;
  const std::uint64_t t = _state[1] << 17;
  _state[2] ^= _state[0];
  _state[3] ^= _state[1];
  _state[1] ^= _state[2];
  _state[0] ^= _state[3];
  _state[2] ^= t;
  _state[3] = rotl(_state[3], 45);
  return result;
}

double Rng::uniform()
{
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform();
}

std::size_t Rng::index(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("Rng::index: empty range");
  // rejection keeps the draw unbiased
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do
  {
    r = next();
  } while (r >= limit);
  return static_cast<std::size_t>(r % bound);
}

double Rng::normal()
{
  if (_spare_normal)
  {
    const double v = *_spare_normal;
    _spare_normal.reset();
    return v;
  }

  // Marsaglia polar method
  double u, v, s;
  do
  {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  _spare_normal = v * m;
  return u * m;
}

//==============================================================================
std::string format_double(double value)
{
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value < 0.0 ? "-inf" : "inf";

  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CollisionRule parse_rule(int rule)
{
  switch (rule)
  {
    case 1: return CollisionRule::Rule1;
    case 2: return CollisionRule::Rule2;
    case 3: return CollisionRule::Rule3;
  }
  throw std::invalid_argument("collision rule must be 1, 2 or 3");
}

namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text)
{
  text = trim(text);
  if (text == "inf" || text == "+inf")
    return std::numeric_limits<double>::infinity();
  if (text == "-inf")
    return -std::numeric_limits<double>::infinity();

  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

template <typename Int>
Int parse_int(std::string_view text)
{
  text = trim(text);
  Int value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return value;
}

std::string rule_name(CollisionRule rule)
{
  return std::to_string(static_cast<int>(rule));
}

std::string aggregation_name(EdgeAggregation agg)
{
  switch (agg)
  {
    case EdgeAggregation::Min: return "min";
    case EdgeAggregation::Mean: return "mean";
    case EdgeAggregation::Directed: return "directed";
  }
  return "min";
}

std::string pattern_text(const JammerPattern& p)
{
  if (p.kind == JammerPattern::Kind::Isotropic)
    return "isotropic";
  return "cosine_power(" + format_double(p.q) + ", "
    + format_double(p.max_gain_db) + ")";
}

JammerPattern parse_pattern(std::string_view text)
{
  text = trim(text);
  if (text == "isotropic")
    return {};

  constexpr std::string_view prefix = "cosine_power(";
  if (text.substr(0, prefix.size()) != prefix || text.back() != ')')
    throw std::invalid_argument(
      "jammer_pattern must be 'isotropic' or 'cosine_power(q, max_gain_db)'");

  auto inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos)
    throw std::invalid_argument("cosine_power needs two arguments");

  JammerPattern p;
  p.kind = JammerPattern::Kind::CosinePower;
  p.q = parse_double(inner.substr(0, comma));
  p.max_gain_db = parse_double(inner.substr(comma + 1));
  return p;
}

} // anonymous namespace

std::string serialize_config(const ScenarioConfig& c)
{
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value)
  {
    out << key << " = " << value << '\n';
  };

  line("wavelength_m", format_double(c.wavelength_m));
  line("bandwidth_hz", format_double(c.bandwidth_hz));
  line("uav_tx_power_dbm", format_double(c.uav_tx_power_dbm));
  line("jammer_power_dbm", format_double(c.jammer_power_dbm));
  line("noise_power_dbm", format_double(c.noise_power_dbm));
  line("min_separation_m", format_double(c.min_separation_m));
  line("num_uavs", std::to_string(c.num_uavs));
  line("ref_distance_m", format_double(c.ref_distance_m));
  line("ref_path_loss_db", format_double(c.ref_path_loss_db));
  line("path_loss_exponent", format_double(c.path_loss_exponent));
  line("shadowing_sigma_db", format_double(c.shadowing_sigma_db));
  line("cell_size_m", format_double(c.cell_size_m));
  line("epoch_length_m", format_double(c.epoch_length_m));
  line("v_max_mps", format_double(c.v_max_mps));
  line("timeslot_duration_s", format_double(c.timeslot_duration_s));
  line("slots_per_epoch", std::to_string(c.slots_per_epoch));
  line("grid_resolution", std::to_string(c.grid_resolution));
  line("alpha", format_double(c.alpha));
  line("beta", format_double(c.beta));
  line("collision_rule", rule_name(c.collision_rule));
  line("edge_aggregation", aggregation_name(c.edge_aggregation));
  line("null_depth_floor_db", format_double(c.null_depth_floor_db));
  line("jammer_pattern", pattern_text(c.jammer_pattern));
  line("rng_seed", std::to_string(c.rng_seed));
  return out.str();
}

void set_config_field(ScenarioConfig& c, std::string_view key,
  std::string_view value)
{
  key = trim(key);
  if (key == "wavelength_m") c.wavelength_m = parse_double(value);
  else if (key == "bandwidth_hz") c.bandwidth_hz = parse_double(value);
  else if (key == "uav_tx_power_dbm") c.uav_tx_power_dbm = parse_double(value);
  else if (key == "jammer_power_dbm") c.jammer_power_dbm = parse_double(value);
  else if (key == "noise_power_dbm") c.noise_power_dbm = parse_double(value);
  else if (key == "min_separation_m") c.min_separation_m = parse_double(value);
  else if (key == "num_uavs") c.num_uavs = parse_int<int>(value);
  else if (key == "ref_distance_m") c.ref_distance_m = parse_double(value);
  else if (key == "ref_path_loss_db") c.ref_path_loss_db = parse_double(value);
  else if (key == "path_loss_exponent") c.path_loss_exponent = parse_double(value);
  else if (key == "shadowing_sigma_db") c.shadowing_sigma_db = parse_double(value);
  else if (key == "cell_size_m") c.cell_size_m = parse_double(value);
  else if (key == "epoch_length_m") c.epoch_length_m = parse_double(value);
  else if (key == "v_max_mps") c.v_max_mps = parse_double(value);
  else if (key == "timeslot_duration_s") c.timeslot_duration_s = parse_double(value);
  else if (key == "slots_per_epoch") c.slots_per_epoch = parse_int<int>(value);
  else if (key == "grid_resolution") c.grid_resolution = parse_int<int>(value);
  else if (key == "alpha") c.alpha = parse_double(value);
  else if (key == "beta") c.beta = parse_double(value);
  else if (key == "collision_rule")
  {
    auto v = trim(value);
    if (v.substr(0, 4) == "Rule" || v.substr(0, 4) == "rule")
      v.remove_prefix(4);
    c.collision_rule = parse_rule(parse_int<int>(v));
  }
  else if (key == "edge_aggregation")
  {
    const auto v = trim(value);
    if (v == "min") c.edge_aggregation = EdgeAggregation::Min;
    else if (v == "mean") c.edge_aggregation = EdgeAggregation::Mean;
    else if (v == "directed") c.edge_aggregation = EdgeAggregation::Directed;
    else throw std::invalid_argument("edge_aggregation must be min, mean or directed");
  }
  else if (key == "null_depth_floor_db") c.null_depth_floor_db = parse_double(value);
  else if (key == "jammer_pattern") c.jammer_pattern = parse_pattern(value);
  else if (key == "rng_seed") c.rng_seed = parse_int<std::uint64_t>(value);
  else
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::string_view text)
{
  return parse_config(text, make_default_config());
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig cfg)
{
  std::size_t line_no = 0;
  while (!text.empty())
  {
    ++line_no;
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error(
        "config line " + std::to_string(line_no) + ": expected 'key = value'");

    try
    {
      set_config_field(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    catch (const std::invalid_argument& e)
    {
      throw std::runtime_error(
        "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config_file(const ScenarioConfig& cfg, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write config file '" + path + "'");
  out << serialize_config(cfg);
}

} // namespace nullswarm
