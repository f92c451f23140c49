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
#include <nullswarm/env.hpp>
#include <nullswarm/ga.hpp>
#include <nullswarm/motion.hpp>
#include <nullswarm/objective.hpp>
#include <nullswarm/plan_io.hpp>
#include <nullswarm/protocol.hpp>
#include <nullswarm/svg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nullswarm;

namespace {

constexpr int ExitRuntime = 1;
constexpr int ExitUsage = 2;
constexpr int ExitInfeasible = 3;

/// Usage-level failure: bad config, bad flags, mismatched inputs.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Common
{
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  int rule = 0;
  std::string out = "runs";
  unsigned threads = 1;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c)
{
  sub->add_option("--config", c.config_path,
    "Scenario config file (default: $NULLSWARM_CONFIG, else built-in defaults)");
  sub->add_option("--set", c.overrides, "Config override KEY=VALUE (repeatable)");
  sub->add_option("--seed", c.seed, "Random seed (default: config rng_seed)");
  sub->add_option("--rule", c.rule, "Collision rule override")->check(CLI::Range(1, 3));
}

void add_output(CLI::App* sub, Common& c)
{
  sub->add_option("--out", c.out, "Parent directory of the run directory")
    ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  sub->add_flag("--timing", c.timing,
    "Record wall-clock times in outputs (makes them run-dependent)");
}

ScenarioConfig resolve_config(CLI::App* sub, Common& c)
{
  std::string path = c.config_path;
  if (path.empty())
  {
    if (const char* env = std::getenv("NULLSWARM_CONFIG"))
      path = env;
  }

  ScenarioConfig cfg = make_default_config();
  try
  {
    if (!path.empty())
      cfg = load_config_file(path);
    for (const auto& kv : c.overrides)
    {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("--set expects KEY=VALUE, got '" + kv + "'");
      set_config_field(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (c.rule != 0)
      cfg.collision_rule = parse_rule(c.rule);
    require_valid(cfg);
  }
  catch (const InvalidConfig& e)
  {
    std::string msg = "invalid config:";
    for (const auto& v : e.violations())
      msg += "\n  " + v.field + ": " + v.message;
    throw UsageError(msg);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }

  if (sub->count("--seed") == 0)
    c.seed = cfg.rng_seed;
  if (c.threads == 0)
    throw UsageError("--threads must be at least 1");
  return cfg;
}

fs::path make_run_dir(const Common& c, const std::string& command,
  const ScenarioConfig& cfg, const std::string& extras)
{
  const std::string key = command + "\n" + serialize_config(cfg) + "\nseed="
    + std::to_string(c.seed) + "\n" + extras;
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
    static_cast<unsigned long long>(fnv1a(key)));
  const fs::path dir = fs::path(c.out) / (command + "-" + hex);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    throw std::runtime_error("cannot write '" + path.string() + "'");
}

std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Vec2 parse_point(const std::string& text)
{
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError("expected X,Y, got '" + text + "'");
  try
  {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  }
  catch (const std::exception&)
  {
    throw UsageError("expected X,Y, got '" + text + "'");
  }
}

std::vector<Vec2> parse_formation(const std::string& text)
{
  std::vector<Vec2> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
  {
    if (!item.empty())
      out.push_back(parse_point(item));
  }
  return out;
}

std::vector<Vec2> checked_formation(const std::string& text, const ScenarioConfig& cfg)
{
  auto f = parse_formation(text);
  if (f.size() != static_cast<std::size_t>(cfg.num_uavs))
    throw UsageError("--formation lists " + std::to_string(f.size())
      + " UAVs but the config has " + std::to_string(cfg.num_uavs));
  return f;
}

/// Regular polygon about the start-cell center, wide enough for d_min.
std::vector<Vec2> polygon_formation(const ScenarioConfig& cfg)
{
  const Vec2 c = slot_cell(0, 0, cfg).center();
  const int n = cfg.num_uavs;
  double r = 0.0;
  if (n > 1)
    r = 1.05 * cfg.min_separation_m / (2.0 * std::sin(std::numbers::pi / n));
  r = std::min(r, 0.5 * cfg.cell_size_m - 1.0);
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i)
  {
    const double a = std::numbers::pi / 4.0 + 2.0 * std::numbers::pi * i / n;
    out.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return out;
}

std::string join_points(const std::vector<Vec2>& pts)
{
  std::string s;
  for (const auto& p : pts)
    s += format_double(p.x) + "," + format_double(p.y) + ";";
  return s;
}

GaParams ga_params_from(int pop, int gens, unsigned threads)
{
  GaParams p;
  p.population_size = pop;
  p.generations = gens;
  p.threads = threads;
  try
  {
    validate(p);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }
  return p;
}

std::string metric_file(const MetricTable& t)
{
  return std::string(MetricCsvHeader) + "\n" + metric_csv_row(t) + "\n";
}

double elapsed_s(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

//==============================================================================
struct GaRunArgs
{
  std::string mode = "orientation-only";
  int pop = 50;
  int gens = 50;
  std::string formation;
  std::string jammer = "30,500";
};

int cmd_ga_run(CLI::App* sub, Common& c, const GaRunArgs& a)
{
  const ScenarioConfig cfg = resolve_config(sub, c);
  GaParams params = ga_params_from(a.pop, a.gens, c.threads);
  try
  {
    params.mode = parse_ga_mode(a.mode);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }
  const Vec2 jammer = parse_point(a.jammer);
  const std::vector<Vec2> formation = a.formation.empty()
    ? random_formation(cfg, c.seed, true).positions
    : checked_formation(a.formation, cfg);
  const CollisionFinding start = check_start(formation, cfg);
  if (!start.ok())
  {
    std::cerr << "infeasible start: " << to_string(start.kind) << "\n";
    return ExitInfeasible;
  }

  const GaContext ctx{formation, jammer, cfg, 0};
  const GaResult r = run_ga(params, ctx, c.seed);
  const DecodedGenome decoded = decode(r.best_genome, ctx, params.mode);
  const bool progressing = params.mode == GaMode::PositionProgressing;

  double baseline = 0.0;
  std::string baseline_name;
  MetricTable t;
  t.algorithm = "GA-" + to_string(params.mode);
  t.collision_rule = cfg.collision_rule;
  t.samples = 1;
  t.mean_fitness = r.best_fitness;
  t.collision_pct = r.feasible_found ? 0.0 : 100.0;
  t.mean_wall_time_s = c.timing ? r.wall_time_s : 0.0;
  std::vector<double> final_nulls;
  if (progressing)
  {
    baseline_name = "random_plan";
    const RandomPlan rp = random_plan(formation, cfg, c.seed, true);
    if (!rp.flagged)
      baseline = epoch_objective(rp.block, jammer, cfg).objective;
    const EpochObjective eo = epoch_objective(decoded.block, jammer, cfg);
    for (const auto& s : eo.per_slot)
    {
      t.mean_c_avg_bps += s.c_avg_bps / static_cast<double>(eo.per_slot.size());
      t.mean_c_min_bps += s.c_min_bps / static_cast<double>(eo.per_slot.size());
    }
    final_nulls = nulls_toward(decoded.block.column(decoded.block.num_points() - 1), jammer);
  }
  else
  {
    baseline_name = "null_toward_jammer";
    if (check_formation(formation, cfg).ok())
    {
      baseline = link_report(SwarmState::make(formation,
        null_at_jammer(formation, jammer), jammer), cfg).fitness;
    }
    final_nulls = decoded.null_angles_deg.empty()
      ? nulls_toward(decoded.block.column(0), jammer) : decoded.null_angles_deg;
    const LinkReport rep = link_report(
      SwarmState::make(decoded.block.column(0), final_nulls, jammer), cfg);
    t.mean_c_avg_bps = rep.c_avg_bps;
    t.mean_c_min_bps = rep.c_min_bps;
  }
  t.per_sample_fitness = {r.best_fitness};

  const std::string extras = "mode=" + a.mode + " pop=" + std::to_string(a.pop)
    + " gens=" + std::to_string(a.gens) + " formation=" + join_points(formation)
    + " jammer=" + a.jammer;
  const fs::path dir = make_run_dir(c, "ga-run", cfg, extras);

  PlanFile pf;
  pf.plan.epochs = {decoded.block};
  pf.plan.fitness_per_epoch = {r.best_fitness};
  pf.plan.feasible = r.feasible_found;
  pf.jammer = jammer;
  if (!progressing)
    pf.null_angles_deg = final_nulls;

  json result;
  result["mode"] = to_string(params.mode);
  result["seed"] = c.seed;
  result["best_fitness"] = r.best_fitness;
  result["feasible_found"] = r.feasible_found;
  result["best_genome"] = r.best_genome.genes;
  result["fitness_history"] = r.fitness_history;
  result["evaluations"] = r.evaluations;
  result["baseline"] = baseline_name;
  result["baseline_fitness"] = baseline;
  result["initial_positions"] = json::array();
  for (const auto& p : formation)
    result["initial_positions"].push_back({p.x, p.y});
  result["jammer"] = {jammer.x, jammer.y};
  if (c.timing)
    result["wall_time_s"] = r.wall_time_s;

  write_file(dir / "result.json", result.dump(2) + "\n");
  save_plan_file(pf, (dir / "plan.json").string());
  write_file(dir / "metrics.csv", metric_file(t));
  const std::string title = "GA " + to_string(params.mode) + ", rule "
    + std::to_string(static_cast<int>(cfg.collision_rule));
  write_file(dir / "plot.svg", progressing
    ? trajectory_svg({decoded.block}, jammer, cfg, final_nulls, title)
    : formation_svg(decoded.block.column(0), final_nulls, jammer, cfg, title));
  write_file(dir / "convergence.svg",
    line_chart_svg(r.fitness_history, "GA best fitness", "generation", "fitness"));

  std::cout << "fitness " << format_double(r.best_fitness) << "\n"
            << "baseline_fitness " << format_double(baseline) << "\n"
            << "feasible " << (r.feasible_found ? "true" : "false") << "\n"
            << "run_dir " << dir.string() << "\n";
  return 0;
}

//==============================================================================
struct MissionArgs
{
  int pop = 50;
  int gens = 50;
  std::string formation;
  std::string jammer = "30,500";
  double band_min = 300.0;
  double band_max = 360.0;
  std::string target = "30,330";
  std::size_t max_epochs = 50;
};

int write_mission_outputs(const Common& c, const std::string& command,
  const ScenarioConfig& cfg, const std::string& extras, const TrajectoryPlan& plan,
  Vec2 jammer, double wall_s)
{
  const fs::path dir = make_run_dir(c, command, cfg, extras);

  PlanFile pf{plan, jammer, std::nullopt};
  save_plan_file(pf, (dir / "plan.json").string());

  std::string csv = "epoch,fitness\n";
  for (std::size_t e = 0; e < plan.fitness_per_epoch.size(); ++e)
    csv += std::to_string(e) + "," + format_double(plan.fitness_per_epoch[e]) + "\n";
  write_file(dir / "fitness.csv", csv);

  std::optional<std::vector<double>> nulls;
  if (!plan.epochs.empty())
  {
    const PositionBlock& last = plan.epochs.back();
    nulls = nulls_toward(last.column(last.num_points() - 1), jammer);
  }
  // Adaptive plans live in the world frame, where the corridor cells do not
  // apply, so only the paths are drawn.
  const bool rotated = plan.rotation_angle_deg && *plan.rotation_angle_deg != 0.0;
  const std::string svg = trajectory_svg(plan.epochs, jammer, cfg, nulls, command, !rotated);
  write_file(dir / "trajectory.svg", svg);

  json summary;
  summary["epochs"] = plan.num_epochs();
  summary["complete"] = plan.complete;
  summary["feasible"] = plan.feasible;
  summary["seed"] = c.seed;
  summary["rotation_angle_deg"] = plan.rotation_angle_deg
    ? json(*plan.rotation_angle_deg) : json(nullptr);
  if (c.timing)
    summary["wall_time_s"] = wall_s;
  write_file(dir / "result.json", summary.dump(2) + "\n");

  std::cout << "epochs " << plan.num_epochs() << "\n"
            << "complete " << (plan.complete ? "true" : "false") << "\n";
  if (plan.rotation_angle_deg)
    std::cout << "rotation_angle_deg " << format_double(*plan.rotation_angle_deg) << "\n";
  std::cout << "run_dir " << dir.string() << "\n";
  return 0;
}

int cmd_mission(CLI::App* sub, Common& c, const MissionArgs& a)
{
  const ScenarioConfig cfg = resolve_config(sub, c);
  const GaParams params = ga_params_from(a.pop, a.gens, c.threads);
  const Vec2 jammer = parse_point(a.jammer);
  const std::vector<Vec2> formation = a.formation.empty()
    ? random_formation(cfg, c.seed, true).positions
    : checked_formation(a.formation, cfg);
  if (!(a.band_max >= a.band_min))
    throw UsageError("--band-max must not be below --band-min");

  const auto start = std::chrono::steady_clock::now();
  TrajectoryPlan plan;
  try
  {
    plan = run_mission(params, formation, jammer, {a.band_min, a.band_max}, cfg,
      c.seed, a.max_epochs);
  }
  catch (const InfeasibleStart& e)
  {
    std::cerr << "infeasible start: " << e.what() << "\n";
    return ExitInfeasible;
  }
  const std::string extras = "pop=" + std::to_string(a.pop) + " gens="
    + std::to_string(a.gens) + " formation=" + join_points(formation) + " jammer="
    + a.jammer + " band=" + format_double(a.band_min) + "," + format_double(a.band_max)
    + " max_epochs=" + std::to_string(a.max_epochs);
  return write_mission_outputs(c, "mission", cfg, extras, plan, jammer, elapsed_s(start));
}

int cmd_adaptive(CLI::App* sub, Common& c, const MissionArgs& a)
{
  const ScenarioConfig cfg = resolve_config(sub, c);
  const GaParams params = ga_params_from(a.pop, a.gens, c.threads);
  const Vec2 jammer = parse_point(a.jammer);
  const Vec2 target = parse_point(a.target);
  const std::vector<Vec2> formation = a.formation.empty()
    ? polygon_formation(cfg) : checked_formation(a.formation, cfg);

  const auto start = std::chrono::steady_clock::now();
  TrajectoryPlan plan;
  try
  {
    plan = run_adaptive(params, formation, jammer, target, cfg, c.seed, a.max_epochs);
  }
  catch (const InfeasibleStart& e)
  {
    std::cerr << "infeasible start: " << e.what() << "\n";
    return ExitInfeasible;
  }
  const std::string extras = "pop=" + std::to_string(a.pop) + " gens="
    + std::to_string(a.gens) + " formation=" + join_points(formation) + " jammer="
    + a.jammer + " target=" + a.target + " max_epochs=" + std::to_string(a.max_epochs);
  return write_mission_outputs(c, "adaptive", cfg, extras, plan, jammer, elapsed_s(start));
}

//==============================================================================
struct DatasetArgs
{
  std::size_t train = 100;
  std::size_t test = 20;
  std::string train_mode = "discrete";
  std::string test_mode = "continuous";
  int pop = 50;
  int gens = 50;
};

SampleSpec::Mode parse_sample_mode(const std::string& text)
{
  if (text == "discrete") return SampleSpec::Mode::Discrete;
  if (text == "continuous") return SampleSpec::Mode::Continuous;
  throw UsageError("sample mode must be discrete or continuous, got '" + text + "'");
}

int cmd_dataset(CLI::App* sub, Common& c, const DatasetArgs& a)
{
  const ScenarioConfig cfg = resolve_config(sub, c);
  const GaParams params = ga_params_from(a.pop, a.gens, 1);
  const SampleSpec::Mode train_mode = parse_sample_mode(a.train_mode);
  const SampleSpec::Mode test_mode = parse_sample_mode(a.test_mode);

  const std::string extras = "train=" + std::to_string(a.train) + " test="
    + std::to_string(a.test) + " train_mode=" + a.train_mode + " test_mode="
    + a.test_mode + " pop=" + std::to_string(a.pop) + " gens=" + std::to_string(a.gens);
  const fs::path dir = make_run_dir(c, "dataset", cfg, extras);

  auto warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
  struct Split
  {
    const char* name;
    std::size_t count;
    SampleSpec::Mode mode;
  };
  for (const Split& split : {Split{"train", a.train, train_mode},
         Split{"test", a.test, test_mode}})
  {
    SampleSpec spec;
    spec.count = split.count;
    spec.mode = split.mode;
    spec.threads = c.threads;
    const std::uint64_t split_seed = mix_seed(c.seed, fnv1a(split.name));

    const fs::path path = dir / (std::string(split.name) + ".jsonl");
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write '" + path.string() + "'");
    out << serialize_header(make_header(cfg, spec.mode, split_seed)) << '\n';
    std::size_t written = 0;
    auto sink = [&](const SampleRecord& r)
    {
      out << serialize_record(r) << '\n' << std::flush;
      ++written;
    };
    generate_dataset(cfg, params, spec, split_seed, sink, warn);
    if (!out)
      throw std::runtime_error("cannot write '" + path.string() + "'");
    std::cout << split.name << "_records " << written << "\n";
  }
  std::cout << "run_dir " << dir.string() << "\n";
  return 0;
}

//==============================================================================
struct EvalArgs
{
  std::string dataset_dir;
  std::string train_path;
  std::string test_path;
  std::string predictor = "knn";
  std::size_t k = 1;
  std::string on = "test";
  std::string predictions;
  std::string name = "external";
};

int cmd_eval(CLI::App* sub, Common& c, const EvalArgs& a)
{
  ScenarioConfig cfg = resolve_config(sub, c);

  fs::path train_path = a.train_path;
  fs::path test_path = a.test_path;
  if (!a.dataset_dir.empty())
  {
    if (train_path.empty()) train_path = fs::path(a.dataset_dir) / "train.jsonl";
    if (test_path.empty()) test_path = fs::path(a.dataset_dir) / "test.jsonl";
  }
  if (a.on != "train" && a.on != "test")
    throw UsageError("--on must be train or test");
  const fs::path eval_path = a.on == "train" ? train_path : test_path;
  if (eval_path.empty())
    throw UsageError("no dataset given: use --dataset DIR or --train/--test");

  auto load = [](const fs::path& p)
  {
    try
    {
      return load_dataset(p.string());
    }
    catch (const std::exception& e)
    {
      throw UsageError(e.what());
    }
  };
  const Dataset eval_set = load(eval_path);
  if (c.rule == 0)
    cfg.collision_rule = eval_set.header.collision_rule;
  if (eval_set.header.collision_rule != cfg.collision_rule)
    throw UsageError("dataset was generated under rule "
      + std::to_string(static_cast<int>(eval_set.header.collision_rule)));
  if (eval_set.header.cfg_hash != config_hash(cfg))
    throw UsageError("dataset was generated under a different scenario config");
  if (eval_set.records.empty())
    throw UsageError("dataset has no records");

  const std::size_t n = static_cast<std::size_t>(cfg.num_uavs);
  const std::size_t T = static_cast<std::size_t>(cfg.scored_slots());
  std::vector<PositionBlock> predictions;
  std::string algorithm;
  double total_time = 0.0;

  if (a.predictor == "knn")
  {
    if (train_path.empty())
      throw UsageError("knn needs a training set");
    const Dataset train = load(train_path);
    if (train.header.cfg_hash != eval_set.header.cfg_hash)
      throw UsageError("train and evaluation sets disagree on the config");
    KnnModel model;
    try
    {
      model = knn_fit(train.records, a.k);
    }
    catch (const std::exception& e)
    {
      throw UsageError(e.what());
    }
    algorithm = "KNN(k=" + std::to_string(a.k) + ")";
    for (const auto& rec : eval_set.records)
    {
      const auto t0 = std::chrono::steady_clock::now();
      predictions.push_back(knn_predict(model, rec.features));
      total_time += elapsed_s(t0);
    }
  }
  else if (a.predictor == "random")
  {
    algorithm = "Random";
    for (std::size_t s = 0; s < eval_set.records.size(); ++s)
    {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t seed = Rng::stream(c.seed, "eval-random", s).next();
      predictions.push_back(
        random_plan(eval_set.records[s].initial_positions(), cfg, seed, false).block);
      total_time += elapsed_s(t0);
    }
  }
  else if (a.predictor == "ga-ref")
  {
    algorithm = "GA";
    for (const auto& rec : eval_set.records)
      predictions.push_back(rec.full_block());
  }
  else if (a.predictor == "external")
  {
    if (a.predictions.empty())
      throw UsageError("external predictor needs --predictions FILE");
    algorithm = a.name;
    std::vector<PositionBlock> labels;
    try
    {
      labels = load_predictions(a.predictions, n, T);
    }
    catch (const std::exception& e)
    {
      throw UsageError(e.what());
    }
    if (labels.size() != eval_set.records.size())
      throw UsageError("predictions file has " + std::to_string(labels.size())
        + " entries but the dataset has " + std::to_string(eval_set.records.size()));
    for (std::size_t s = 0; s < labels.size(); ++s)
      predictions.push_back(with_initial_column(eval_set.records[s].initial_positions(), labels[s]));
  }
  else
  {
    throw UsageError("--predictor must be knn, random, ga-ref, or external");
  }

  const double mean_time = c.timing
    ? total_time / static_cast<double>(predictions.size()) : 0.0;
  const MetricTable table = evaluate_predictor(algorithm, predictions,
    eval_set.records, cfg, mean_time);

  std::string extras = "predictor=" + a.predictor + " k=" + std::to_string(a.k)
    + " on=" + a.on + " eval=" + std::to_string(fnv1a(read_file(eval_path)));
  if (a.predictor == "knn")
    extras += " train=" + std::to_string(fnv1a(read_file(train_path)));
  if (a.predictor == "external")
    extras += " predictions=" + std::to_string(fnv1a(read_file(a.predictions)));
  const fs::path dir = make_run_dir(c, "eval", cfg, extras);

  write_file(dir / "metrics.csv", metric_file(table));
  write_file(dir / "metrics.json", metric_json(table));
  std::string lines;
  for (std::size_t s = 0; s < predictions.size(); ++s)
  {
    PositionBlock label(n, T);
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t t = 1; t <= T; ++t)
        label.at(i, t - 1) = predictions[s].at(i, t);
    }
    lines += serialize_prediction(s, label) + "\n";
  }
  write_file(dir / "predictions.jsonl", lines);

  std::cout << MetricCsvHeader << "\n" << metric_csv_row(table) << "\n"
            << "run_dir " << dir.string() << "\n";
  return 0;
}

//==============================================================================
struct ServeArgs
{
  int port = -1;
  std::string bind = "127.0.0.1";
  std::string randomize = "fixed";
  double reward_scale = 1e6;
  std::string formation;
  std::string jammer = "30,500";
};

int cmd_serve(CLI::App* sub, Common& c, const ServeArgs& a)
{
  EnvConfig env = make_default_env_config();
  env.base = resolve_config(sub, c);
  env.reward_scale = a.reward_scale;
  if (a.randomize == "fixed") env.randomize = EnvConfig::Randomize::Fixed;
  else if (a.randomize == "randomized") env.randomize = EnvConfig::Randomize::Randomized;
  else throw UsageError("--randomize must be fixed or randomized");
  env.fixed_jammer = parse_point(a.jammer);
  if (!a.formation.empty())
    env.fixed_initials = checked_formation(a.formation, env.base);
  else if (env.fixed_initials->size() != static_cast<std::size_t>(env.base.num_uavs))
    env.fixed_initials = polygon_formation(env.base);
  try
  {
    require_valid(env);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }

  if (a.port < 0)
  {
    serve_stream(std::cin, std::cout, env);
    return 0;
  }
  serve_tcp(a.port, env, [](int port)
  {
    std::cerr << "listening " << port << std::endl;
  }, nullptr, a.bind);
  return 0;
}

//==============================================================================
struct CheckArgs
{
  std::string plan;
};

int cmd_check(CLI::App* sub, Common& c, const CheckArgs& a)
{
  const ScenarioConfig cfg = resolve_config(sub, c);
  PlanFile pf;
  try
  {
    pf = load_plan_file(a.plan);
  }
  catch (const std::exception& e)
  {
    throw UsageError(e.what());
  }

  TrajectoryPlan plan = pf.plan;
  if (plan.rotation_angle_deg && *plan.rotation_angle_deg != 0.0 && !plan.epochs.empty())
  {
    // Adaptive plans are checked back in the corridor frame.
    const Vec2 center = centroid(plan.epochs.front().column(0));
    const double theta = deg_to_rad(*plan.rotation_angle_deg);
    for (auto& block : plan.epochs)
    {
      for (std::size_t i = 0; i < block.num_uavs(); ++i)
      {
        for (std::size_t s = 0; s < block.num_points(); ++s)
          block.at(i, s) = rotate_about(block.at(i, s), center, theta);
      }
    }
  }

  bool ok = true;
  for (std::size_t e = 0; e < plan.epochs.size(); ++e)
  {
    if (plan.epochs[e].num_uavs() != static_cast<std::size_t>(cfg.num_uavs))
      throw UsageError("plan has a different UAV count than the config");
    const CollisionFinding f = check_plan(plan.epochs[e], cfg, e);
    std::cout << "epoch " << e << " " << to_string(f.kind);
    if (f.pair)
      std::cout << " pair " << f.pair->first << "," << f.pair->second;
    if (f.uav)
      std::cout << " uav " << *f.uav;
    if (f.slot)
      std::cout << " slot " << *f.slot;
    std::cout << " min_dist_m " << format_double(f.min_dist_m) << "\n";
    ok = ok && f.ok();
  }
  const std::string invariants = check_plan_invariants(plan);
  if (!invariants.empty())
  {
    std::cout << "invariants " << invariants << "\n";
    ok = false;
  }
  std::cout << (ok ? "ok" : "violation") << "\n";
  return ok ? 0 : ExitRuntime;
}

int cmd_show_config(CLI::App* sub, Common& c)
{
  std::cout << serialize_config(resolve_config(sub, c));
  return 0;
}

} // anonymous namespace

int main(int argc, char** argv)
{
  CLI::App app{"UAV swarm anti-jamming planner"};
  app.require_subcommand(1);

  Common common;

  GaRunArgs ga;
  auto* ga_cmd = app.add_subcommand("ga-run", "Optimize one formation or epoch with the GA");
  add_common(ga_cmd, common);
  add_output(ga_cmd, common);
  ga_cmd->add_option("--mode", ga.mode, "orientation-only | joint | position-only | progressing")
    ->capture_default_str();
  ga_cmd->add_option("--pop", ga.pop, "Population size")->capture_default_str();
  ga_cmd->add_option("--gens", ga.gens, "Generations")->capture_default_str();
  ga_cmd->add_option("--formation", ga.formation,
    "Initial positions X,Y;X,Y;... (default: seeded random formation)");
  ga_cmd->add_option("--jammer", ga.jammer, "Jammer position X,Y")->capture_default_str();

  MissionArgs mission;
  auto* mission_cmd = app.add_subcommand("mission", "Multi-epoch progressing mission");
  add_common(mission_cmd, common);
  add_output(mission_cmd, common);
  mission_cmd->add_option("--pop", mission.pop, "Population size")->capture_default_str();
  mission_cmd->add_option("--gens", mission.gens, "Generations")->capture_default_str();
  mission_cmd->add_option("--formation", mission.formation,
    "Initial positions X,Y;X,Y;... (default: seeded random formation)");
  mission_cmd->add_option("--jammer", mission.jammer, "Jammer position X,Y")->capture_default_str();
  mission_cmd->add_option("--band-min", mission.band_min, "Target band lower y")->capture_default_str();
  mission_cmd->add_option("--band-max", mission.band_max, "Target band upper y")->capture_default_str();
  mission_cmd->add_option("--max-epochs", mission.max_epochs, "Epoch budget")->capture_default_str();

  MissionArgs adaptive;
  auto* adaptive_cmd = app.add_subcommand("adaptive",
    "Mission toward an arbitrary target point, rotated about the swarm's centroid");
  add_common(adaptive_cmd, common);
  add_output(adaptive_cmd, common);
  adaptive_cmd->add_option("--pop", adaptive.pop, "Population size")->capture_default_str();
  adaptive_cmd->add_option("--gens", adaptive.gens, "Generations")->capture_default_str();
  adaptive_cmd->add_option("--formation", adaptive.formation,
    "Initial positions X,Y;X,Y;... inside the start circle (default: regular polygon)");
  adaptive_cmd->add_option("--jammer", adaptive.jammer, "Jammer position X,Y")->capture_default_str();
  adaptive_cmd->add_option("--target", adaptive.target, "Target point X,Y")->capture_default_str();
  adaptive_cmd->add_option("--max-epochs", adaptive.max_epochs, "Epoch budget")->capture_default_str();

  DatasetArgs dataset;
  auto* dataset_cmd = app.add_subcommand("dataset", "Generate GA-labelled train/test datasets");
  add_common(dataset_cmd, common);
  add_output(dataset_cmd, common);
  dataset_cmd->add_option("--train", dataset.train, "Training samples")->capture_default_str();
  dataset_cmd->add_option("--test", dataset.test, "Test samples")->capture_default_str();
  dataset_cmd->add_option("--train-mode", dataset.train_mode,
    "Training start positions: discrete | continuous")->capture_default_str();
  dataset_cmd->add_option("--test-mode", dataset.test_mode,
    "Test start positions: discrete | continuous")->capture_default_str();
  dataset_cmd->add_option("--pop", dataset.pop, "GA population size")->capture_default_str();
  dataset_cmd->add_option("--gens", dataset.gens, "GA generations")->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a predictor on a dataset");
  add_common(eval_cmd, common);
  add_output(eval_cmd, common);
  eval_cmd->add_option("--dataset", eval.dataset_dir, "Run directory holding train.jsonl and test.jsonl");
  eval_cmd->add_option("--train", eval.train_path, "Training dataset file");
  eval_cmd->add_option("--test", eval.test_path, "Test dataset file");
  eval_cmd->add_option("--predictor", eval.predictor, "knn | random | ga-ref | external")
    ->capture_default_str();
  eval_cmd->add_option("--k", eval.k, "Neighbours for knn")->capture_default_str();
  eval_cmd->add_option("--on", eval.on, "Evaluate on train | test")->capture_default_str();
  eval_cmd->add_option("--predictions", eval.predictions, "Predictions file for external");
  eval_cmd->add_option("--name", eval.name, "Algorithm name for external")->capture_default_str();

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the RL environment (stdio, or TCP with --port)");
  add_common(serve_cmd, common);
  serve_cmd->add_option("--port", serve.port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--bind", serve.bind, "TCP bind address")->capture_default_str();
  serve_cmd->add_option("--randomize", serve.randomize, "fixed | randomized")->capture_default_str();
  serve_cmd->add_option("--reward-scale", serve.reward_scale, "Reward divisor")->capture_default_str();
  serve_cmd->add_option("--formation", serve.formation, "Fixed initial positions X,Y;X,Y;...");
  serve_cmd->add_option("--jammer", serve.jammer, "Fixed jammer position X,Y")->capture_default_str();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a plan file against the collision rule");
  add_common(check_cmd, common);
  check_cmd->add_option("--plan", check.plan, "Plan file")->required();

  auto* show_cmd = app.add_subcommand("show-config", "Print the effective scenario config");
  add_common(show_cmd, common);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitUsage;
  }

  try
  {
    if (ga_cmd->parsed()) return cmd_ga_run(ga_cmd, common, ga);
    if (mission_cmd->parsed()) return cmd_mission(mission_cmd, common, mission);
    if (adaptive_cmd->parsed()) return cmd_adaptive(adaptive_cmd, common, adaptive);
    if (dataset_cmd->parsed()) return cmd_dataset(dataset_cmd, common, dataset);
    if (eval_cmd->parsed()) return cmd_eval(eval_cmd, common, eval);
    if (serve_cmd->parsed()) return cmd_serve(serve_cmd, common, serve);
    if (check_cmd->parsed()) return cmd_check(check_cmd, common, check);
    if (show_cmd->parsed()) return cmd_show_config(show_cmd, common);
  }
  catch (const UsageError& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return ExitUsage;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return ExitRuntime;
  }
  return ExitUsage;
}
