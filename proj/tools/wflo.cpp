// Command-line front end: optimize | evaluate | bench | field | cases.
// Every run resolves its configuration (defaults < config file < flags),
// echoes it to a manifest, and writes CSV outputs that downstream tools plot.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wflo/wflo.hpp"

namespace fs = std::filesystem;
using namespace wflo;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

// Resolved configuration of an optimization run; also the manifest schema.
struct RunOptions {
  std::string algo = "rlga";  // ga | rlga
  std::string case_id = "IA";
  std::string layout = "aligned";
  std::uint64_t layout_seed = 1;
  std::uint64_t seed = 1;
  int generations = 5000;
  int np = 5;
  // fixed GA operators
  int pc = 2;
  std::string crossover = "single_point";
  double mc = 4.0;
  // RLGA option sets
  std::string pc_options = "2,3";
  std::string crossover_options = "single_point,uniform,two_points,scattered";
  std::string mc_options = "1,2,3,4";
  // agent hyperparameters
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.1;
  std::string rose = "builtin";  // builtin | path to rose csv

  KeyValueMap to_manifest() const {
    KeyValueMap m;
    m["algo"] = algo;
    m["case"] = case_id;
    m["layout"] = layout;
    m["layout_seed"] = std::to_string(layout_seed);
    m["seed"] = std::to_string(seed);
    m["generations"] = std::to_string(generations);
    m["np"] = std::to_string(np);
    m["pc"] = std::to_string(pc);
    m["crossover"] = crossover;
    m["mc"] = format_full(mc);
    m["pc_options"] = pc_options;
    m["crossover_options"] = crossover_options;
    m["mc_options"] = mc_options;
    m["alpha"] = format_full(alpha);
    m["gamma"] = format_full(gamma);
    m["epsilon"] = format_full(epsilon);
    m["rose"] = rose;
    return m;
  }
};

// Bind every RunOptions field as a flag; returns the option handles so the
// config-file merge can tell explicit flags from defaults.
std::map<std::string, CLI::Option*> add_run_options(CLI::App* cmd, RunOptions& opts) {
  std::map<std::string, CLI::Option*> handles;
  handles["algo"] = cmd->add_option("--algo", opts.algo, "Optimizer: ga or rlga");
  handles["case"] = cmd->add_option("--case", opts.case_id, "Case id, IA..IIIC");
  handles["layout"] = cmd->add_option("--layout", opts.layout,
                                      "Layout kind: aligned|staggered|sunflower|unstructured");
  handles["layout_seed"] =
      cmd->add_option("--layout-seed", opts.layout_seed, "Seed of the unstructured pool");
  handles["seed"] = cmd->add_option("--seed", opts.seed, "Master seed of the run");
  handles["generations"] = cmd->add_option("--generations", opts.generations, "Generation budget");
  handles["np"] = cmd->add_option("--np", opts.np, "Population size");
  handles["pc"] = cmd->add_option("--pc", opts.pc, "Parents mating (ga)");
  handles["crossover"] = cmd->add_option("--crossover", opts.crossover, "Crossover kind (ga)");
  handles["mc"] = cmd->add_option("--mc", opts.mc, "Mutation percent of genes (ga)");
  handles["pc_options"] =
      cmd->add_option("--pc-options", opts.pc_options, "Parents-mating options (rlga)");
  handles["crossover_options"] = cmd->add_option("--crossover-options", opts.crossover_options,
                                                 "Crossover options (rlga)");
  handles["mc_options"] =
      cmd->add_option("--mc-options", opts.mc_options, "Mutation-percent options (rlga)");
  handles["alpha"] = cmd->add_option("--alpha", opts.alpha, "Q-learning rate");
  handles["gamma"] = cmd->add_option("--gamma", opts.gamma, "Q-learning discount");
  handles["epsilon"] = cmd->add_option("--epsilon", opts.epsilon, "Exploration rate");
  handles["rose"] = cmd->add_option("--rose", opts.rose, "Spread rose: builtin or csv path");
  return handles;
}

void assign_from_string(RunOptions& opts, const std::string& key, const std::string& value) {
  if (key == "algo") opts.algo = value;
  else if (key == "case") opts.case_id = value;
  else if (key == "layout") opts.layout = value;
  else if (key == "layout_seed") opts.layout_seed = std::stoull(value);
  else if (key == "seed") opts.seed = std::stoull(value);
  else if (key == "generations") opts.generations = std::stoi(value);
  else if (key == "np") opts.np = std::stoi(value);
  else if (key == "pc") opts.pc = std::stoi(value);
  else if (key == "crossover") opts.crossover = value;
  else if (key == "mc") opts.mc = parse_double(value, "config mc");
  else if (key == "pc_options") opts.pc_options = value;
  else if (key == "crossover_options") opts.crossover_options = value;
  else if (key == "mc_options") opts.mc_options = value;
  else if (key == "alpha") opts.alpha = parse_double(value, "config alpha");
  else if (key == "gamma") opts.gamma = parse_double(value, "config gamma");
  else if (key == "epsilon") opts.epsilon = parse_double(value, "config epsilon");
  else if (key == "rose") opts.rose = value;
  else throw std::runtime_error("unknown config key: " + key);
}

/// Precedence: defaults < config file < explicit flags.
void merge_config_file(RunOptions& opts, const std::string& config_path,
                       const std::map<std::string, CLI::Option*>& handles) {
  const KeyValueMap entries = read_key_value_file(config_path);
  for (const auto& [key, value] : entries) {
    auto it = handles.find(key);
    if (it == handles.end()) throw std::runtime_error("unknown config key: " + key);
    if (it->second->count() == 0) assign_from_string(opts, key, value);
  }
}

WindScenario scenario_for(const CasePreset& preset, const std::string& rose) {
  if (preset.wind_condition == 'C' && rose != "builtin")
    return scenario_spread(read_rose_csv(rose));
  return make_scenario(preset);
}

OptimizerConfig optimizer_config(const RunOptions& opts) {
  OptimizerConfig cfg;
  cfg.generations = opts.generations;
  cfg.seed = opts.seed;
  cfg.ga.population_size = opts.np;
  cfg.ga.parents_mating = opts.pc;
  cfg.ga.crossover = crossover_from_string(opts.crossover);
  cfg.ga.mutation_percent = opts.mc;
  cfg.actions.parents_options.clear();
  for (const std::string& s : split_list(opts.pc_options))
    cfg.actions.parents_options.push_back(std::stoi(s));
  cfg.actions.crossover_options.clear();
  for (const std::string& s : split_list(opts.crossover_options))
    cfg.actions.crossover_options.push_back(crossover_from_string(s));
  cfg.actions.mutation_options.clear();
  for (const std::string& s : split_list(opts.mc_options))
    cfg.actions.mutation_options.push_back(std::stoi(s));
  cfg.q = {opts.alpha, opts.gamma, opts.epsilon};
  return cfg;
}

void print_summary(const GenomeScore& score, const WindScenario& scenario) {
  std::printf("N        = %zu\n", score.turbines);
  std::printf("P_total  = %s kW\n", format_full(score.power_kw).c_str());
  std::printf("f_obj    = %s /kW\n", format_full(score.objective).c_str());
  std::printf("fitness  = %s kW\n", format_full(score.fitness).c_str());
  std::printf("eta      = %s\n",
               format_full(efficiency(score.power_kw, score.turbines, scenario)).c_str());
}

int cmd_optimize(const RunOptions& opts, const std::string& out_dir) {
  if (opts.algo != "ga" && opts.algo != "rlga")
    throw std::runtime_error("--algo must be ga or rlga");
  const CasePreset& preset = find_case(opts.case_id);
  const LayoutKind kind = layout_kind_from_string(opts.layout);
  const CandidateLayout layout = make_layout(preset, kind, opts.layout_seed);
  const WindScenario scenario = scenario_for(preset, opts.rose);
  const OptimizerConfig cfg = optimizer_config(opts);
  cfg.ga.validate();
  cfg.actions.validate();

  // all validation is done; only now touch the filesystem
  fs::create_directories(out_dir);
  write_manifest(fs::path(out_dir) / "manifest.txt", opts.to_manifest());

  const FarmPowerModel model(layout, scenario, default_turbine());
  const GenomeEvaluator evaluate = make_evaluator(model);
  ConvergenceWriter writer(fs::path(out_dir) / "convergence.csv", opts.algo == "rlga");
  const GenerationSink sink = [&writer](const ConvergenceRecord& rec) { writer.write(rec); };

  const RunResult result = opts.algo == "rlga" ? run_rlga(layout.size(), evaluate, cfg, sink)
                                               : run_ga(layout.size(), evaluate, cfg, sink);

  const std::vector<std::uint32_t> indices = result.best.active_indices();
  std::vector<Point> positions;
  positions.reserve(indices.size());
  for (std::uint32_t i : indices) positions.push_back(layout.positions[i]);
  write_layout_csv(fs::path(out_dir) / "best_layout.csv", positions, indices);
  if (result.final_qtable)
    write_qtable_csv(fs::path(out_dir) / "qtable.csv", *result.final_qtable, cfg.actions);

  print_summary(result.best_score, scenario);
  return 0;
}

std::vector<Point> read_positions_checked(const std::string& path, const CasePreset& preset) {
  const std::vector<Point> positions = read_layout_csv(path);
  for (const Point& p : positions)
    if (p.x < 0.0 || p.x > preset.extent.x || p.y < 0.0 || p.y > preset.extent.y)
      throw std::runtime_error("layout position outside the case extent: (" +
                               format_sig6(p.x) + ", " + format_sig6(p.y) + ")");
  return positions;
}

int cmd_evaluate(const std::string& layout_file, const std::string& case_id,
                 const std::string& rose, const std::string& out_dir) {
  const CasePreset& preset = find_case(case_id);
  const WindScenario scenario = scenario_for(preset, rose);
  const std::vector<Point> positions = read_positions_checked(layout_file, preset);
  if (positions.empty())
    throw std::runtime_error("layout is empty; the objective is undefined at zero power");

  // every listed position is a built turbine
  CandidateLayout as_layout{LayoutKind::aligned, preset.extent, 0.0, 0, positions};
  Genome all(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) all.set(i, true);
  const double power = expected_power(all, as_layout, scenario, default_turbine());
  const EvaluationResult result = evaluate(power, positions.size(), scenario);
  print_summary({result.total_power_kw, result.turbine_count, result.objective, result.fitness},
                scenario);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream report(fs::path(out_dir) / "report.csv");
    report << "n_turbines,power_kw,fobj,fitness,eta\n"
           << result.turbine_count << ',' << format_full(result.total_power_kw) << ','
           << format_full(result.objective) << ',' << format_full(result.fitness) << ','
           << format_full(result.efficiency) << '\n';
    KeyValueMap manifest{{"command", "evaluate"},
                         {"layout_file", layout_file},
                         {"case", case_id},
                         {"rose", rose}};
    write_manifest(fs::path(out_dir) / "manifest.txt", manifest);
  }
  return 0;
}

int cmd_field(const std::string& layout_file, const std::string& case_id, double direction,
              double speed, int resolution, const std::string& out_file) {
  if (resolution < 2) throw std::runtime_error("--resolution must be at least 2 cells per axis");
  const CasePreset& preset = find_case(case_id);
  const std::vector<Point> positions = read_positions_checked(layout_file, preset);

  GridSpec grid;
  grid.origin = {0.0, 0.0};
  grid.cell_size = preset.extent.x / resolution;
  grid.nx = resolution;
  grid.ny = static_cast<int>(std::lround(preset.extent.y / grid.cell_size));
  const VelocityGrid field =
      velocity_field(positions, direction, speed, default_turbine(), grid);
  write_field_csv(out_file, field);
  KeyValueMap manifest{{"command", "field"},         {"layout_file", layout_file},
                       {"case", case_id},            {"direction", format_full(direction)},
                       {"speed", format_full(speed)}, {"resolution", std::to_string(resolution)}};
  write_manifest(out_file + ".manifest.txt", manifest);
  return 0;
}

int cmd_bench(RunOptions opts, int seeds, std::optional<double> target_override,
              const std::string& out_dir) {
  if (seeds < 1) throw std::runtime_error("--seeds must be >= 1");
  const CasePreset& preset = find_case(opts.case_id);
  const LayoutKind kind = layout_kind_from_string(opts.layout);
  const CandidateLayout layout = make_layout(preset, kind, opts.layout_seed);
  const WindScenario scenario = scenario_for(preset, opts.rose);
  OptimizerConfig cfg = optimizer_config(opts);
  cfg.ga.validate();
  cfg.actions.validate();

  fs::create_directories(out_dir);
  KeyValueMap manifest = opts.to_manifest();
  manifest["command"] = "bench";
  manifest["seeds"] = std::to_string(seeds);
  manifest.erase("algo");  // bench always runs both
  write_manifest(fs::path(out_dir) / "manifest.txt", manifest);

  const FarmPowerModel model(layout, scenario, default_turbine());
  const GenomeEvaluator evaluate = make_evaluator(model);

  struct Job {
    bool rlga;
    std::uint64_t seed;
    RunResult result;
  };
  std::vector<Job> jobs;
  for (int s = 0; s < seeds; ++s) jobs.push_back({false, opts.seed + s, {}});
  for (int s = 0; s < seeds; ++s) jobs.push_back({true, opts.seed + s, {}});

  // fan runs out over the available cores; each run owns its history file
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      Job& job = jobs[i];
      const std::string name =
          std::string(job.rlga ? "rlga" : "ga") + "_seed" + std::to_string(job.seed) + ".csv";
      ConvergenceWriter writer(fs::path(out_dir) / name, job.rlga);
      OptimizerConfig run_cfg = cfg;
      run_cfg.seed = job.seed;
      const GenerationSink sink = [&writer](const ConvergenceRecord& rec) { writer.write(rec); };
      job.result = job.rlga ? run_rlga(layout.size(), evaluate, run_cfg, sink)
                            : run_ga(layout.size(), evaluate, run_cfg, sink);
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), jobs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::vector<double> ga_finals;
  for (const Job& job : jobs)
    if (!job.rlga) ga_finals.push_back(job.result.history.back().best_fitness);
  const double target = target_override ? *target_override : median(ga_finals);

  std::ofstream summary(fs::path(out_dir) / "summary.csv");
  summary << "algorithm,seed,final_fitness,final_fobj,generations_to_target,target_fitness\n";
  for (const Job& job : jobs) {
    const ConvergenceRecord& last = job.result.history.back();
    const std::optional<int> reached = generations_to_target(job.result.history, target);
    summary << (job.rlga ? "rlga" : "ga") << ',' << job.seed << ','
            << format_full(last.best_fitness) << ',' << format_full(last.best_objective) << ','
            << (reached ? std::to_string(*reached) : std::string{}) << ','
            << format_full(target) << '\n';
  }
  std::printf("bench complete: %d paired seeds, target fitness %s (see %s/summary.csv)\n", seeds,
              format_full(target).c_str(), out_dir.c_str());
  return 0;
}

int cmd_cases() {
  std::printf("%-6s %-12s %-10s %-6s %s\n", "case", "farm (m)", "pitch (m)", "wind",
              "aligned candidates");
  for (const CasePreset& preset : case_presets()) {
    std::printf("%-6s %.0fx%-7.0f %-10.0f %-6c %zu\n", std::string(preset.id).c_str(),
                preset.extent.x, preset.extent.y, preset.spacing, preset.wind_condition,
                aligned_count(preset));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind-farm layout optimization with a GA and an operator-adaptive RLGA"};
  app.require_subcommand(1);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Run one GA or RLGA optimization");
  RunOptions opt_opts;
  std::string opt_config, opt_out = "run";
  auto opt_handles = add_run_options(optimize, opt_opts);
  optimize->add_option("--config", opt_config, "key=value file; flags take precedence");
  optimize->add_option("--out", opt_out, "Output directory");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a fixed layout CSV under a case");
  std::string eval_layout, eval_case = "IA", eval_rose = "builtin", eval_out;
  evaluate->add_option("--layout-file", eval_layout, "Layout CSV (index,x,y)")->required();
  evaluate->add_option("--case", eval_case, "Case id, IA..IIIC");
  evaluate->add_option("--rose", eval_rose, "Spread rose: builtin or csv path");
  evaluate->add_option("--out", eval_out, "Optional output directory for report.csv");

  // bench
  auto* bench = app.add_subcommand("bench", "Paired-seed GA vs RLGA comparison");
  RunOptions bench_opts;
  int bench_seeds = 11;
  double bench_target = 0.0;
  std::string bench_out = "bench";
  auto bench_handles = add_run_options(bench, bench_opts);
  bench->add_option("--seeds", bench_seeds, "Number of paired seeds");
  auto* target_opt = bench->add_option("--target", bench_target,
                                       "Target fitness (default: GA median final)");
  bench->add_option("--out", bench_out, "Output directory");

  // field
  auto* field = app.add_subcommand("field", "Export the velocity field of a layout");
  std::string field_layout, field_case = "IA", field_out = "field.csv";
  double field_dir = 0.0, field_speed = 12.0;
  int field_res = 100;
  field->add_option("--layout-file", field_layout, "Layout CSV (index,x,y)")->required();
  field->add_option("--case", field_case, "Case id, IA..IIIC");
  field->add_option("--direction", field_dir, "Wind bearing, degrees (0 = north)");
  field->add_option("--speed", field_speed, "Free-stream speed, m/s");
  field->add_option("--resolution", field_res, "Cells per axis (>= 2)");
  field->add_option("--out", field_out, "Output CSV path");

  // cases
  app.add_subcommand("cases", "List the built-in case presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (optimize->parsed()) {
      if (!opt_config.empty()) merge_config_file(opt_opts, opt_config, opt_handles);
      return cmd_optimize(opt_opts, opt_out);
    }
    if (evaluate->parsed()) return cmd_evaluate(eval_layout, eval_case, eval_rose, eval_out);
    if (bench->parsed()) {
      std::optional<double> target;
      if (target_opt->count() > 0) target = bench_target;
      return cmd_bench(bench_opts, bench_seeds, target, bench_out);
    }
    if (field->parsed())
      return cmd_field(field_layout, field_case, field_dir, field_speed, field_res, field_out);
    return cmd_cases();
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
