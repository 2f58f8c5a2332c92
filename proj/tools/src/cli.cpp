#include "cli.hpp"

#include "xot/cube.hpp"
#include "xot/errors.hpp"
#include "xot/harness.hpp"
#include "xot/instances.hpp"
#include "xot/llm_client.hpp"
#include "xot/mcts.hpp"
#include "xot/net.hpp"
#include "xot/problem.hpp"
#include "xot/puzzle8.hpp"
#include "xot/trainer.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace xot {

namespace {

std::string default_model(Task task) {
  return std::string(XOT_DEFAULT_MODEL_DIR) + "/" + std::string(to_string(task)) + ".json";
}

std::string default_data(Task task) {
  return std::string(XOT_DEFAULT_DATA_DIR) + "/" + std::string(to_string(task)) + ".jsonl";
}

/// Accepts the reference text layout or a flat list of numbers
/// (4 for Game24, 9 tiles row-major for Puzzle8, 24 stickers for Cube).
ProblemState parse_instance(Task task, const std::string& text) {
  std::istringstream in(text);
  std::vector<int> v;
  int x;
  while (in >> x)
    v.push_back(x);
  const bool flat = in.eof();
  if (flat && task == Task::puzzle8 && v.size() == 9) {
    Puzzle8State s;
    std::copy(v.begin(), v.end(), s.tiles.begin());
    validate(s);
    return s;
  }
  if (flat && task == Task::cube && v.size() == 24) {
    CubeState s;
    std::copy(v.begin(), v.end(), s.stickers.begin());
    validate(s);
    return s;
  }
  return parse_state_text(task, text);
}

/// Flag values that were given on the command line, as config settings.
struct Overrides {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;

  void add_option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, values[key], help);
  }
  void add_flag(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_flag(flag, flags[key], help);
  }
  void apply(CLI::App* app, RunConfig& config) const {
    for (const auto& [key, value] : values) {
      const auto* opt = app->get_option_no_throw("--" + option_name(key));
      if (opt && opt->count() > 0)
        apply_setting(config, key, value);
    }
    for (const auto& [key, set] : flags)
      if (set)
        apply_setting(config, key, "true");
  }
  static std::string option_name(const std::string& key) {
    static const std::map<std::string, std::string> names{{"revision_rounds", "r"},
                                                          {"revision_simulations", "L"},
                                                          {"multi_samples", "M"}};
    if (auto it = names.find(key); it != names.end())
      return it->second;
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    return name;
  }
};

void add_run_options(CLI::App* app, Overrides& o) {
  o.add_option(app, "--task", "task", "game24 | puzzle8 | cube");
  o.add_option(app, "--mode", "mode", "mcts-only | xot-oracle | xot-llm | multi");
  o.add_option(app, "--seeds", "seeds", "comma-separated seeds");
  o.add_option(app, "--simulations", "simulations", "simulations per action (K)");
  o.add_option(app, "--exploration", "exploration", "PUCT exploration weight w");
  o.add_option(app, "--r", "revision_rounds", "revision rounds");
  o.add_option(app, "--L", "revision_simulations", "simulations per action when revising");
  o.add_option(app, "--revision-exploration", "revision_exploration", "PUCT weight w when revising");
  o.add_option(app, "--M", "multi_samples", "rollouts sampled for multi-solution mode");
  o.add_option(app, "--max-solutions", "max_solutions", "cap on offered solutions (<= 3)");
  o.add_option(app, "--data", "data", "instances JSONL");
  o.add_option(app, "--split", "split", "train | test | all");
  o.add_option(app, "--checkpoint", "checkpoint", "network checkpoint JSON");
  o.add_option(app, "--limit", "limit", "only the first N problems");
  o.add_option(app, "--threads", "threads", "worker threads");
  o.add_option(app, "--llm-base-url", "llm_base_url", "chat endpoint base URL");
  o.add_option(app, "--llm-path", "llm_path", "chat endpoint path");
  o.add_option(app, "--llm-model", "llm_model", "model name sent to the endpoint");
  o.add_option(app, "--llm-api-key-env", "llm_api_key_env", "environment variable holding the API key");
  o.add_option(app, "--llm-mode", "llm_mode", "live | record | replay");
  o.add_option(app, "--transcript", "transcript", "LLM transcript JSONL");
  o.add_flag(app, "--multi", "multi", "offer up to three solutions");
  o.add_flag(app, "--truncate-last-step", "truncate_last_step", "leave the final step out of prompts");
}

RunConfig resolve_config(CLI::App* app, const Overrides& o, const std::string& config_path) {
  RunConfig c;
  if (!config_path.empty())
    c = load_run_config(config_path);
  // The task decides the defaults, so it is applied first.
  if (const auto* opt = app->get_option_no_throw("--task"); opt && opt->count() > 0)
    apply_setting(c, "task", o.values.at("task"));
  o.apply(app, c);
  if (c.checkpoint.empty())
    c.checkpoint = default_model(c.task);
  if (c.data.empty())
    c.data = default_data(c.task);
  return c;
}

std::optional<LlmClient> make_client(const RunConfig& c) {
  if (c.mode != EvalMode::xot_llm)
    return std::nullopt;
  EndpointConfig e = EndpointConfig::from_environment();
  if (!c.llm_base_url.empty())
    e.base_url = c.llm_base_url;
  if (!c.llm_model.empty())
    e.model = c.llm_model;
  if (c.llm_path != RunConfig{}.llm_path)
    e.path = c.llm_path;
  e.api_key_env = c.llm_api_key_env;
  if (c.llm_mode == "replay") {
    if (c.transcript.empty())
      throw ContractError("replay needs a transcript (transcript = path)");
    return std::optional<LlmClient>(std::in_place, e, LlmMode::replay, LlmTranscript::load(c.transcript));
  }
  return std::optional<LlmClient>(std::in_place, e, c.llm_mode == "record" ? LlmMode::record : LlmMode::live);
}

void save_transcript(const RunConfig& c, const std::optional<LlmClient>& llm) {
  if (llm && llm->mode() != LlmMode::replay && !c.transcript.empty())
    llm->transcript().save(c.transcript);
}

int run_eval(const RunConfig& c, const std::string& json_out, std::ostream& out) {
  auto llm = make_client(c);
  std::vector<EvalReport> reports;
  std::ofstream json_file;
  if (!json_out.empty()) {
    json_file.open(json_out);
    if (!json_file)
      throw Error("cannot write " + json_out);
  }
  for (auto seed : c.seeds) {
    reports.push_back(evaluate(c, seed, llm ? &*llm : nullptr));
    out << report_text(reports.back());
    if (json_file)
      json_file << report_json(reports.back()) << '\n';
  }
  if (reports.size() > 1) {
    std::vector<double> acc;
    for (const auto& r : reports)
      acc.push_back(r.aggregates.acc);
    std::sort(acc.begin(), acc.end());
    out << "median Acc(%) over " << acc.size() << " seeds: " << acc[acc.size() / 2] << '\n';
  }
  save_transcript(c, llm);
  return 0;
}

} // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"XoT: search-guided thought generation for Game of 24, 8-Puzzle and Pocket Cube"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "generate problem instances");
  std::string gen_task, gen_out;
  std::size_t gen_count = 0;
  std::uint64_t gen_seed = 1;
  gen->add_option("--task", gen_task, "puzzle8 | cube | game24 (writes the ranked CSV)")->required();
  gen->add_option("--count", gen_count, "instances (default 419 / 1183)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path")->required();

  // ingest-24
  auto* ingest = app.add_subcommand("ingest-24", "split a Game of 24 CSV into train/test instances");
  std::string ingest_csv, ingest_out;
  std::uint64_t ingest_seed = 1;
  ingest->add_option("--csv", ingest_csv, "input CSV")->required();
  ingest->add_option("--seed", ingest_seed, "split seed");
  ingest->add_option("--out", ingest_out, "output JSONL")->required();

  // train
  auto* train = app.add_subcommand("train", "self-play training of the policy/value network");
  std::string train_task, train_data, train_out, train_log;
  std::optional<int> t_iters, t_eps, t_epochs, t_batch, t_sims;
  std::optional<double> t_lr, t_mom, t_w, t_gamma, t_v0;
  std::uint64_t train_seed = 1;
  bool t_step_rewards = false;
  train->add_option("--task", train_task, "game24 | puzzle8 | cube")->required();
  train->add_option("--data", train_data, "instances JSONL (train split is used)");
  train->add_option("--out", train_out, "checkpoint path");
  train->add_option("--log", train_log, "JSON-lines training log");
  train->add_option("--iterations", t_iters, "training iterations");
  train->add_option("--episodes", t_eps, "self-play episodes per iteration");
  train->add_option("--epochs", t_epochs, "epochs per iteration");
  train->add_option("--batch", t_batch, "minibatch size");
  train->add_option("--lr", t_lr, "learning rate");
  train->add_option("--momentum", t_mom, "SGD momentum");
  train->add_option("--simulations", t_sims, "simulations per move");
  train->add_option("--exploration", t_w, "PUCT exploration weight");
  train->add_option("--temperature", t_gamma, "visit-count temperature for self-play moves");
  train->add_option("--initial-value", t_v0, "starting value-head output of a fresh network");
  train->add_option("--seed", train_seed, "seed");
  train->add_flag("--step-rewards", t_step_rewards, "add per-step rewards to value targets");

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance and print the thought prompt");
  Overrides solve_o;
  std::string solve_instance, solve_config, solve_trace;
  std::uint64_t solve_seed = 1;
  solve->add_option("--instance", solve_instance, "problem, e.g. \"2 9 10 12\"")->required();
  solve->add_option("--config", solve_config, "run configuration file");
  solve->add_option("--seed", solve_seed, "search seed");
  solve->add_option("--trace", solve_trace, "write per-simulation JSON lines here");
  add_run_options(solve, solve_o);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on a dataset split");
  Overrides eval_o;
  std::string eval_config, eval_json;
  eval->add_option("--config", eval_config, "run configuration file");
  eval->add_option("--json", eval_json, "write JSON-lines reports here");
  add_run_options(eval, eval_o);

  // export-graph
  auto* graph = app.add_subcommand("export-graph", "write the extracted thoughts as Graphviz DOT");
  Overrides graph_o;
  std::string graph_instance, graph_out, graph_config;
  std::uint64_t graph_seed = 1;
  graph->add_option("--instance", graph_instance, "problem")->required();
  graph->add_option("--out", graph_out, "DOT output path")->required();
  graph->add_option("--config", graph_config, "run configuration file");
  graph->add_option("--seed", graph_seed, "search seed");
  add_run_options(graph, graph_o);

  // replay
  auto* replay = app.add_subcommand("replay", "re-run an xot-llm evaluation from its transcript");
  std::string replay_transcript, replay_config, replay_json;
  Overrides replay_o;
  replay->add_option("--config", replay_config, "run configuration of the recorded run");
  replay->add_option("--json", replay_json, "write JSON-lines reports here");
  add_run_options(replay, replay_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    if (gen->parsed()) {
      const auto task = parse_task(gen_task);
      if (task == Task::game24) {
        write_game24_csv(gen_out);
        out << "wrote ranked Game of 24 problems to " << gen_out << '\n';
        return 0;
      }
      const std::size_t count = gen_count ? gen_count : (task == Task::puzzle8 ? 419 : 1183);
      const auto instances = generate_instances(task, count, gen_seed);
      write_instances(gen_out, instances);
      out << "wrote " << instances.size() << " " << to_string(task) << " instances to " << gen_out << '\n';
      return 0;
    }
    if (ingest->parsed()) {
      std::vector<std::string> warnings;
      const auto instances = ingest_game24(ingest_csv, ingest_seed, &warnings);
      for (const auto& w : warnings)
        err << "warning: " << w << '\n';
      write_instances(ingest_out, instances);
      const auto test = std::count_if(instances.begin(), instances.end(),
                                      [](const Instance& i) { return i.split == "test"; });
      out << "wrote " << instances.size() << " instances (" << instances.size() - test << " train, "
          << test << " test) to " << ingest_out << '\n';
      return 0;
    }
    if (train->parsed()) {
      const auto task = parse_task(train_task);
      auto plan = default_plan(task);
      if (t_iters) plan.iterations = *t_iters;
      if (t_eps) plan.episodes_per_iteration = *t_eps;
      if (t_epochs) plan.epochs = *t_epochs;
      if (t_batch) plan.batch_size = *t_batch;
      if (t_lr) plan.learning_rate = *t_lr;
      if (t_mom) plan.momentum = *t_mom;
      if (t_sims) plan.search.simulations = *t_sims;
      if (t_w) plan.search.exploration = *t_w;
      if (t_gamma) plan.search.temperature = *t_gamma;
      if (t_v0) plan.initial_value = *t_v0;
      plan.seed = train_seed;
      plan.step_rewards = t_step_rewards;
      const auto data = train_data.empty() ? default_data(task) : train_data;
      const auto all = read_instances(data);
      const auto problems = select_split(all, "train");
      std::ofstream log_file;
      if (!train_log.empty())
        log_file.open(train_log);
      const auto result = run_training(task, problems, plan, log_file.is_open() ? &log_file : &out);
      const auto path = train_out.empty() ? default_model(task) : train_out;
      save_checkpoint(result.params, path);
      out << "saved " << path << '\n';
      return 0;
    }
    if (solve->parsed()) {
      auto c = resolve_config(solve, solve_o, solve_config);
      Instance inst;
      inst.task = c.task;
      inst.id = "cli";
      inst.state = parse_instance(c.task, solve_instance);
      const auto params = load_checkpoint(c.checkpoint, c.task);
      auto llm = make_client(c);
      std::ofstream trace;
      if (!solve_trace.empty()) {
        // A traced run repeats the main search with the trace attached.
        trace.open(solve_trace);
        NetEvaluator ev(params);
        SearchConfig s;
        s.simulations = c.resolved_simulations();
        s.exploration = c.resolved_exploration();
        s.seed = solve_seed * 1000003ULL;
        s.trace = &trace;
        act_sequence(inst.state, ev, s, MoveSelect::argmax);
      }
      const auto outcome = solve_problem(inst, c, params, solve_seed * 1000003ULL, llm ? &*llm : nullptr);
      out << outcome.prompt << "\n\n";
      for (std::size_t k = 0; k < outcome.record.solved.size(); ++k)
        out << "solution " << k + 1 << ": " << outcome.record.moves[k] << " -> "
            << (outcome.record.solved[k] ? "solved" : "not solved") << '\n';
      out << "f_theta invoked: " << outcome.record.f_calls << "  LLM invoked: " << outcome.record.llm_calls
          << '\n';
      if (!outcome.record.error.empty())
        out << "error: " << outcome.record.error << '\n';
      save_transcript(c, llm);
      return outcome.record.any_solved() ? 0 : 3;
    }
    if (eval->parsed()) {
      const auto c = resolve_config(eval, eval_o, eval_config);
      return run_eval(c, eval_json, out);
    }
    if (graph->parsed()) {
      auto c = resolve_config(graph, graph_o, graph_config);
      Instance inst;
      inst.task = c.task;
      inst.id = "cli";
      inst.state = parse_instance(c.task, graph_instance);
      const auto params = load_checkpoint(c.checkpoint, c.task);
      if (c.mode == EvalMode::xot_llm)
        c.mode = EvalMode::mcts_only;
      const auto outcome = solve_problem(inst, c, params, graph_seed * 1000003ULL);
      std::ofstream dot(graph_out);
      if (!dot)
        throw Error("cannot write " + graph_out);
      dot << export_dot(outcome.thoughts);
      out << "wrote " << graph_out << '\n';
      return 0;
    }
    if (replay->parsed()) {
      auto c = resolve_config(replay, replay_o, replay_config);
      c.mode = EvalMode::xot_llm;
      c.llm_mode = "replay";
      if (c.transcript.empty())
        throw ContractError("--transcript is required");
      return run_eval(c, replay_json, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

} // namespace xot
