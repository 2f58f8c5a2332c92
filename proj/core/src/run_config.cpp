#include "xot/errors.hpp"
#include "xot/harness.hpp"
#include "xot/revision.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace xot {

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  throw ContractError(key + ": expected true/false, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  if (!(in >> out) || !in.eof())
    throw ContractError(key + ": bad number '" + v + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

} // namespace

int RunConfig::resolved_simulations() const {
  if (simulations > 0)
    return simulations;
  return task == Task::game24 ? 200 : 20;
}

int RunConfig::resolved_revision_simulations() const {
  return revision_simulations > 0 ? revision_simulations : default_revision_simulations(task);
}

// Value differences between siblings are ~1/31 and ~1/11 on the puzzles,
// so the prior term needs a much smaller weight there.
double RunConfig::resolved_exploration() const {
  if (exploration > 0.0)
    return exploration;
  return task == Task::game24 ? 1.0 : task == Task::puzzle8 ? 0.03 : 0.1;
}

// Revision searches get more simulations than the first pass, so the puzzle
// uses a broader weight there.
double RunConfig::resolved_revision_exploration() const {
  if (revision_exploration > 0.0)
    return revision_exploration;
  return task == Task::puzzle8 ? 0.1 : resolved_exploration();
}

int RunConfig::resolved_multi_samples() const {
  if (multi_samples > 0)
    return multi_samples;
  return task == Task::game24 ? 500 : 50;
}

RunConfig default_run_config(Task task) {
  RunConfig c;
  c.task = task;
  // K, L, w and M stay 0 so they follow a later change of task.
  return c;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "task") {
    c.task = parse_task(value);
  } else if (key == "mode") {
    if (value == "multi") {
      c.mode = EvalMode::mcts_only;
      c.multi = true;
    } else {
      c.mode = parse_eval_mode(value);
    }
  } else if (key == "multi") {
    c.multi = parse_bool(key, value);
  } else if (key == "seeds" || key == "seed") {
    c.seeds.clear();
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ','))
      if (!trim(item).empty())
        c.seeds.push_back(parse_number<std::uint64_t>(key, trim(item)));
    if (c.seeds.empty())
      throw ContractError("seeds: at least one seed is needed");
  } else if (key == "simulations") {
    c.simulations = parse_number<int>(key, value);
  } else if (key == "exploration") {
    c.exploration = parse_number<double>(key, value);
  } else if (key == "revision_exploration") {
    c.revision_exploration = parse_number<double>(key, value);
  } else if (key == "revision_rounds") {
    c.revision_rounds = parse_number<int>(key, value);
  } else if (key == "revision_simulations") {
    c.revision_simulations = parse_number<int>(key, value);
  } else if (key == "multi_samples") {
    c.multi_samples = parse_number<int>(key, value);
  } else if (key == "max_solutions") {
    c.max_solutions = parse_number<int>(key, value);
    if (c.max_solutions < 1 || c.max_solutions > kMaxSolutions)
      throw ContractError("max_solutions must be in 1.." + std::to_string(kMaxSolutions));
  } else if (key == "truncate_last_step") {
    c.truncate_last_step = parse_bool(key, value);
  } else if (key == "data") {
    c.data = value;
  } else if (key == "split") {
    c.split = value;
  } else if (key == "checkpoint") {
    c.checkpoint = value;
  } else if (key == "limit") {
    c.limit = parse_number<std::size_t>(key, value);
  } else if (key == "threads") {
    c.threads = parse_number<int>(key, value);
  } else if (key == "llm_base_url") {
    c.llm_base_url = value;
  } else if (key == "llm_path") {
    c.llm_path = value;
  } else if (key == "llm_model") {
    c.llm_model = value;
  } else if (key == "llm_api_key_env") {
    c.llm_api_key_env = value;
  } else if (key == "llm_mode") {
    if (value != "live" && value != "record" && value != "replay")
      throw ContractError("llm_mode must be live, record or replay");
    c.llm_mode = value;
  } else if (key == "transcript") {
    c.transcript = value;
  } else if (key == "llm_api_key") {
    throw ContractError("API keys are read from the environment only (see llm_api_key_env)");
  } else {
    throw ContractError("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> to_settings(const RunConfig& c) {
  std::string seeds;
  for (auto s : c.seeds)
    seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  return {{"task", std::string(to_string(c.task))},
          {"mode", std::string(to_string(c.mode))},
          {"multi", c.multi ? "true" : "false"},
          {"seeds", seeds},
          {"simulations", std::to_string(c.resolved_simulations())},
          {"exploration", fmt_double(c.resolved_exploration())},
          {"revision_exploration", fmt_double(c.resolved_revision_exploration())},
          {"revision_rounds", std::to_string(c.revision_rounds)},
          {"revision_simulations", std::to_string(c.resolved_revision_simulations())},
          {"multi_samples", std::to_string(c.resolved_multi_samples())},
          {"max_solutions", std::to_string(c.max_solutions)},
          {"truncate_last_step", c.truncate_last_step ? "true" : "false"},
          {"data", c.data},
          {"split", c.split},
          {"checkpoint", c.checkpoint},
          {"limit", std::to_string(c.limit)},
          {"threads", std::to_string(c.threads)},
          {"llm_base_url", c.llm_base_url},
          {"llm_path", c.llm_path},
          {"llm_model", c.llm_model},
          {"llm_api_key_env", c.llm_api_key_env},
          {"llm_mode", c.llm_mode},
          {"transcript", c.transcript}};
}

RunConfig parse_run_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, "expected 'key = value' on line " + std::to_string(lineno));
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read config " + path.string());
  return parse_run_config(in, std::move(base));
}

} // namespace xot
