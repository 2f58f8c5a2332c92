#pragma once

#include "xot/instances.hpp"
#include "xot/llm_client.hpp"
#include "xot/net.hpp"
#include "xot/thoughts.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xot {

/// Reads a Game of 24 CSV (either "rank,puzzle" rows, a "Rank,Puzzles,..."
/// table, or bare "a,b,c,d" rows) and splits it 1225/137 in proportion,
/// stratified by rank quartile. Unsolvable rows are dropped with a warning.
std::vector<Instance> ingest_game24(const std::filesystem::path& csv, std::uint64_t seed,
                                    std::vector<std::string>* warnings = nullptr);

/// Writes the 1362 ranked problems as "rank,puzzle" CSV.
void write_game24_csv(const std::filesystem::path& csv);

enum class EvalMode { mcts_only, xot_oracle, xot_llm };

std::string_view to_string(EvalMode mode);
/// Accepts mcts-only, xot-oracle, xot-llm; "multi" is handled by parse_setting.
EvalMode parse_eval_mode(std::string_view name);

struct RunConfig {
  Task task = Task::game24;
  EvalMode mode = EvalMode::mcts_only;
  bool multi = false;
  std::vector<std::uint64_t> seeds{1};
  int simulations = 0;          // K per action; 0 = task default
  double exploration = 0.0;    // w; 0 = task default
  int revision_rounds = 0;      // r
  int revision_simulations = 0; // L; 0 = task default
  double revision_exploration = 0.0; // w while revising; 0 = task default
  int multi_samples = 0;        // M; 0 = task default
  int max_solutions = kMaxSolutions;
  bool truncate_last_step = false;
  std::string data;             // instances JSONL
  std::string split = "test";
  std::string checkpoint;
  std::size_t limit = 0;        // first N problems only; 0 = all
  int threads = 1;
  // LLM settings; the API key is read from the variable named by llm_api_key_env.
  std::string llm_base_url;
  std::string llm_path = "/v1/chat/completions";
  std::string llm_model;
  std::string llm_api_key_env = "XOT_LLM_API_KEY";
  std::string llm_mode = "live"; // live | record | replay
  std::string transcript;

  int resolved_simulations() const;
  int resolved_revision_simulations() const;
  double resolved_exploration() const;
  double resolved_revision_exploration() const;
  int resolved_multi_samples() const;
};

/// Per-task defaults: K = 200/20/20, L = 500/50/500, w = 1/0.03/0.1,
/// revision w = 1/0.1/0.1, M = 500/50/50.
RunConfig default_run_config(Task task);

/// Sets one key. Throws ContractError for unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
std::map<std::string, std::string> to_settings(const RunConfig& config);

/// "key = value" lines; '#' starts a comment. Keys are the RunConfig field names.
RunConfig parse_run_config(std::istream& in, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

struct ProblemRecord {
  std::string id;
  std::vector<bool> solved;       // one flag per offered solution
  std::vector<std::string> moves; // offered solutions, space separated action text
  std::size_t llm_calls = 0;
  std::size_t f_calls = 0;
  int revision_rounds = 0;        // critic reviews
  std::size_t erroneous_reviews = 0;
  std::size_t repaired = 0;
  std::string error;              // per-problem failure, e.g. LLM transport

  bool any_solved() const;
};

struct Aggregates {
  std::size_t problems = 0;
  double acc = 0.0;       // % of problems with at least one correct solution
  double multi_acc = 0.0; // mean % of offered solutions that are correct
  double mean_solutions = 0.0;
  double mean_llm_calls = 0.0;
  double mean_f_calls = 0.0;
  double revision_success = 0.0; // % of erroneous reviews that ended solved
  std::size_t erroneous_reviews = 0;
  std::size_t repaired = 0;
};

Aggregates aggregate(const std::vector<ProblemRecord>& records);

struct EvalReport {
  Task task = Task::game24;
  EvalMode mode = EvalMode::mcts_only;
  bool multi = false;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;
  std::vector<ProblemRecord> records;
  Aggregates aggregates;
};

struct ProblemOutcome {
  ProblemRecord record;
  ThoughtSet thoughts;          // after revision
  std::string prompt;           // rendered thought prompt
  std::vector<std::string> llm_answers;
};

/// Runs the configured pipeline on one problem. `llm` is required for xot-llm.
/// Every solved flag comes from replaying actions in the environment.
ProblemOutcome solve_problem(const Instance& instance, const RunConfig& config,
                             const NetParams& params, std::uint64_t seed, LlmClient* llm = nullptr);

/// Loads data and checkpoint from the config and solves every selected problem.
EvalReport evaluate(const RunConfig& config, std::uint64_t seed, LlmClient* llm = nullptr);
EvalReport evaluate(const RunConfig& config, std::span<const Instance> problems,
                    const NetParams& params, std::uint64_t seed, LlmClient* llm = nullptr);

/// Aligned table; headers only when there are no problems.
std::string report_text(const EvalReport& report);
/// Reads the aggregate row of report_text back (values carry two decimals).
Aggregates aggregates_from_text(std::string_view text);
std::string report_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json);

} // namespace xot
