#pragma once

#include "xot/mcts.hpp"
#include "xot/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace xot {

struct ThoughtTrajectory {
  Task task = Task::game24;
  ProblemState initial;
  std::vector<Step> steps;
  bool complete = true; // false: the final step is left out when rendering

  const ProblemState& final_state() const;
  std::vector<int> actions() const;
};

/// Goal reached within the task horizon.
bool is_solved(const ThoughtTrajectory& trajectory);

/// Replays `actions` from `initial`; an illegal action throws ValidationError
/// naming its 1-based step.
ThoughtTrajectory trajectory_from_actions(const ProblemState& initial,
                                          const std::vector<int>& actions);

/// Throws ContractError when any step's after-state differs from apply(before, action)
/// or the chain is broken.
void check_chain(const ThoughtTrajectory& trajectory);

struct ThoughtSet {
  std::vector<ThoughtTrajectory> trajectories; // most sampled first
  std::vector<int> counts;                     // samples per kept trajectory
  int samples = 0;
  std::size_t f_calls = 0;
};

inline constexpr int kMaxSolutions = 3;

/// The moves actually taken by an argmax act_sequence run.
ThoughtTrajectory extract_single(const ActResult& run, const ProblemState& initial,
                                 int horizon = 0);
/// Follows the most-visited edge from the tree root until a node without visits.
ThoughtTrajectory extract_single(const SearchTree& tree);

/// Samples M rollouts with actions drawn in proportion to N(s, a). Every state
/// met for the first time gets config.simulations fresh simulations in a shared
/// tree. Unique action sequences are ranked by count; the top `max_solutions` are kept.
ThoughtSet extract_multi(const ProblemState& problem, Evaluator& eval, const SearchConfig& config,
                         int samples, int max_solutions = kMaxSolutions);

/// Reference-format thought prompt. A set renders each trajectory in turn,
/// headed "Solution k:" when there is more than one.
std::string render_prompt(const ThoughtTrajectory& trajectory);
std::string render_prompt(const ThoughtSet& set);

/// Process text in the layout of the critique exemplars (without verdict).
std::string render_critique_process(const ThoughtTrajectory& trajectory);

/// Payload after the task's final answer marker ("Answer:", "[Moves]:",
/// "[Restoration Moves]:"); the last marker wins. ParseError when absent.
std::string answer_payload(Task task, std::string_view text);
/// Payloads of every answer marker in order; empty when there is none.
std::vector<std::string> answer_payloads(Task task, std::string_view text);

/// Parses an answer (full response or bare payload) and replays it.
ThoughtTrajectory parse_trajectory(std::string_view text, Task task, const ProblemState& initial);

/// Graphviz DOT of the merged trajectories (identical states share a node).
std::string export_dot(const ThoughtSet& set);

} // namespace xot
