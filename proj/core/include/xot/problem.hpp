#pragma once

#include "xot/cube.hpp"
#include "xot/game24.hpp"
#include "xot/puzzle8.hpp"
#include "xot/task.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xot {

using ProblemState = std::variant<Game24State, Puzzle8State, CubeState>;

Task task_of(const ProblemState& state);

/// Action ids index the task's fixed enumeration (see action_space_size).
std::vector<int> legal_action_ids(const ProblemState& state);
ProblemState apply_action(const ProblemState& state, int action_id);
bool is_goal(const ProblemState& state);

/// Game24: one number left. Puzzle8/Cube: goal reached or steps_taken == horizon.
bool is_terminal(const ProblemState& state, int steps_taken, int horizon);

struct Reward {
  double value = 0.0;
  bool terminal = false;
};

/// Raw terminal reward: Game24 +1/-1, Puzzle8/Cube -goal_distance.
/// Throws ContractError when the episode is not terminal.
Reward reward(const ProblemState& state, int steps_taken, int horizon);
/// reward / reward_scale(task), in [-1, 1].
double normalized_reward(const ProblemState& state, int steps_taken, int horizon);

/// Puzzle8/Cube exact distance; ContractError for Game24.
int goal_distance(const ProblemState& state);

struct Encoding {
  Eigen::VectorXd features;
  std::vector<std::uint8_t> mask; // one entry per action id
};

Encoding encode_state(const ProblemState& state);

/// Canonical identity of a state (Game24 uses the sorted multiset).
std::string state_key(const ProblemState& state);

/// "Left", "R'", or the Game24 equation such as "12 * 2 = 24".
std::string action_text(const ProblemState& state, int action_id);
/// Action id named by `text` in `state` (cube/8-puzzle move names only).
int parse_action(const ProblemState& state, std::string_view text);

std::string format_state_text(const ProblemState& state);
ProblemState parse_state_text(Task task, std::string_view text);

} // namespace xot
