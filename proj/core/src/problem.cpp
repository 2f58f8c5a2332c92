#include "xot/problem.hpp"

#include "xot/errors.hpp"

#include <algorithm>

namespace xot {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Task task_of(const ProblemState& state) {
  return static_cast<Task>(state.index());
}

std::vector<int> legal_action_ids(const ProblemState& state) {
  std::vector<int> ids;
  std::visit(overloaded{[&](const Game24State& s) {
                          for (auto a : legal_actions(s))
                            ids.push_back(a.index());
                        },
                        [&](const Puzzle8State& s) {
                          for (auto m : legal_actions(s))
                            ids.push_back(static_cast<int>(m));
                        },
                        [&](const CubeState& s) {
                          for (auto m : legal_actions(s))
                            ids.push_back(static_cast<int>(m));
                        }},
             state);
  std::sort(ids.begin(), ids.end());
  return ids;
}

ProblemState apply_action(const ProblemState& state, int action_id) {
  const int n = action_space_size(task_of(state));
  if (action_id < 0 || action_id >= n)
    throw IllegalMoveError("action id " + std::to_string(action_id) + " out of range");
  return std::visit(overloaded{[&](const Game24State& s) -> ProblemState {
                                 return apply(s, Game24Action::from_index(action_id));
                               },
                               [&](const Puzzle8State& s) -> ProblemState {
                                 return apply(s, static_cast<Move8>(action_id));
                               },
                               [&](const CubeState& s) -> ProblemState {
                                 return apply(s, static_cast<CubeMove>(action_id));
                               }},
                    state);
}

bool is_goal(const ProblemState& state) {
  return std::visit([](const auto& s) { return is_goal(s); }, state);
}

bool is_terminal(const ProblemState& state, int steps_taken, int horizon) {
  if (const auto* g = std::get_if<Game24State>(&state))
    return g->size() <= 1;
  return is_goal(state) || steps_taken >= horizon;
}

Reward reward(const ProblemState& state, int steps_taken, int horizon) {
  if (!is_terminal(state, steps_taken, horizon))
    throw ContractError("reward requested for a non-terminal state");
  if (const auto* g = std::get_if<Game24State>(&state))
    return {is_goal(*g) ? 1.0 : -1.0, true};
  return {-static_cast<double>(goal_distance(state)), true};
}

double normalized_reward(const ProblemState& state, int steps_taken, int horizon) {
  return reward(state, steps_taken, horizon).value / reward_scale(task_of(state));
}

int goal_distance(const ProblemState& state) {
  return std::visit(overloaded{[](const Game24State&) -> int {
                                 throw ContractError("Game24 has no goal distance");
                               },
                               [](const Puzzle8State& s) { return goal_distance(s); },
                               [](const CubeState& s) { return goal_distance(s); }},
                    state);
}

Encoding encode_state(const ProblemState& state) {
  const Task task = task_of(state);
  Encoding enc;
  enc.features = Eigen::VectorXd::Zero(feature_width(task));
  enc.mask.assign(static_cast<std::size_t>(action_space_size(task)), 0);
  std::visit(overloaded{[&](const Game24State& s) {
                          const auto sorted = s.sorted_numbers();
                          for (std::size_t i = 0; i < sorted.size() && i < 4; ++i) {
                            const auto& r = sorted[i];
                            enc.features[static_cast<Eigen::Index>(2 * i)] =
                                static_cast<double>(r.numerator()) /
                                static_cast<double>(r.denominator()) / 24.0;
                            enc.features[static_cast<Eigen::Index>(2 * i + 1)] = 1.0;
                          }
                          enc.features[static_cast<Eigen::Index>(8 + sorted.size() - 1)] = 1.0;
                        },
                        [&](const Puzzle8State& s) {
                          for (std::size_t cell = 0; cell < 9; ++cell)
                            enc.features[static_cast<Eigen::Index>(cell * 9 + s.tiles[cell])] = 1.0;
                        },
                        [&](const CubeState& s) {
                          for (std::size_t i = 0; i < 24; ++i)
                            enc.features[static_cast<Eigen::Index>(i * 6 + s.stickers[i])] = 1.0;
                        }},
             state);
  for (int id : legal_action_ids(state))
    enc.mask[static_cast<std::size_t>(id)] = 1;
  return enc;
}

std::string state_key(const ProblemState& state) {
  return std::visit(overloaded{[](const Game24State& s) {
                                 std::string key = "g:";
                                 for (const auto& r : s.sorted_numbers())
                                   key += format_rational(r) + ",";
                                 return key;
                               },
                               [](const Puzzle8State& s) {
                                 return "p:" + std::string(s.tiles.begin(), s.tiles.end());
                               },
                               [](const CubeState& s) {
                                 return "c:" + std::string(s.stickers.begin(), s.stickers.end());
                               }},
                    state);
}

std::string action_text(const ProblemState& state, int action_id) {
  return std::visit(overloaded{[&](const Game24State& s) {
                                 return equation_text(s, Game24Action::from_index(action_id));
                               },
                               [&](const Puzzle8State&) {
                                 return std::string(move_name(static_cast<Move8>(action_id)));
                               },
                               [&](const CubeState&) {
                                 return std::string(move_name(static_cast<CubeMove>(action_id)));
                               }},
                    state);
}

int parse_action(const ProblemState& state, std::string_view text) {
  switch (task_of(state)) {
  case Task::puzzle8:
    return static_cast<int>(parse_move8(text));
  case Task::cube:
    return static_cast<int>(parse_cube_move(text));
  case Task::game24:
    break;
  }
  throw ContractError("Game24 actions are parsed from expressions");
}

std::string format_state_text(const ProblemState& state) {
  return std::visit([](const auto& s) { return format_state_text(s); }, state);
}

ProblemState parse_state_text(Task task, std::string_view text) {
  switch (task) {
  case Task::game24:
    return parse_game24_text(text);
  case Task::puzzle8:
    return parse_puzzle8_text(text);
  case Task::cube:
    return parse_cube_text(text);
  }
  throw ContractError("unknown task");
}

} // namespace xot
