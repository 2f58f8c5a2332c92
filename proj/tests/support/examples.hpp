// Worked examples and small independent oracles shared by the test binaries.
#pragma once

#include "xot/cube.hpp"
#include "xot/prompt_text.hpp"
#include "xot/thoughts.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xot::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("missing file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string golden(const std::string& name) {
  return read_file(std::string(XOT_GOLDEN_DIR) + "/" + name);
}

/// Action id whose text equals `text` in `state`.
inline int action_by_text(const ProblemState& state, const std::string& text) {
  for (int id : legal_action_ids(state))
    if (action_text(state, id) == text)
      return id;
  throw std::runtime_error("no action '" + text + "'");
}

inline ThoughtTrajectory by_texts(const ProblemState& initial, const std::vector<std::string>& texts) {
  std::vector<int> ids;
  ProblemState s = initial;
  for (const auto& t : texts) {
    ids.push_back(action_by_text(s, t));
    s = apply_action(s, ids.back());
  }
  return trajectory_from_actions(initial, ids);
}

inline ProblemState game24_example() { return parse_state_text(Task::game24, "2 9 10 12"); }
inline ProblemState puzzle8_example() { return parse_state_text(Task::puzzle8, "3 1 2\n6 4 5\n7 8 0"); }

/// Initial cube of the reference prompt block.
inline ProblemState cube_example() {
  const std::string text(prompt_example_text(Task::cube));
  const auto a = text.find("[Initial Cube State]:\n") + 21;
  const auto b = text.find("[Process]");
  return parse_state_text(Task::cube, text.substr(a, b - a));
}

inline ThoughtTrajectory game24_solution() {
  return by_texts(game24_example(), {"12 * 2 = 24", "10 - 9 = 1", "1 * 24 = 24"});
}
inline ThoughtTrajectory game24_wrong() {
  return by_texts(game24_example(), {"12 * 2 = 24", "24 - 10 = 14", "14 + 9 = 23"});
}
inline ThoughtTrajectory puzzle8_solution() {
  return by_texts(puzzle8_example(), {"Left", "Left", "Up", "Up"});
}
inline ThoughtTrajectory puzzle8_wrong() {
  return by_texts(puzzle8_example(), {"Left", "Left", "Up", "Right"});
}
inline ThoughtTrajectory cube_solution() { return by_texts(cube_example(), {"R", "U'", "F'"}); }
inline ThoughtTrajectory cube_wrong() { return by_texts(cube_example(), {"R", "U'", "F2"}); }

/// Reference revision block up to the reviewer's answer.
inline std::string revision_query_part(Task task) {
  const std::string text(revision_example_text(task));
  const std::string cut = task == Task::game24 ? "The Steps are wrong." : "[Step ";
  const auto at = task == Task::game24 ? text.find(cut) : text.rfind(cut);
  return text.substr(0, at - 1);
}

/// Floating-point 24 search over all pairings, independent of the exact solver.
inline bool reaches_24(std::vector<double> v) {
  if (v.size() == 1)
    return std::abs(v[0] - 24.0) < 1e-6;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (i == j)
        continue;
      std::vector<double> rest;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (k != i && k != j)
          rest.push_back(v[k]);
      const double a = v[i], b = v[j];
      std::vector<double> outs{a + b, a - b, a * b};
      if (std::abs(b) > 1e-12)
        outs.push_back(a / b);
      for (double o : outs) {
        rest.push_back(o);
        if (reaches_24(rest))
          return true;
        rest.pop_back();
      }
    }
  return false;
}

/// Plain BFS over 8-puzzle tile arrays, from the goal.
inline std::map<std::array<std::uint8_t, 9>, int> puzzle8_bfs() {
  std::map<std::array<std::uint8_t, 9>, int> dist;
  std::array<std::uint8_t, 9> goal{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::queue<std::array<std::uint8_t, 9>> q;
  dist[goal] = 0;
  q.push(goal);
  const int dr[4] = {0, 0, -1, 1}, dc[4] = {-1, 1, 0, 0};
  while (!q.empty()) {
    auto s = q.front();
    q.pop();
    int b = 0;
    while (s[b] != 0)
      ++b;
    for (int m = 0; m < 4; ++m) {
      const int r = b / 3 + dr[m], c = b % 3 + dc[m];
      if (r < 0 || r > 2 || c < 0 || c > 2)
        continue;
      auto t = s;
      std::swap(t[b], t[r * 3 + c]);
      if (dist.emplace(t, dist[s] + 1).second)
        q.push(t);
    }
  }
  return dist;
}

} // namespace xot::testing
