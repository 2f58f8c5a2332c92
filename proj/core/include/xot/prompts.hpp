#pragma once

#include "xot/problem.hpp"
#include "xot/revision.hpp"
#include "xot/thoughts.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace xot {

struct ChatRequest {
  std::string system;
  std::string user;
  std::string model;
  double temperature = 0.0;
  double top_p = 0.0;
  int max_tokens = 2048;
  double timeout_seconds = 120.0;
  std::string purpose; // "solve" or "critique"
};

/// System: the task instruction; user: the rendered thought prompt (which
/// already carries the problem statement).
ChatRequest build_solve_prompt(Task task, std::string_view thought_text);

/// The critique query for one trajectory, laid out like the worked revision
/// example up to (not including) the reviewer's answer.
std::string critique_query(const ThoughtTrajectory& trajectory);

/// System: the task instruction; user: the worked revision example, a blank
/// line, then critique_query(trajectory).
ChatRequest build_critique_prompt(const ThoughtTrajectory& trajectory);

/// "[Step k] is wrong" / "[Steps k] is wrong" -> wrong_step k (first match);
/// "all steps are wrong" -> all_wrong; an affirmation of correctness -> valid;
/// anything else -> unparseable.
Critique parse_critique(std::string_view text);

struct Answer {
  std::string payload;            // text after the final answer marker
  std::vector<std::string> moves; // move tokens (Puzzle8 / Cube)
};

/// Throws ParseError when the task's answer marker is missing.
Answer parse_answer(Task task, std::string_view text);

} // namespace xot
