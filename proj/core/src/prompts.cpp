#include "xot/prompts.hpp"

#include "xot/errors.hpp"
#include "xot/prompt_text.hpp"
#include "xot/thoughts.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace xot {

namespace {

std::string_view nth_line(std::string_view text, int n) {
  std::size_t start = 0;
  for (int i = 0; i < n; ++i) {
    start = text.find('\n', start);
    if (start == std::string_view::npos)
      return {};
    ++start;
  }
  return text.substr(start, text.find('\n', start) - start);
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr std::string_view kAllWrongRequest =
    "Now please help me identify the exact step number that is wrong. You must provide one wrong "
    "step. If you can not provide an exact step number, please consider that it could be \"all "
    "steps are wrong\".";

constexpr std::string_view kValidOption = "If every step is correct, reply \"The process is correct.\"";

} // namespace

ChatRequest build_solve_prompt(Task task, std::string_view thought_text) {
  ChatRequest r;
  r.system = std::string(instruction_text(task));
  r.user = std::string(thought_text);
  r.purpose = "solve";
  return r;
}

std::string critique_query(const ThoughtTrajectory& t) {
  const auto example = revision_example_text(t.task);
  const auto process = render_critique_process(t);
  std::string out;
  if (t.task == Task::game24) {
    for (int i = 0; i < 3; ++i)
      out += std::string(nth_line(example, i)) + "\n";
    return out + process;
  }
  const auto last = t.final_state();
  if (is_goal(last)) {
    out += std::string(nth_line(example, 1)) + "\n" + process + "\n" + std::string(kValidOption);
    return out;
  }
  for (int i = 0; i < 3; ++i)
    out += std::string(nth_line(example, i)) + "\n";
  out += process + "\n";
  if (t.task == Task::puzzle8) {
    const auto& tiles = std::get<Puzzle8State>(last).tiles;
    std::string wrong;
    for (std::size_t i = 0; i < tiles.size(); ++i)
      if (tiles[i] != i)
        wrong += (wrong.empty() ? "" : ", ") + std::to_string(tiles[i]);
    out += "The given [Process] is not correct because number " + wrong +
           " are not their goal positions in the end. The puzzle has failed on reaching its goal state.\n";
  } else {
    const auto& st = std::get<CubeState>(last).stickers;
    std::string faces;
    for (std::size_t f = 0; f < 6; ++f) {
      std::vector<int> colors(st.begin() + 4 * f, st.begin() + 4 * f + 4);
      std::sort(colors.begin(), colors.end());
      const auto n = std::unique(colors.begin(), colors.end()) - colors.begin();
      if (n > 1)
        faces += " The " + std::string(kCubeFaceLabels[f]) + " face still has " + std::to_string(n) +
                 " differnet colors.";
    }
    out += "After finishing all the moves:" + faces + "\n";
    out += "The given [Process] is not correct because not every face has the same numbers in the end. "
           "The cube has failed on restoring to its original state.\n";
  }
  return out + std::string(kAllWrongRequest);
}

ChatRequest build_critique_prompt(const ThoughtTrajectory& t) {
  ChatRequest r;
  r.system = std::string(instruction_text(t.task));
  r.user = std::string(revision_example_text(t.task)) + "\n\n" + critique_query(t);
  r.purpose = "critique";
  return r;
}

Critique parse_critique(std::string_view text) {
  static const std::regex wrong(R"(\[\s*Steps?\s+(\d+)\s*\]\s*is\s+wrong)", std::regex::icase);
  const std::string s(text);
  std::smatch m;
  if (std::regex_search(s, m, wrong))
    return {Verdict::wrong_step, std::stoi(m[1].str()), s};
  const auto l = lower(text);
  if (l.find("all steps are wrong") != std::string::npos)
    return {Verdict::all_wrong, 0, s};
  static const std::regex affirm(R"(\b(is|are)\s+(all\s+)?(correct|valid|right)\b|\bno\s+(wrong\s+step|errors?)\b)");
  const bool negated = l.find("not correct") != std::string::npos ||
                       l.find("incorrect") != std::string::npos ||
                       l.find("not valid") != std::string::npos;
  if (!negated && std::regex_search(l, affirm))
    return {Verdict::valid, 0, s};
  return {Verdict::unparseable, 0, s};
}

Answer parse_answer(Task task, std::string_view text) {
  Answer a;
  a.payload = answer_payload(task, text);
  if (task != Task::game24) {
    std::string token;
    auto flush = [&] {
      std::string t;
      for (char c : token)
        if (c != '[' && c != ']' && c != '"' && c != '`')
          t += c;
      while (!t.empty() && (t.back() == '.'))
        t.pop_back();
      if (task == Task::puzzle8 && t.size() >= 2 && t.front() == '\'' && t.back() == '\'')
        t = t.substr(1, t.size() - 2);
      if (!t.empty())
        a.moves.push_back(t);
      token.clear();
    };
    for (char c : a.payload) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
        flush();
      else
        token += c;
    }
    flush();
  }
  return a;
}

} // namespace xot
