#include "xot/thoughts.hpp"

#include "xot/errors.hpp"
#include "xot/prompt_text.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace xot {

namespace {

std::string_view first_line(std::string_view text) { return text.substr(0, text.find('\n')); }

std::string valid_moves_text(const ProblemState& state) {
  std::string out = "[";
  bool first = true;
  for (int id : legal_action_ids(state)) {
    if (!first)
      out += ", ";
    out += action_text(state, id);
    first = false;
  }
  return out + "]";
}

std::string game24_step_line(const Step& step) {
  const auto& before = std::get<Game24State>(step.before);
  const auto& after = std::get<Game24State>(step.after);
  return equation_text(before, Game24Action::from_index(step.action)) + " " +
         format_state_text(after) + " Expression: " + expressions_text(after);
}

std::string game24_answer(const ProblemState& final_state) {
  const auto& g = std::get<Game24State>(final_state);
  std::string answer;
  for (const auto& t : g.terms) {
    if (!answer.empty())
      answer += ", ";
    answer += t.answer.empty() ? format_rational(t.value) : t.answer;
  }
  return "Answer: " + answer + " = " + numbers_text(g);
}

std::string move_list(const ThoughtTrajectory& t, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (i)
      out += sep;
    out += action_text(t.steps[i].before, t.steps[i].action);
  }
  return out;
}

std::string render_one(const ThoughtTrajectory& t) {
  const std::size_t shown = t.complete || t.steps.empty() ? t.steps.size() : t.steps.size() - 1;
  std::string out;
  switch (t.task) {
  case Task::game24:
    out += "Input: " + numbers_text(std::get<Game24State>(t.initial)) + "\nSteps:";
    for (std::size_t i = 0; i < shown; ++i)
      out += "\n" + game24_step_line(t.steps[i]);
    if (t.complete)
      out += "\n" + game24_answer(t.final_state());
    break;
  case Task::puzzle8:
    out += std::string(first_line(prompt_example_text(Task::puzzle8)));
    out += "\n[Initial State]:\n" + format_state_text(t.initial);
    out += "\n[Process]:\n" + format_state_text(t.initial);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& s = t.steps[i];
      out += "\nStep " + std::to_string(i + 1) +
             ": Choose one valid move from: " + valid_moves_text(s.before);
      out += "\nMove: " + action_text(s.before, s.action);
      out += "\nCurrent State:\n" + format_state_text(s.after);
    }
    if (t.complete)
      out += "\nFinished.\n[Moves]:\n" + move_list(t, ", ");
    break;
  case Task::cube:
    out += std::string(first_line(prompt_example_text(Task::cube)));
    out += "\n[Initial Cube State]:\n" + format_state_text(t.initial);
    out += "\n[Process]:";
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& s = t.steps[i];
      out += "\n[Step " + std::to_string(i + 1) + "]";
      out += "\n[Move] " + action_text(s.before, s.action);
      out += "\n[Current Cube State]\n" + format_state_text(s.after);
    }
    if (t.complete)
      out += "\nFinished.\nNow strictly follow the above process to form Restoration Moves."
             "\n[Restoration Moves]:\n" +
             move_list(t, " ");
    break;
  }
  return out;
}

std::string_view answer_marker(Task task) {
  switch (task) {
  case Task::game24:
    return "Answer:";
  case Task::puzzle8:
    return "[Moves]:";
  case Task::cube:
    return "[Restoration Moves]:";
  }
  return "";
}

std::string normalize_move_token(std::string token) {
  // Tolerate quoting and list punctuation around move names.
  const std::string_view strip = "'\"[]().`*";
  while (!token.empty() && strip.find(token.front()) != std::string_view::npos)
    token.erase(token.begin());
  while (!token.empty() && (token.back() == '.' || token.back() == ']' || token.back() == '"' ||
                            token.back() == ')' || token.back() == '`' || token.back() == '*'))
    token.pop_back();
  return token;
}

std::vector<int> parse_move_list(Task task, const ProblemState& initial, std::string_view payload) {
  std::vector<int> actions;
  std::string token;
  ProblemState state = initial;
  auto flush = [&] {
    auto t = normalize_move_token(token);
    token.clear();
    if (t.empty())
      return;
    if (task == Task::puzzle8) {
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<char>(i == 0 ? std::toupper(static_cast<unsigned char>(t[i]))
                                        : std::tolower(static_cast<unsigned char>(t[i])));
    } else if (t.size() > 1 && t.back() == '\'' && t[t.size() - 2] == '\'') {
      t.pop_back();
    }
    actions.push_back(parse_action(state, t));
  };
  for (char c : payload) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token += c;
  }
  flush();
  return actions;
}

} // namespace

const ProblemState& ThoughtTrajectory::final_state() const {
  return steps.empty() ? initial : steps.back().after;
}

std::vector<int> ThoughtTrajectory::actions() const {
  std::vector<int> out;
  for (const auto& s : steps)
    out.push_back(s.action);
  return out;
}

bool is_solved(const ThoughtTrajectory& trajectory) {
  return is_goal(trajectory.final_state()) &&
         static_cast<int>(trajectory.steps.size()) <= default_horizon(trajectory.task);
}

ThoughtTrajectory trajectory_from_actions(const ProblemState& initial,
                                          const std::vector<int>& actions) {
  ThoughtTrajectory t;
  t.task = task_of(initial);
  t.initial = initial;
  ProblemState state = initial;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto legal = legal_action_ids(state);
    if (std::find(legal.begin(), legal.end(), actions[i]) == legal.end())
      throw ValidationError(i + 1, "action " + std::to_string(actions[i]) + " is not legal at step " +
                                       std::to_string(i + 1));
    ProblemState next = apply_action(state, actions[i]);
    t.steps.push_back({state, actions[i], next});
    state = std::move(next);
  }
  return t;
}

void check_chain(const ThoughtTrajectory& trajectory) {
  const ProblemState* prev = &trajectory.initial;
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const auto& s = trajectory.steps[i];
    if (state_key(s.before) != state_key(*prev))
      throw ContractError("trajectory chain broken before step " + std::to_string(i + 1));
    if (state_key(apply_action(s.before, s.action)) != state_key(s.after))
      throw ContractError("step " + std::to_string(i + 1) + " does not follow from its action");
    prev = &s.after;
  }
}

ThoughtTrajectory extract_single(const ActResult& run, const ProblemState& initial, int horizon) {
  if (horizon <= 0)
    horizon = default_horizon(task_of(initial));
  if (!is_terminal(run.final_state, run.final_steps, horizon))
    throw ContractError("thought extraction from an unfinished episode");
  ThoughtTrajectory t;
  t.task = task_of(initial);
  t.initial = initial;
  t.steps = run.steps;
  return t;
}

ThoughtTrajectory extract_single(const SearchTree& tree) {
  ThoughtTrajectory t;
  t.initial = tree.root().state;
  t.task = task_of(t.initial);
  int id = tree.root_id();
  while (true) {
    const auto& n = tree.node(id);
    if (n.terminal || !n.expanded || n.visit_sum() == 0)
      break;
    const auto p = visit_policy(tree.visits(id), 0.0);
    const int action = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    const Edge* edge = nullptr;
    for (const auto& e : n.edges)
      if (e.action == action)
        edge = &e;
    if (!edge || edge->child < 0)
      break;
    t.steps.push_back({n.state, action, tree.node(edge->child).state});
    id = edge->child;
  }
  return t;
}

ThoughtSet extract_multi(const ProblemState& problem, Evaluator& eval, const SearchConfig& config,
                         int samples, int max_solutions) {
  if (samples < 1)
    throw ContractError("extract_multi needs at least one sample");
  if (max_solutions < 1)
    throw ContractError("max_solutions must be positive");
  const int horizon = resolved_horizon(config, task_of(problem));
  SearchTree tree(problem, 0, horizon);
  std::mt19937_64 rng(config.seed);
  std::unordered_set<int> searched;
  ThoughtSet set;

  std::map<std::vector<int>, int> counts;
  std::vector<std::vector<int>> first_seen;
  for (int m = 0; m < samples; ++m) {
    int id = tree.root_id();
    std::vector<int> actions;
    while (!tree.node(id).terminal) {
      if (searched.insert(id).second)
        tree.run_simulations(eval, config, rng, set.f_calls, id);
      auto visits = tree.visits(id);
      if (std::accumulate(visits.begin(), visits.end(), 0) == 0)
        for (const auto& e : tree.node(id).edges)
          visits[static_cast<std::size_t>(e.action)] = 1;
      const auto p = visit_policy(visits, 1.0);
      std::discrete_distribution<int> pick(p.begin(), p.end());
      const int action = pick(rng);
      const auto& edges = tree.node(id).edges;
      const auto it = std::find_if(edges.begin(), edges.end(),
                                   [&](const Edge& e) { return e.action == action; });
      id = tree.child(id, static_cast<int>(it - edges.begin()));
      actions.push_back(action);
    }
    if (counts[actions]++ == 0)
      first_seen.push_back(actions);
  }
  set.samples = samples;
  std::stable_sort(first_seen.begin(), first_seen.end(),
                   [&](const auto& a, const auto& b) { return counts[a] > counts[b]; });
  for (const auto& seq : first_seen) {
    if (static_cast<int>(set.trajectories.size()) == max_solutions)
      break;
    set.trajectories.push_back(trajectory_from_actions(problem, seq));
    set.counts.push_back(counts[seq]);
  }
  return set;
}

std::string render_prompt(const ThoughtTrajectory& trajectory) { return render_one(trajectory); }

std::string render_prompt(const ThoughtSet& set) {
  if (set.trajectories.size() == 1)
    return render_one(set.trajectories.front());
  std::string out;
  for (std::size_t i = 0; i < set.trajectories.size(); ++i) {
    if (i)
      out += "\n";
    out += "Solution " + std::to_string(i + 1) + ":\n" + render_one(set.trajectories[i]);
  }
  return out;
}

std::string render_critique_process(const ThoughtTrajectory& t) {
  std::string out;
  switch (t.task) {
  case Task::game24:
    out += "Input: " + numbers_text(std::get<Game24State>(t.initial)) + "\nSteps:";
    for (std::size_t i = 0; i < t.steps.size(); ++i)
      out += "\n[Steps " + std::to_string(i + 1) + "] " + game24_step_line(t.steps[i]);
    break;
  case Task::puzzle8:
    out += "[Initial State]:\n" + format_state_text(t.initial);
    out += "\n[Process]\n" + format_state_text(t.initial);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      out += "\nStep " + std::to_string(i + 1) +
             ": Choose one valid move from: " + valid_moves_text(s.before);
      out += "\n" + action_text(s.before, s.action);
      out += "\n" + format_state_text(s.after);
    }
    out += "\nFinished.";
    break;
  case Task::cube:
    out += "[Initial Cube State]:\n" + format_state_text(t.initial);
    out += "\n[Process]:";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      out += "\n[Step " + std::to_string(i + 1) + "]";
      out += "\n[Move] " + action_text(s.before, s.action);
      out += "\n[Current Cube State]\n" + format_state_text(s.after);
    }
    out += "\nFinished.";
    break;
  }
  return out;
}

std::string answer_payload(Task task, std::string_view text) {
  const auto marker = answer_marker(task);
  const auto at = text.rfind(marker);
  if (at == std::string_view::npos)
    throw ParseError(text.size(), "answer marker '" + std::string(marker) + "' not found");
  std::size_t pos = at + marker.size();
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  const auto end = text.find('\n', pos);
  std::string payload(text.substr(pos, end == std::string_view::npos ? text.npos : end - pos));
  while (!payload.empty() && std::isspace(static_cast<unsigned char>(payload.back())))
    payload.pop_back();
  if (payload.empty())
    throw ParseError(pos, "empty answer after '" + std::string(marker) + "'");
  return payload;
}

std::vector<std::string> answer_payloads(Task task, std::string_view text) {
  const auto marker = answer_marker(task);
  std::vector<std::string> out;
  std::size_t at = text.find(marker);
  while (at != std::string_view::npos) {
    const auto next = text.find(marker, at + marker.size());
    const auto chunk = text.substr(0, next == std::string_view::npos ? text.size() : next);
    try {
      out.push_back(answer_payload(task, chunk));
    } catch (const ParseError&) {
    }
    at = next;
  }
  return out;
}

ThoughtTrajectory parse_trajectory(std::string_view text, Task task, const ProblemState& initial) {
  if (task_of(initial) != task)
    throw TaskMismatchError("initial state does not belong to task " + std::string(to_string(task)));
  std::string payload;
  if (text.find(answer_marker(task)) != std::string_view::npos)
    payload = answer_payload(task, text);
  else
    payload = std::string(text);
  if (task == Task::game24) {
    const auto expr = parse_expression(payload);
    const auto& g = std::get<Game24State>(initial);
    std::vector<int> ids;
    for (const auto& a : actions_from_expression(g, expr))
      ids.push_back(a.index());
    return trajectory_from_actions(initial, ids);
  }
  return trajectory_from_actions(initial, parse_move_list(task, initial, payload));
}

std::string export_dot(const ThoughtSet& set) {
  auto node_id = [](const ProblemState& s) {
    std::ostringstream os;
    os << "s" << std::hex << std::hash<std::string>{}(state_key(s));
    return os.str();
  };
  auto escape = [](const std::string& text) {
    std::string out;
    for (char c : text) {
      if (c == '\n')
        out += "\\n";
      else if (c == '"')
        out += "\\\"";
      else
        out += c;
    }
    return out;
  };
  std::map<std::string, std::string> nodes;
  std::set<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& t : set.trajectories) {
    nodes.emplace(node_id(t.initial), format_state_text(t.initial));
    for (const auto& s : t.steps) {
      nodes.emplace(node_id(s.after), format_state_text(s.after));
      edges.emplace(node_id(s.before), node_id(s.after), action_text(s.before, s.action));
    }
  }
  std::string out = "digraph thoughts {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& [id, label] : nodes) {
    out += "  " + id + " [label=\"" + escape(label) + "\"";
    for (const auto& t : set.trajectories)
      if (node_id(t.final_state()) == id && is_goal(t.final_state())) {
        out += ", peripheries=2";
        break;
      }
    out += "];\n";
  }
  for (const auto& [from, to, label] : edges)
    out += "  " + from + " -> " + to + " [label=\"" + escape(label) + "\"];\n";
  return out + "}\n";
}

} // namespace xot
