#include "xot/revision.hpp"

#include "xot/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <ostream>

namespace xot {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::valid:
    return "valid";
  case Verdict::wrong_step:
    return "wrong_step";
  case Verdict::all_wrong:
    return "all_wrong";
  case Verdict::unparseable:
    return "unparseable";
  }
  return "unknown";
}

int default_revision_simulations(Task task) { return task == Task::puzzle8 ? 50 : 500; }

namespace {

bool solvable(const ProblemState& state) {
  const auto numbers = std::get<Game24State>(state).numbers();
  return solvable_24(numbers).solvable;
}

Critique wrong_at(std::size_t step, std::string why) {
  if (step <= 1)
    return {Verdict::all_wrong, 0, std::move(why)};
  return {Verdict::wrong_step, static_cast<int>(step), std::move(why)};
}

} // namespace

Critique oracle_critic(const ThoughtTrajectory& trajectory) {
  check_chain(trajectory);
  if (is_solved(trajectory))
    return {Verdict::valid, 0, "reaches the goal"};
  const auto& steps = trajectory.steps;
  if (steps.empty())
    return {Verdict::all_wrong, 0, "no steps"};

  if (trajectory.task == Task::game24) {
    bool before = solvable(trajectory.initial);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const bool after = solvable(steps[i].after);
      if (before && !after)
        return wrong_at(i + 1, "24 is unreachable after step " + std::to_string(i + 1));
      before = after;
    }
    return {Verdict::all_wrong, 0, "24 is unreachable from the input"};
  }

  const auto length = steps.size();
  for (std::size_t i = 0; i < length; ++i) {
    const auto d = static_cast<std::size_t>(goal_distance(steps[i].after));
    if (d > length - (i + 1))
      return wrong_at(i + 1, "distance " + std::to_string(d) + " after step " +
                                 std::to_string(i + 1) + " exceeds the " +
                                 std::to_string(length - i - 1) + " remaining moves");
  }
  // Unreachable when the trajectory does not end at the goal.
  return {Verdict::all_wrong, 0, "goal not reached"};
}

ThoughtTrajectory revise_once(const ThoughtTrajectory& trajectory, const Critique& critique,
                              Evaluator& eval, const SearchConfig& config,
                              std::size_t* f_calls) {
  if (critique.verdict == Verdict::valid || critique.verdict == Verdict::unparseable)
    return trajectory;
  std::size_t keep = 0;
  if (critique.verdict == Verdict::wrong_step) {
    if (critique.step < 1 || static_cast<std::size_t>(critique.step) > trajectory.steps.size())
      throw ContractError("critique names step " + std::to_string(critique.step) +
                          " of a " + std::to_string(trajectory.steps.size()) + "-step thought");
    keep = static_cast<std::size_t>(critique.step - 1);
  }
  ThoughtTrajectory revised;
  revised.task = trajectory.task;
  revised.initial = trajectory.initial;
  revised.complete = trajectory.complete;
  revised.steps.assign(trajectory.steps.begin(),
                       trajectory.steps.begin() + static_cast<std::ptrdiff_t>(keep));
  const ProblemState& from = keep == 0 ? trajectory.initial : trajectory.steps[keep - 1].after;
  // The flagged move is not replayed.
  const int avoid = trajectory.steps.empty() ? -1 : trajectory.steps[keep].action;
  const auto run = act_sequence(from, eval, config, MoveSelect::argmax, static_cast<int>(keep), avoid);
  if (f_calls)
    *f_calls += run.f_calls;
  revised.steps.insert(revised.steps.end(), run.steps.begin(), run.steps.end());
  return revised;
}

RevisionResult revise_loop(const ThoughtSet& initial, Critic& critic, Evaluator& eval,
                           const RevisionConfig& config) {
  if (config.max_rounds < 1)
    throw ContractError("revision needs at least one round");
  if (config.simulations < 1)
    throw ContractError("revision simulation count must be positive");
  RevisionResult result;
  result.set = initial;
  for (std::size_t k = 0; k < result.set.trajectories.size(); ++k) {
    auto& traj = result.set.trajectories[k];
    for (int round = 1; round <= config.max_rounds; ++round) {
      Critique c;
      ++result.counters.critic_calls;
      try {
        c = critic.review(traj, render_critique_process(traj));
      } catch (const Error& e) {
        ++result.counters.critic_failures;
        c = {Verdict::unparseable, 0, e.what()};
      }
      SearchConfig search = config.search;
      search.simulations = config.simulations;
      search.seed = config.search.seed + static_cast<std::uint64_t>(round) * 7919 + k;
      if (config.log) {
        nlohmann::json line{{"trajectory", k},
                            {"round", round},
                            {"verdict", to_string(c.verdict)},
                            {"wrong_step", c.step},
                            {"simulations", search.simulations}};
        *config.log << line.dump() << '\n';
      }
      const bool wrong_before = !is_solved(traj);
      if (wrong_before)
        ++result.counters.erroneous_reviews;
      if (c.verdict == Verdict::valid || c.verdict == Verdict::unparseable)
        break;
      traj = revise_once(traj, c, eval, search, &result.counters.f_calls);
      ++result.counters.revisions;
      if (wrong_before && is_solved(traj))
        ++result.counters.repaired;
    }
  }
  // Revisions can converge on the same moves; keep the first of each.
  ThoughtSet unique;
  unique.samples = result.set.samples;
  unique.f_calls = result.set.f_calls;
  for (std::size_t k = 0; k < result.set.trajectories.size(); ++k) {
    const auto actions = result.set.trajectories[k].actions();
    const bool seen = std::any_of(unique.trajectories.begin(), unique.trajectories.end(),
                                  [&](const auto& t) { return t.actions() == actions; });
    if (seen)
      continue;
    unique.trajectories.push_back(result.set.trajectories[k]);
    if (k < result.set.counts.size())
      unique.counts.push_back(result.set.counts[k]);
  }
  result.set = std::move(unique);
  return result;
}

} // namespace xot
