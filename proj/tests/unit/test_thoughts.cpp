#include "doctest.h"
#include "examples.hpp"

#include "xot/errors.hpp"
#include "xot/mcts.hpp"
#include "xot/net.hpp"
#include "xot/prompt_text.hpp"

using namespace xot;
using namespace xot::testing;

TEST_CASE("thoughts: worked examples render exactly as the golden prompts") {
  CHECK(render_prompt(game24_solution()) == golden("prompt_game24.txt"));
  CHECK(render_prompt(puzzle8_solution()) == golden("prompt_puzzle8.txt"));
  CHECK(render_prompt(cube_solution()) == golden("prompt_cube.txt"));
}

TEST_CASE("thoughts: golden prompts equal the reference blocks up to one corrected line") {
  CHECK(golden("prompt_game24.txt") == prompt_example_text(Task::game24));
  CHECK(golden("prompt_cube.txt") == prompt_example_text(Task::cube));
  // The reference lists [Right, Up] at step 4, but the blank there can also move down.
  std::string reference(prompt_example_text(Task::puzzle8));
  const std::string wrong = "Step 4: Choose one valid move from: [Right, Up]\n";
  const auto at = reference.find(wrong);
  REQUIRE(at != std::string::npos);
  reference.replace(at, wrong.size(), "Step 4: Choose one valid move from: [Right, Up, Down]\n");
  CHECK(golden("prompt_puzzle8.txt") == reference);
}

TEST_CASE("thoughts: truncation drops the last step and the answer") {
  auto t = puzzle8_solution();
  t.complete = false;
  const auto text = render_prompt(t);
  CHECK(text.find("Step 4:") == std::string::npos);
  CHECK(text.find("Step 3:") != std::string::npos);
  CHECK(text.find("[Moves]") == std::string::npos);
  auto g = game24_solution();
  g.complete = false;
  CHECK(render_prompt(g).find("Answer:") == std::string::npos);
}

TEST_CASE("thoughts: parse round trip and validation") {
  for (const auto& t : {game24_solution(), puzzle8_solution(), cube_solution(), cube_wrong()}) {
    const auto back = parse_trajectory(render_prompt(t), t.task, t.initial);
    CHECK(back.actions() == t.actions());
  }
  CHECK_THROWS_AS(parse_trajectory("[Moves]:\nLeft, Left, Left", Task::puzzle8, puzzle8_example()),
                  ValidationError);
  try {
    parse_trajectory("[Moves]:\nLeft, Left, Left", Task::puzzle8, puzzle8_example());
  } catch (const ValidationError& e) {
    CHECK(e.step() == 3);
  }
  CHECK_THROWS_AS(parse_trajectory("[Restoration Moves]:\nD", Task::cube, cube_example()), Error);
  CHECK_THROWS_AS(parse_trajectory("Answer: 2 + 9", Task::cube, game24_example()), TaskMismatchError);
}

TEST_CASE("thoughts: answer markers") {
  CHECK(answer_payload(Task::cube, "blah\n[Restoration Moves]:\nR U' F'\n") == "R U' F'");
  CHECK(answer_payload(Task::game24, "Answer: (12 * 2) * (10 - 9) = 24") == "(12 * 2) * (10 - 9) = 24");
  CHECK_THROWS_AS(answer_payload(Task::puzzle8, "no marker here"), ParseError);
  const auto all = answer_payloads(Task::puzzle8, "[Moves]:\nUp\nSolution 2:\n[Moves]:\nLeft, Up");
  CHECK(all == std::vector<std::string>{"Up", "Left, Up"});
}

TEST_CASE("thoughts: multi-solution extraction obeys the cap and is duplicate-free") {
  for (auto task : kAllTasks) {
    const auto params = NetParams::init(task, 3);
    NetEvaluator eval(params);
    SearchConfig config;
    config.simulations = 10;
    config.seed = 4;
    const ProblemState start = task == Task::game24 ? game24_example()
                               : task == Task::puzzle8 ? puzzle8_example()
                                                       : cube_example();
    const auto set = extract_multi(start, eval, config, 60);
    CHECK(!set.trajectories.empty());
    CHECK(set.trajectories.size() <= 3);
    CHECK(set.counts.size() == set.trajectories.size());
    for (std::size_t i = 0; i < set.trajectories.size(); ++i) {
      check_chain(set.trajectories[i]);
      for (std::size_t j = i + 1; j < set.trajectories.size(); ++j)
        CHECK(set.trajectories[i].actions() != set.trajectories[j].actions());
      if (i > 0)
        CHECK(set.counts[i] <= set.counts[i - 1]);
    }
    CHECK(set.samples == 60);
    const auto text = render_prompt(set);
    if (set.trajectories.size() > 1)
      CHECK(text.rfind("Solution 1:", 0) == 0);
    CHECK(export_dot(set).find("digraph") != std::string::npos);
  }
}

TEST_CASE("thoughts: a single rollout follows the most visited edges") {
  const auto params = NetParams::init(Task::cube, 2);
  NetEvaluator eval(params);
  SearchConfig config;
  config.simulations = 20;
  const auto run = act_sequence(cube_example(), eval, config, MoveSelect::argmax);
  const auto t = extract_single(run, cube_example());
  CHECK(t.steps.size() == run.steps.size());
  check_chain(t);
  for (std::size_t i = 0; i < run.roots.size() && i < t.steps.size(); ++i) {
    const auto& v = run.roots[i].visits;
    CHECK(v[t.steps[i].action] == *std::max_element(v.begin(), v.end()));
  }
}
