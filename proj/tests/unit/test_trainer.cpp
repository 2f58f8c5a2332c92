#include "doctest.h"
#include "examples.hpp"

#include "xot/instances.hpp"
#include "xot/trainer.hpp"

#include <sstream>

using namespace xot;
using namespace xot::testing;

TEST_CASE("trainer: replay buffer drops the oldest samples") {
  ReplayBuffer buffer(3);
  for (int i = 0; i < 5; ++i) {
    TrainSample s;
    s.target_value = i;
    buffer.push(s);
  }
  REQUIRE(buffer.size() == 3);
  CHECK(buffer.samples().front().target_value == 2);
  CHECK(buffer.samples().back().target_value == 4);
}

TEST_CASE("trainer: self-play targets") {
  const auto params = NetParams::init(Task::puzzle8, 3);
  SearchConfig config;
  config.simulations = 20;
  config.seed = 5;
  const auto ep = self_play_episode(puzzle8_example(), params, config);
  REQUIRE(!ep.samples.empty());
  CHECK(static_cast<int>(ep.samples.size()) == ep.stats.steps);
  for (const auto& s : ep.samples) {
    CHECK(s.target_policy.sum() == doctest::Approx(1.0));
    for (int a = 0; a < s.target_policy.size(); ++a)
      if (!s.mask[a])
        CHECK(s.target_policy[a] == 0.0);
    // Without shaping every state carries the episode's final return.
    CHECK(s.target_value == doctest::Approx(ep.stats.final_reward));
    CHECK(s.target_value <= 0.0);
    CHECK(s.target_value >= -1.0);
  }
}

TEST_CASE("trainer: accepted epochs never raise the loss") {
  auto params = NetParams::init(Task::game24, 1);
  ReplayBuffer buffer;
  SearchConfig config;
  config.simulations = 30;
  for (int i = 0; i < 3; ++i) {
    config.seed = i;
    for (auto& s : self_play_episode(game24_example(), params, config).samples)
      buffer.push(s);
  }
  TrainPlan plan = default_plan(Task::game24);
  plan.epochs = 30;
  const auto curve = train_iteration(params, buffer, plan, 7);
  REQUIRE(curve.size() == 30);
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i] <= curve[i - 1] + 1e-12);
}

TEST_CASE("trainer: runs are seeded and log one line per iteration") {
  const auto problems = generate_instances(Task::cube, 40, 2);
  auto plan = default_plan(Task::cube);
  plan.iterations = 2;
  plan.episodes_per_iteration = 3;
  plan.epochs = 5;
  std::ostringstream log1, log2;
  const auto a = run_training(Task::cube, problems, plan, &log1);
  const auto b = run_training(Task::cube, problems, plan, &log2);
  CHECK(a.params == b.params);
  CHECK(log1.str() == log2.str());
  const auto text = log1.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  REQUIRE(a.iterations.size() == 2);
  CHECK(a.iterations[0].episodes == 3);
  CHECK(a.iterations[0].f_calls > 0);
}
