#include "doctest.h"
#include "examples.hpp"

#include "xot/errors.hpp"
#include "xot/net.hpp"
#include "xot/prompts.hpp"
#include "xot/revision.hpp"

#include <sstream>

using namespace xot;
using namespace xot::testing;

TEST_CASE("revision: oracle critic on the reference examples") {
  const auto g = oracle_critic(game24_wrong());
  CHECK(g.verdict == Verdict::wrong_step);
  CHECK(g.step == 2);
  const auto p = oracle_critic(puzzle8_wrong());
  CHECK(p.verdict == Verdict::wrong_step);
  CHECK(p.step == 4);
  const auto c = oracle_critic(cube_wrong());
  CHECK(c.verdict == Verdict::wrong_step);
  CHECK(c.step == 3);
  for (const auto& t : {game24_solution(), puzzle8_solution(), cube_solution()})
    CHECK(oracle_critic(t).verdict == Verdict::valid);
}

TEST_CASE("revision: an unrecoverable first step is all_wrong") {
  // 2 * 9 = 18 leaves {10, 12, 18}, from which 24 is out of reach.
  const auto t = by_texts(game24_example(), {"9 * 2 = 18", "18 + 10 = 28", "28 + 12 = 40"});
  CHECK(oracle_critic(t).verdict == Verdict::all_wrong);
}

TEST_CASE("revision: the flagged step and its successors are searched again") {
  const auto params = NetParams::init(Task::puzzle8, 1);
  NetEvaluator eval(params);
  SearchConfig config;
  config.simulations = 50;
  const auto wrong = puzzle8_wrong();
  const auto c = oracle_critic(wrong);
  std::size_t calls = 0;
  const auto revised = revise_once(wrong, c, eval, config, &calls);
  REQUIRE(revised.steps.size() >= 3);
  for (int i = 0; i < c.step - 1; ++i)
    CHECK(revised.steps[i].action == wrong.steps[i].action);
  check_chain(revised);
  CHECK(calls > 0);
  CHECK(is_solved(revised));
  // Valid critiques change nothing.
  CHECK(revise_once(wrong, Critique{}, eval, config).actions() == wrong.actions());
}

TEST_CASE("revision: the flagged move is never replayed") {
  // A constant evaluator makes every search prefer the same moves, so without
  // the exclusion the revision would reproduce the flagged step.
  UniformEvaluator eval(-0.5);
  SearchConfig config;
  config.simulations = 20;
  for (const auto& wrong : {game24_wrong(), puzzle8_wrong(), cube_wrong()}) {
    for (int step = 1; step <= static_cast<int>(wrong.steps.size()); ++step) {
      const Critique c{Verdict::wrong_step, step, ""};
      const auto revised = revise_once(wrong, c, eval, config, nullptr);
      REQUIRE(static_cast<int>(revised.steps.size()) >= step);
      CHECK(revised.steps[step - 1].action != wrong.steps[step - 1].action);
      check_chain(revised);
    }
    const auto restart = revise_once(wrong, {Verdict::all_wrong, 0, ""}, eval, config, nullptr);
    CHECK(restart.steps.front().action != wrong.steps.front().action);
  }
}

TEST_CASE("revision: loop accounting with a stub critic") {
  const auto params = NetParams::init(Task::game24, 1);
  NetEvaluator eval(params);
  ThoughtSet set;
  set.trajectories = {game24_wrong()};
  set.counts = {1};
  AlwaysValidCritic stub;
  RevisionConfig rc;
  rc.max_rounds = 3;
  rc.simulations = 20;
  const auto r = revise_loop(set, stub, eval, rc);
  CHECK(r.counters.critic_calls == 1);
  CHECK(r.counters.revisions == 0);
  CHECK(r.set.trajectories[0].actions() == game24_wrong().actions());

  OracleCritic oracle;
  std::ostringstream log;
  rc.log = &log;
  rc.simulations = 500;
  const auto o = revise_loop(set, oracle, eval, rc);
  CHECK(o.counters.critic_calls >= 1);
  CHECK(o.counters.critic_calls <= 3);
  CHECK(o.counters.revisions >= 1);
  CHECK(o.counters.erroneous_reviews >= 1);
  const auto text = log.str();
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == o.counters.critic_calls);
}

TEST_CASE("revision: critic exceptions count as unparseable") {
  struct Throwing final : Critic {
    Critique review(const ThoughtTrajectory&, const std::string&) override {
      throw TransportError("down");
    }
  } critic;
  const auto params = NetParams::init(Task::cube, 1);
  NetEvaluator eval(params);
  ThoughtSet set;
  set.trajectories = {cube_wrong()};
  set.counts = {1};
  const auto r = revise_loop(set, critic, eval, RevisionConfig{});
  CHECK(r.counters.critic_failures == 1);
  CHECK(r.set.trajectories[0].actions() == cube_wrong().actions());
}
