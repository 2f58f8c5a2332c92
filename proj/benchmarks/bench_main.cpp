#include <benchmark/benchmark.h>

#include "xot/instances.hpp"
#include "xot/mcts.hpp"
#include "xot/net.hpp"
#include "xot/problem.hpp"

#include <random>

using namespace xot;

namespace {

ProblemState sample_state(Task task) {
  if (task == Task::game24)
    return parse_state_text(Task::game24, "2 9 10 12");
  return generate_instances(task, 8, 3).back().state;
}

Task task_arg(const benchmark::State& state) { return static_cast<Task>(state.range(0)); }

void BM_Forward(benchmark::State& state) {
  const Task task = task_arg(state);
  const auto params = NetParams::init(task, 1);
  const auto enc = encode_state(sample_state(task));
  for (auto _ : state)
    benchmark::DoNotOptimize(forward(params, enc.features, enc.mask));
}

void BM_Encode(benchmark::State& state) {
  const auto s = sample_state(task_arg(state));
  for (auto _ : state)
    benchmark::DoNotOptimize(encode_state(s));
}

// One search from a fresh root; items processed = simulations.
void BM_Search(benchmark::State& state) {
  const Task task = task_arg(state);
  const auto params = NetParams::init(task, 1);
  const auto root = sample_state(task);
  SearchConfig config;
  config.simulations = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    NetEvaluator eval(params);
    SearchTree tree(root, 0, resolved_horizon(config, task));
    std::size_t calls = 0;
    tree.run_simulations(eval, config, rng, calls);
    benchmark::DoNotOptimize(calls);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_GoalDistance(benchmark::State& state) {
  const Task task = task_arg(state);
  const auto instances = generate_instances(task, 64, 5);
  goal_distance(instances.front().state); // builds the table outside the loop
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(goal_distance(instances[i++ % instances.size()].state));
}

void BM_Episode(benchmark::State& state) {
  const Task task = task_arg(state);
  const auto params = NetParams::init(task, 1);
  const auto root = sample_state(task);
  SearchConfig config;
  config.simulations = 20;
  for (auto _ : state) {
    NetEvaluator eval(params);
    benchmark::DoNotOptimize(act_sequence(root, eval, config, MoveSelect::argmax).f_calls);
  }
}

constexpr int kGame24 = static_cast<int>(Task::game24);
constexpr int kPuzzle8 = static_cast<int>(Task::puzzle8);
constexpr int kCube = static_cast<int>(Task::cube);

} // namespace

BENCHMARK(BM_Forward)->Arg(kGame24)->Arg(kPuzzle8)->Arg(kCube);
BENCHMARK(BM_Encode)->Arg(kGame24)->Arg(kPuzzle8)->Arg(kCube);
BENCHMARK(BM_Search)->Args({kGame24, 200})->Args({kPuzzle8, 20})->Args({kCube, 20})->Args({kCube, 200});
BENCHMARK(BM_GoalDistance)->Arg(kPuzzle8)->Arg(kCube);
BENCHMARK(BM_Episode)->Arg(kGame24)->Arg(kPuzzle8)->Arg(kCube);
BENCHMARK_MAIN();
