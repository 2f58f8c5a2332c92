#include "xot/trainer.hpp"

#include "xot/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

namespace xot {

TrainPlan default_plan(Task task) {
  TrainPlan plan;
  switch (task) {
  case Task::game24:
    plan.search.simulations = 400;
    plan.search.temperature = 0.1;
    plan.search.exploration = 1.0;
    plan.initial_value = 0.6;
    break;
  case Task::puzzle8:
    plan.search.simulations = 100;
    plan.search.temperature = 1.0;
    plan.search.exploration = 0.03;
    break;
  case Task::cube:
    plan.search.simulations = 200;
    plan.search.temperature = 0.3;
    plan.search.exploration = 0.3;
    break;
  }
  return plan;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0)
    throw ContractError("replay buffer capacity must be positive");
}

void ReplayBuffer::push(TrainSample sample) {
  if (samples_.size() == capacity_)
    samples_.pop_front();
  samples_.push_back(std::move(sample));
}

Episode self_play_episode(const ProblemState& problem, const NetParams& params,
                          const SearchConfig& config, bool step_rewards) {
  NetEvaluator eval(params);
  const auto run = act_sequence(problem, eval, config, MoveSelect::sample);
  const int horizon = resolved_horizon(config, task_of(problem));
  const double final_reward = run.steps.empty()
                                  ? normalized_reward(problem, 0, horizon)
                                  : normalized_reward(run.final_state, run.final_steps, horizon);
  Episode ep;
  ep.stats.f_calls = run.f_calls;
  ep.stats.steps = static_cast<int>(run.steps.size());
  ep.stats.solved = is_goal(run.final_state);
  ep.stats.final_reward = final_reward;

  // Optional shaping: every state reached from s is rewarded with its own
  // normalized distance penalty; the target is their mean, so it stays in [-1, 0].
  std::vector<double> shaped(run.roots.size(), final_reward);
  if (step_rewards && task_of(problem) != Task::game24) {
    double sum = 0.0;
    for (std::size_t i = run.steps.size(); i-- > 0;) {
      sum -= goal_distance(run.steps[i].after) / reward_scale(task_of(problem));
      shaped[i] = sum / static_cast<double>(run.steps.size() - i);
    }
  }
  for (std::size_t i = 0; i < run.roots.size(); ++i) {
    const auto& root = run.roots[i];
    if (std::accumulate(root.visits.begin(), root.visits.end(), 0) == 0)
      continue;
    const auto enc = encode_state(root.state);
    const auto pi = visit_policy(root.visits, 1.0);
    TrainSample s;
    s.features = enc.features;
    s.mask = enc.mask;
    s.target_policy = Eigen::Map<const Eigen::VectorXd>(pi.data(), static_cast<Eigen::Index>(pi.size()));
    s.target_value = std::clamp(shaped[i], -1.0, 1.0);
    ep.samples.push_back(std::move(s));
  }
  return ep;
}

std::vector<double> train_iteration(NetParams& params, const ReplayBuffer& buffer,
                                    const TrainPlan& plan, std::uint64_t seed) {
  if (buffer.empty())
    throw ContractError("training on an empty replay buffer");
  if (plan.epochs < 1 || plan.batch_size < 1)
    throw ContractError("epochs and batch size must be positive");
  const std::vector<TrainSample> data(buffer.samples().begin(), buffer.samples().end());
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  // Each epoch is kept only if it does not raise the full-buffer loss; otherwise
  // it is undone and the step size halved, so the curve never goes up.
  double lr = plan.learning_rate;
  double current = loss(params, data);
  std::vector<double> curve;
  Sgd opt(lr, plan.momentum);
  for (int epoch = 0; epoch < plan.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    NetParams trial = params;
    bool diverged = false;
    try {
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(plan.batch_size)) {
        const auto end = std::min(order.size(), start + static_cast<std::size_t>(plan.batch_size));
        std::vector<TrainSample> batch;
        batch.reserve(end - start);
        for (std::size_t k = start; k < end; ++k)
          batch.push_back(data[order[k]]);
        opt.step(trial, batch);
      }
    } catch (const DivergenceError&) {
      diverged = true;
    }
    const double after = diverged ? current + 1.0 : loss(trial, data);
    if (!diverged && std::isfinite(after) && after <= current) {
      params = std::move(trial);
      current = after;
    } else {
      lr *= 0.5;
      opt = Sgd(lr, plan.momentum);
    }
    curve.push_back(current);
  }
  return curve;
}

TrainingResult run_training(Task task, std::span<const Instance> train_problems,
                            const TrainPlan& plan, std::ostream* log,
                            std::optional<NetParams> initial) {
  if (plan.iterations < 1 || plan.episodes_per_iteration < 1)
    throw ContractError("iterations and episodes per iteration must be positive");
  if (train_problems.empty())
    throw ContractError("no training problems");
  for (const auto& inst : train_problems)
    if (inst.task != task)
      throw TaskMismatchError("training problem " + inst.id + " belongs to another task");

  if (std::abs(plan.initial_value) >= 1.0)
    throw ContractError("initial value must lie in (-1, 1)");
  TrainingResult result{initial ? *initial : NetParams::init(task, plan.seed), {}};
  if (!initial)
    result.params.bv(0, 0) = std::atanh(plan.initial_value);
  if (result.params.task != task)
    throw TaskMismatchError("initial network is for task " +
                            std::string(to_string(result.params.task)));
  ReplayBuffer buffer(plan.buffer_capacity);
  std::mt19937_64 rng(plan.seed);
  std::vector<std::size_t> pool;

  for (int it = 0; it < plan.iterations; ++it) {
    IterationMetrics m;
    m.iteration = it + 1;
    for (int e = 0; e < plan.episodes_per_iteration; ++e) {
      if (pool.empty()) {
        pool.resize(train_problems.size());
        std::iota(pool.begin(), pool.end(), 0);
        std::shuffle(pool.begin(), pool.end(), rng);
      }
      const auto idx = pool.back();
      pool.pop_back();
      SearchConfig cfg = plan.search;
      cfg.seed = rng();
      auto ep = self_play_episode(train_problems[idx].state, result.params, cfg, plan.step_rewards);
      m.episodes += 1;
      m.f_calls += ep.stats.f_calls;
      m.solved += ep.stats.solved ? 1 : 0;
      m.samples += ep.samples.size();
      for (auto& s : ep.samples)
        buffer.push(std::move(s));
    }
    if (!buffer.empty()) {
      const auto curve = train_iteration(result.params, buffer, plan, rng());
      m.mean_loss = curve.back();
    }
    if (log) {
      nlohmann::json line{{"iteration", m.iteration}, {"episodes", m.episodes},
                          {"samples", m.samples},     {"buffer", buffer.size()},
                          {"mean_loss", m.mean_loss}, {"f_calls", m.f_calls},
                          {"solved", m.solved}};
      *log << line.dump() << std::endl;
    }
    result.iterations.push_back(m);
  }
  return result;
}

} // namespace xot
