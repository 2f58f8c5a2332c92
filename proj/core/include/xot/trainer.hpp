#pragma once

#include "xot/instances.hpp"
#include "xot/mcts.hpp"
#include "xot/net.hpp"

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace xot {

struct TrainPlan {
  int iterations = 3;
  int episodes_per_iteration = 10;
  int epochs = 200;
  int batch_size = 16;
  double learning_rate = 0.01;
  double momentum = 0.0;
  std::size_t buffer_capacity = 50000;
  std::uint64_t seed = 1;
  /// Per-step shaping: add each intermediate state's normalized reward to v(s).
  bool step_rewards = false;
  /// Starting output of the value head for a fresh network, in (-1, 1).
  double initial_value = 0.0;
  SearchConfig search;
};

/// Per-task training plan (self-play budget, temperature, exploration, value init).
TrainPlan default_plan(Task task);

/// Most recent samples, oldest dropped first once capacity is reached.
class ReplayBuffer {
public:
  explicit ReplayBuffer(std::size_t capacity = 50000);
  void push(TrainSample sample);
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<TrainSample>& samples() const { return samples_; }

private:
  std::size_t capacity_;
  std::deque<TrainSample> samples_;
};

struct EpisodeStats {
  std::size_t f_calls = 0;
  int steps = 0;
  bool solved = false;
  double final_reward = 0.0; // normalized
};

struct Episode {
  std::vector<TrainSample> samples;
  EpisodeStats stats;
};

/// One self-play game: moves sampled from the visit policy at the search
/// temperature, targets eps(s) = visit_policy(N, 1) and v(s) = the return from s.
Episode self_play_episode(const ProblemState& problem, const NetParams& params,
                          const SearchConfig& config, bool step_rewards = false);

/// Seeded shuffle and `epochs` passes of minibatch SGD over the buffer.
/// Returns the mean loss of each epoch.
std::vector<double> train_iteration(NetParams& params, const ReplayBuffer& buffer,
                                    const TrainPlan& plan, std::uint64_t seed);

struct IterationMetrics {
  int iteration = 0;
  int episodes = 0;
  std::size_t samples = 0;
  double mean_loss = 0.0;
  std::size_t f_calls = 0;
  int solved = 0;
};

struct TrainingResult {
  NetParams params;
  std::vector<IterationMetrics> iterations;
};

/// Plays plan.episodes_per_iteration self-play episodes per iteration on
/// training problems drawn without replacement, then trains on the buffer.
/// `log` receives one JSON line per iteration.
TrainingResult run_training(Task task, std::span<const Instance> train_problems,
                            const TrainPlan& plan, std::ostream* log = nullptr,
                            std::optional<NetParams> initial = std::nullopt);

} // namespace xot
