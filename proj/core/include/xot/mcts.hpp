#pragma once

#include "xot/net.hpp"
#include "xot/problem.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace xot {

/// Source of (prior, value) estimates for non-terminal states.
class Evaluator {
public:
  virtual ~Evaluator() = default;
  virtual Prediction evaluate(const ProblemState& state) = 0;
};

/// f_theta wrapper.
class NetEvaluator final : public Evaluator {
public:
  explicit NetEvaluator(const NetParams& params) : params_(params) {}
  Prediction evaluate(const ProblemState& state) override;

private:
  const NetParams& params_;
};

/// Uniform prior over legal actions and a constant value (0 matches an all-zero network).
class UniformEvaluator final : public Evaluator {
public:
  explicit UniformEvaluator(double value = 0.0) : value_(value) {}
  Prediction evaluate(const ProblemState& state) override;

private:
  double value_;
};

struct SearchConfig {
  int simulations = 200;    // K per action taken
  double exploration = 1.0; // w
  double temperature = 1.0; // gamma, used when sampling moves
  double first_play_value = 0.0; // Q of an edge that has no visits yet
  std::uint64_t seed = 0;
  int horizon = 0;          // 0 = task default
  bool reuse_tree = true;   // keep the chosen child's subtree between moves
  bool dirichlet = false;   // root noise, off by default
  double dirichlet_alpha = 0.3;
  double dirichlet_fraction = 0.25;
  std::ostream* trace = nullptr; // JSON lines per simulation when set
};

/// Below this the visit policy is the argmax one-hot.
inline constexpr double kMinTemperature = 1e-2;

struct Edge {
  int action = 0;
  double prior = 0.0;
  int visits = 0;
  double total = 0.0;
  int child = -1;
  double q() const { return visits > 0 ? total / visits : 0.0; }
};

struct SearchNode {
  ProblemState state;
  int steps = 0; // actions taken since the episode start
  bool terminal = false;
  bool expanded = false;
  double value = 0.0; // v_theta, or the normalized reward when terminal
  std::vector<Edge> edges;
  int visit_sum() const;
};

/// Node store for one search. Node 0 is the root.
class SearchTree {
public:
  SearchTree(ProblemState root, int root_steps, int horizon);

  SearchNode& node(int id) { return nodes_.at(static_cast<std::size_t>(id)); }
  const SearchNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  SearchNode& root() { return node(root_); }
  const SearchNode& root() const { return node(root_); }
  int root_id() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  int horizon() const { return horizon_; }

  /// argmax_a Q + w * P * sqrt(N(s) / (1 + N(s,a))), N(s) = sum_a N(s,a) + 1.
  /// Returns the edge index; ties go to the lowest action id.
  int select(int node_id, double w, double unvisited_q = 0.0) const;

  /// Terminal nodes yield their reward without calling `eval`; otherwise one
  /// evaluation stores priors and value. Returns the leaf value.
  double expand_evaluate(int node_id, Evaluator& eval, std::size_t& calls);

  /// path: (node, edge index) pairs from root to leaf.
  void backpropagate(const std::vector<std::pair<int, int>>& path, double value);

  /// K select/expand/backpropagate cycles from the current root (or from node
  /// `from`). A fresh start node spends the first cycle on its own evaluation,
  /// so its edges gain K - 1 visits.
  void run_simulations(Evaluator& eval, const SearchConfig& config, std::mt19937_64& rng,
                       std::size_t& calls, int from = -1);

  /// Visit counts of a node over the task's action enumeration.
  std::vector<int> visits(int node_id) const;

  /// Child node for edge `edge_index` of `node_id`, creating it on demand.
  int child(int node_id, int edge_index);

  /// Makes the child reached by `action` the new root (subtree is kept).
  void advance(int action);

  /// Visit counts of the root over the task's action enumeration.
  std::vector<int> root_visits() const;

private:
  void add_dirichlet(std::mt19937_64& rng, const SearchConfig& config);

  std::vector<SearchNode> nodes_;
  int root_ = 0;
  int horizon_ = 0;
  bool noised_root_ = false;
};

/// Normalized N^(1/gamma) over the enumeration; argmax one-hot (lowest index on
/// ties) when gamma <= kMinTemperature. ContractError when all counts are zero.
std::vector<double> visit_policy(const std::vector<int>& visits, double gamma);

enum class MoveSelect { argmax, sample };

struct Step {
  ProblemState before;
  int action = 0;
  ProblemState after;
};

struct RootRecord {
  ProblemState state;
  int steps = 0;
  std::vector<int> visits;
};

struct ActResult {
  std::vector<Step> steps;
  std::vector<RootRecord> roots; // one per decision
  std::size_t f_calls = 0;
  ProblemState final_state;
  int final_steps = 0;
};

/// Searches, picks a move, applies it, until terminal. `step_offset` counts
/// moves already made before `start` (the horizon applies to the total).
/// `avoid_first` (if >= 0) is not chosen at the first decision unless it is
/// the only legal action.
ActResult act_sequence(const ProblemState& start, Evaluator& eval, const SearchConfig& config,
                       MoveSelect select, int step_offset = 0, int avoid_first = -1);

int resolved_horizon(const SearchConfig& config, Task task);

} // namespace xot
