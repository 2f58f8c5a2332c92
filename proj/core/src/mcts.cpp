#include "xot/mcts.hpp"

#include "xot/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <ostream>

namespace xot {

Prediction NetEvaluator::evaluate(const ProblemState& state) {
  const auto enc = encode_state(state);
  return forward(params_, enc.features, enc.mask);
}

Prediction UniformEvaluator::evaluate(const ProblemState& state) {
  const auto ids = legal_action_ids(state);
  Prediction p;
  p.policy = Eigen::VectorXd::Zero(action_space_size(task_of(state)));
  for (int id : ids)
    p.policy[id] = 1.0 / static_cast<double>(ids.size());
  p.value = value_;
  return p;
}

int SearchNode::visit_sum() const {
  int n = 0;
  for (const auto& e : edges)
    n += e.visits;
  return n;
}

int resolved_horizon(const SearchConfig& config, Task task) {
  return config.horizon > 0 ? config.horizon : default_horizon(task);
}

SearchTree::SearchTree(ProblemState root, int root_steps, int horizon) : horizon_(horizon) {
  SearchNode n;
  n.terminal = is_terminal(root, root_steps, horizon);
  n.steps = root_steps;
  n.state = std::move(root);
  nodes_.push_back(std::move(n));
}

int SearchTree::select(int node_id, double w, double unvisited_q) const {
  const auto& n = node(node_id);
  if (!n.expanded || n.terminal)
    throw ContractError("puct selection on an unexpanded or terminal node");
  const double parent_visits = static_cast<double>(n.visit_sum() + 1);
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n.edges.size(); ++i) {
    const auto& e = n.edges[i];
    const double q = e.visits > 0 ? e.q() : unvisited_q;
    const double score =
        q + w * e.prior * std::sqrt(parent_visits / (1.0 + static_cast<double>(e.visits)));
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double SearchTree::expand_evaluate(int node_id, Evaluator& eval, std::size_t& calls) {
  auto& n = node(node_id);
  if (n.terminal) {
    n.expanded = true;
    n.value = normalized_reward(n.state, n.steps, horizon_);
    return n.value;
  }
  if (n.expanded)
    throw ContractError("node expanded twice");
  const auto pred = eval.evaluate(n.state);
  ++calls;
  auto& m = node(node_id);
  m.value = pred.value;
  for (int id : legal_action_ids(m.state)) {
    Edge e;
    e.action = id;
    e.prior = pred.policy[id];
    m.edges.push_back(e);
  }
  m.expanded = true;
  return m.value;
}

void SearchTree::backpropagate(const std::vector<std::pair<int, int>>& path, double value) {
  for (const auto& [node_id, edge] : path) {
    auto& e = node(node_id).edges.at(static_cast<std::size_t>(edge));
    e.visits += 1;
    e.total += value;
  }
}

int SearchTree::child(int node_id, int edge_index) {
  const auto ei = static_cast<std::size_t>(edge_index);
  if (node(node_id).edges.at(ei).child >= 0)
    return node(node_id).edges[ei].child;
  const auto& parent = node(node_id);
  SearchNode c;
  c.state = apply_action(parent.state, parent.edges[ei].action);
  c.steps = parent.steps + 1;
  c.terminal = is_terminal(c.state, c.steps, horizon_);
  nodes_.push_back(std::move(c));
  const int id = static_cast<int>(nodes_.size() - 1);
  node(node_id).edges[ei].child = id;
  return id;
}

void SearchTree::add_dirichlet(std::mt19937_64& rng, const SearchConfig& config) {
  auto& r = root();
  if (r.edges.empty())
    return;
  std::gamma_distribution<double> gamma(config.dirichlet_alpha, 1.0);
  std::vector<double> noise(r.edges.size());
  double total = 0.0;
  for (auto& x : noise) {
    x = gamma(rng);
    total += x;
  }
  for (std::size_t i = 0; i < r.edges.size(); ++i)
    r.edges[i].prior = (1.0 - config.dirichlet_fraction) * r.edges[i].prior +
                       config.dirichlet_fraction * noise[i] / total;
}

void SearchTree::run_simulations(Evaluator& eval, const SearchConfig& config,
                                 std::mt19937_64& rng, std::size_t& calls, int from) {
  const int start = from < 0 ? root_ : from;
  if (config.simulations < 1)
    throw ContractError("simulation count must be at least 1");
  for (int sim = 0; sim < config.simulations; ++sim) {
    std::vector<std::pair<int, int>> path;
    int current = start;
    while (node(current).expanded && !node(current).terminal) {
      if (current == root_ && config.dirichlet && !noised_root_) {
        add_dirichlet(rng, config);
        noised_root_ = true;
      }
      const int edge = select(current, config.exploration, config.first_play_value);
      path.emplace_back(current, edge);
      current = child(current, edge);
    }
    double value;
    if (node(current).expanded)
      value = node(current).value; // terminal, already scored
    else
      value = expand_evaluate(current, eval, calls);
    backpropagate(path, value);
    if (config.trace) {
      nlohmann::json line{{"simulation", sim}, {"leaf_value", value}};
      auto& actions = line["path"] = nlohmann::json::array();
      for (const auto& [n, e] : path)
        actions.push_back(node(n).edges[static_cast<std::size_t>(e)].action);
      *config.trace << line.dump() << '\n';
    }
  }
}

void SearchTree::advance(int action) {
  auto& r = root();
  for (std::size_t i = 0; i < r.edges.size(); ++i)
    if (r.edges[i].action == action) {
      root_ = child(root_, static_cast<int>(i));
      noised_root_ = false;
      return;
    }
  throw IllegalMoveError("action " + std::to_string(action) + " is not legal at the root");
}

std::vector<int> SearchTree::visits(int node_id) const {
  const auto& n = node(node_id);
  std::vector<int> out(static_cast<std::size_t>(action_space_size(task_of(n.state))), 0);
  for (const auto& e : n.edges)
    out[static_cast<std::size_t>(e.action)] = e.visits;
  return out;
}

std::vector<int> SearchTree::root_visits() const { return visits(root_); }

std::vector<double> visit_policy(const std::vector<int>& visits, double gamma) {
  std::vector<double> p(visits.size(), 0.0);
  int best = -1;
  int total = 0;
  for (std::size_t i = 0; i < visits.size(); ++i) {
    total += visits[i];
    if (visits[i] > 0 && (best < 0 || visits[i] > visits[static_cast<std::size_t>(best)]))
      best = static_cast<int>(i);
  }
  if (total <= 0)
    throw ContractError("visit policy requested for a node with no visits");
  if (gamma <= kMinTemperature) {
    p[static_cast<std::size_t>(best)] = 1.0;
    return p;
  }
  // Scale by the largest count before exponentiating to stay finite for small gamma.
  const double top = visits[static_cast<std::size_t>(best)];
  double sum = 0.0;
  for (std::size_t i = 0; i < visits.size(); ++i) {
    if (visits[i] > 0)
      p[i] = std::pow(visits[i] / top, 1.0 / gamma);
    sum += p[i];
  }
  for (auto& x : p)
    x /= sum;
  return p;
}

ActResult act_sequence(const ProblemState& start, Evaluator& eval, const SearchConfig& config,
                       MoveSelect select, int step_offset, int avoid_first) {
  const int horizon = resolved_horizon(config, task_of(start));
  std::mt19937_64 rng(config.seed);
  ActResult result;
  ProblemState state = start;
  int steps = step_offset;
  SearchTree tree(state, steps, horizon);
  while (!is_terminal(state, steps, horizon)) {
    if (!config.reuse_tree)
      tree = SearchTree(state, steps, horizon);
    tree.run_simulations(eval, config, rng, result.f_calls);
    auto visits = tree.root_visits();
    if (tree.root().visit_sum() == 0) {
      // K = 1 on a fresh root: fall back to the prior.
      for (const auto& e : tree.root().edges)
        visits[static_cast<std::size_t>(e.action)] =
            static_cast<int>(std::lround(e.prior * 1e6)) + 1;
    }
    if (avoid_first >= 0 && result.steps.empty() && tree.root().edges.size() > 1) {
      visits[static_cast<std::size_t>(avoid_first)] = 0;
      if (std::all_of(visits.begin(), visits.end(), [](int v) { return v == 0; })) {
        // Only the avoided move was searched: take the best remaining prior.
        const Edge* best = nullptr;
        for (const auto& e : tree.root().edges)
          if (e.action != avoid_first && (!best || e.prior > best->prior))
            best = &e;
        visits[static_cast<std::size_t>(best->action)] = 1;
      }
    }
    int action;
    if (select == MoveSelect::argmax) {
      const auto p = visit_policy(visits, 0.0);
      action = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    } else {
      const auto p = visit_policy(visits, config.temperature);
      std::discrete_distribution<int> pick(p.begin(), p.end());
      action = pick(rng);
    }
    result.roots.push_back({state, steps, tree.root_visits()});
    ProblemState next = apply_action(state, action);
    result.steps.push_back({state, action, next});
    tree.advance(action);
    state = std::move(next);
    ++steps;
  }
  result.final_state = state;
  result.final_steps = steps;
  return result;
}

} // namespace xot
