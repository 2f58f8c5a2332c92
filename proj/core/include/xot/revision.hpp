#pragma once

#include "xot/mcts.hpp"
#include "xot/thoughts.hpp"

#include <iosfwd>
#include <string>

namespace xot {

enum class Verdict { valid, wrong_step, all_wrong, unparseable };

std::string_view to_string(Verdict verdict);

struct Critique {
  Verdict verdict = Verdict::valid;
  int step = 0; // 1-based, set for wrong_step
  std::string rationale;
};

/// Reviews one rendered thought.
class Critic {
public:
  virtual ~Critic() = default;
  virtual Critique review(const ThoughtTrajectory& trajectory, const std::string& rendered) = 0;
};

/// Environment-grounded judgment, no LLM involved. A trajectory of length L is
/// wrong at the first step after which its goal is out of reach: Game24 loses
/// solvability, Puzzle8/Cube leave more distance than the L - i moves that
/// remain. A violation at step 1 is reported as all_wrong.
Critique oracle_critic(const ThoughtTrajectory& trajectory);

class OracleCritic final : public Critic {
public:
  Critique review(const ThoughtTrajectory& trajectory, const std::string&) override {
    return oracle_critic(trajectory);
  }
};

class AlwaysValidCritic final : public Critic {
public:
  Critique review(const ThoughtTrajectory&, const std::string&) override { return {}; }
};

struct RevisionConfig {
  int max_rounds = 1;       // r
  int simulations = 500;    // L, per move of the re-search
  SearchConfig search;      // other search settings for the re-search
  std::ostream* log = nullptr; // JSON line per review
};

/// Per-task L: 500 (Game24), 50 (Puzzle8), 500 (Cube).
int default_revision_simulations(Task task);

/// Keeps the steps before the reported one and searches again from there.
/// Valid or unparseable critiques return the input unchanged.
ThoughtTrajectory revise_once(const ThoughtTrajectory& trajectory, const Critique& critique,
                              Evaluator& eval, const SearchConfig& config,
                              std::size_t* f_calls = nullptr);

struct RevisionCounters {
  std::size_t critic_calls = 0;
  std::size_t f_calls = 0;
  std::size_t revisions = 0;
  std::size_t critic_failures = 0;
  std::size_t erroneous_reviews = 0; // reviews of a trajectory that does not solve the problem
  std::size_t repaired = 0;          // of those, revisions that ended in a solution
};

struct RevisionResult {
  ThoughtSet set;
  RevisionCounters counters;
};

/// Up to max_rounds reviews per trajectory, revising after each reported error.
/// A critic that throws leaves the trajectory as it is.
RevisionResult revise_loop(const ThoughtSet& initial, Critic& critic, Evaluator& eval,
                           const RevisionConfig& config);

} // namespace xot
