#include "xot/harness.hpp"

#include "xot/errors.hpp"
#include "xot/game24.hpp"
#include "xot/mcts.hpp"
#include "xot/prompts.hpp"
#include "xot/revision.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace xot {

namespace {

constexpr std::size_t kGame24Rows = 1362;
constexpr std::size_t kGame24Test = 137;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"')
      quoted = !quoted;
    else if (c == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else
      field += c;
  }
  out.push_back(trim(field));
  return out;
}

std::optional<int> as_int(const std::string& s) {
  if (s.empty())
    return std::nullopt;
  std::size_t used = 0;
  try {
    const int v = std::stoi(s, &used);
    if (used == s.size())
      return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::optional<std::array<int, 4>> four_numbers(const std::string& s) {
  std::istringstream in(s);
  std::array<int, 4> out{};
  for (auto& v : out)
    if (!(in >> v))
      return std::nullopt;
  std::string rest;
  if (in >> rest)
    return std::nullopt;
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct Row {
  int rank = 0;
  std::array<int, 4> numbers{};
};

} // namespace

void write_game24_csv(const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out)
    throw Error("cannot write " + csv.string());
  out << "rank,puzzle\n";
  int rank = 0;
  for (const auto& p : game24_ranked_problems())
    out << ++rank << ',' << p[0] << ' ' << p[1] << ' ' << p[2] << ' ' << p[3] << '\n';
}

std::vector<Instance> ingest_game24(const std::filesystem::path& csv, std::uint64_t seed,
                                    std::vector<std::string>* warnings) {
  std::ifstream in(csv);
  if (!in)
    throw Error("cannot read " + csv.string());
  auto warn = [&](const std::string& w) {
    if (warnings)
      warnings->push_back(w);
  };

  std::vector<Row> rows;
  std::optional<std::size_t> rank_col, puzzle_col;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    const auto fields = split_csv(line);
    const bool header = rows.empty() && !rank_col && !puzzle_col &&
                        std::any_of(line.begin(), line.end(),
                                    [](unsigned char c) { return std::isalpha(c); });
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = lower(fields[i]);
        if (name.rfind("rank", 0) == 0)
          rank_col = i;
        else if (name.rfind("puzzle", 0) == 0)
          puzzle_col = i;
      }
      continue;
    }
    Row row;
    row.rank = static_cast<int>(rows.size()) + 1;
    std::optional<std::array<int, 4>> nums;
    if (puzzle_col && *puzzle_col < fields.size()) {
      nums = four_numbers(fields[*puzzle_col]);
      if (rank_col && *rank_col < fields.size())
        row.rank = as_int(fields[*rank_col]).value_or(row.rank);
    } else if (fields.size() == 4) {
      std::array<int, 4> v{};
      bool ok = true;
      for (std::size_t i = 0; i < 4; ++i) {
        const auto x = as_int(fields[i]);
        ok = ok && x.has_value();
        v[i] = x.value_or(0);
      }
      if (ok)
        nums = v;
    } else if (fields.size() >= 2) {
      nums = four_numbers(fields[1]);
      row.rank = as_int(fields[0]).value_or(row.rank);
    } else if (fields.size() == 1) {
      nums = four_numbers(fields[0]);
    }
    if (!nums) {
      warn("line " + std::to_string(lineno) + ": no four-number puzzle, skipped");
      continue;
    }
    row.numbers = *nums;
    if (std::any_of(row.numbers.begin(), row.numbers.end(), [](int v) { return v <= 0; })) {
      warn("line " + std::to_string(lineno) + ": numbers must be positive, skipped");
      continue;
    }
    std::vector<Rational> r(row.numbers.begin(), row.numbers.end());
    if (!solvable_24(r).solvable) {
      warn("line " + std::to_string(lineno) + ": " + fields.front() + " is not solvable, excluded");
      continue;
    }
    rows.push_back(row);
  }
  if (rows.size() != kGame24Rows)
    warn("expected " + std::to_string(kGame24Rows) + " rows, read " + std::to_string(rows.size()));
  if (rows.empty())
    throw Error("no usable rows in " + csv.string());

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
  const std::size_t n = rows.size();
  const auto test_total =
      static_cast<std::size_t>(std::lround(static_cast<double>(n) * kGame24Test / kGame24Rows));

  // Quartiles of the rank order; each contributes in proportion to its size.
  std::array<std::vector<std::size_t>, 4> quart;
  for (std::size_t i = 0; i < n; ++i)
    quart[i * 4 / n].push_back(i);
  std::array<std::size_t, 4> share{};
  std::array<double, 4> remainder{};
  std::size_t assigned = 0;
  for (std::size_t q = 0; q < 4; ++q) {
    const double exact = static_cast<double>(test_total) * quart[q].size() / n;
    share[q] = static_cast<std::size_t>(exact);
    remainder[q] = exact - share[q];
    assigned += share[q];
  }
  while (assigned < test_total) {
    const auto q = static_cast<std::size_t>(std::max_element(remainder.begin(), remainder.end()) -
                                            remainder.begin());
    ++share[q];
    remainder[q] = -1;
    ++assigned;
  }
  std::vector<bool> is_test(n, false);
  std::mt19937_64 rng(seed);
  for (std::size_t q = 0; q < 4; ++q) {
    auto members = quart[q];
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t k = 0; k < share[q] && k < members.size(); ++k)
      is_test[members[k]] = true;
  }

  std::vector<Instance> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Instance inst;
    inst.task = Task::game24;
    inst.id = "game24-" + std::to_string(rows[i].rank);
    inst.state = Game24State::from_ints(rows[i].numbers);
    inst.split = is_test[i] ? "test" : "train";
    inst.rank = rows[i].rank;
    out.push_back(std::move(inst));
  }
  return out;
}

std::string_view to_string(EvalMode mode) {
  switch (mode) {
  case EvalMode::mcts_only:
    return "mcts-only";
  case EvalMode::xot_oracle:
    return "xot-oracle";
  case EvalMode::xot_llm:
    return "xot-llm";
  }
  return "";
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "mcts-only")
    return EvalMode::mcts_only;
  if (name == "xot-oracle")
    return EvalMode::xot_oracle;
  if (name == "xot-llm")
    return EvalMode::xot_llm;
  throw ContractError("unknown mode '" + std::string(name) + "'");
}

namespace {

std::string moves_text(const ThoughtTrajectory& t) {
  std::string out;
  for (const auto& s : t.steps) {
    if (!out.empty())
      out += t.task == Task::game24 ? "; " : " ";
    out += action_text(s.before, s.action);
  }
  return out;
}

SearchConfig search_config(const RunConfig& config, std::uint64_t seed) {
  SearchConfig s;
  s.simulations = config.resolved_simulations();
  s.exploration = config.resolved_exploration();
  s.seed = seed;
  return s;
}

} // namespace

ProblemOutcome solve_problem(const Instance& instance, const RunConfig& config,
                             const NetParams& params, std::uint64_t seed, LlmClient* llm) {
  if (instance.task != config.task)
    throw TaskMismatchError("instance " + instance.id + " is not a " + std::string(to_string(config.task)) +
                            " problem");
  if (config.mode == EvalMode::xot_llm && !llm)
    throw ContractError("xot-llm mode needs an LLM client");

  ProblemOutcome out;
  out.record.id = instance.id;
  NetEvaluator eval(params);
  const auto search = search_config(config, seed);

  ThoughtSet set;
  if (config.multi) {
    set = extract_multi(instance.state, eval, search, config.resolved_multi_samples(), config.max_solutions);
  } else {
    const auto run = act_sequence(instance.state, eval, search, MoveSelect::argmax);
    set.trajectories.push_back(extract_single(run, instance.state));
    set.counts.push_back(1);
    set.samples = 1;
    set.f_calls = run.f_calls;
  }
  out.record.f_calls = set.f_calls;

  const std::size_t llm_before = llm ? llm->invocations() : 0;
  try {
    if (config.revision_rounds > 0 && config.mode != EvalMode::mcts_only) {
      RevisionConfig rc;
      rc.max_rounds = config.revision_rounds;
      rc.simulations = config.resolved_revision_simulations();
      rc.search = search;
      rc.search.exploration = config.resolved_revision_exploration();
      OracleCritic oracle;
      std::optional<LlmCritic> llm_critic;
      Critic* critic = &oracle;
      if (config.mode == EvalMode::xot_llm)
        critic = &llm_critic.emplace(*llm);
      const auto revised = revise_loop(set, *critic, eval, rc);
      set = revised.set;
      out.record.f_calls += revised.counters.f_calls;
      out.record.revision_rounds = static_cast<int>(revised.counters.critic_calls);
      out.record.erroneous_reviews = revised.counters.erroneous_reviews;
      out.record.repaired = revised.counters.repaired;
    }
    if (config.truncate_last_step)
      for (auto& t : set.trajectories)
        t.complete = false;
    out.prompt = set.trajectories.size() == 1 ? render_prompt(set.trajectories.front())
                                              : render_prompt(set);

    if (config.mode != EvalMode::xot_llm) {
      for (const auto& t : set.trajectories) {
        out.record.solved.push_back(is_solved(t));
        out.record.moves.push_back(moves_text(t));
      }
    } else {
      auto request = build_solve_prompt(config.task, out.prompt);
      request.model = config.llm_model;
      const auto reply = llm->complete(request);
      out.llm_answers = answer_payloads(config.task, reply);
      if (out.llm_answers.empty())
        out.record.error = "reply has no answer marker";
      const std::size_t cap = config.multi ? static_cast<std::size_t>(config.max_solutions) : 1;
      // Without multi the last answer counts, as the solve prompt asks for one.
      if (!config.multi && out.llm_answers.size() > 1)
        out.llm_answers.erase(out.llm_answers.begin(), out.llm_answers.end() - 1);
      std::vector<std::string> seen;
      for (const auto& answer : out.llm_answers) {
        if (seen.size() >= cap)
          break;
        if (std::find(seen.begin(), seen.end(), answer) != seen.end())
          continue;
        seen.push_back(answer);
        bool solved = false;
        try {
          solved = is_solved(parse_trajectory(answer, config.task, instance.state));
        } catch (const Error&) {
          solved = false;
        }
        out.record.solved.push_back(solved);
        out.record.moves.push_back(answer);
      }
    }
  } catch (const TransportError& e) {
    out.record.error = std::string("transport: ") + e.what();
  } catch (const ProtocolError& e) {
    out.record.error = std::string("protocol: ") + e.what();
  }
  if (llm)
    out.record.llm_calls = llm->invocations() - llm_before;
  out.thoughts = std::move(set);
  return out;
}

EvalReport evaluate(const RunConfig& config, std::span<const Instance> problems,
                    const NetParams& params, std::uint64_t seed, LlmClient* llm) {
  if (params.task != config.task)
    throw TaskMismatchError("checkpoint is for " + std::string(to_string(params.task)));
  EvalReport report;
  report.task = config.task;
  report.mode = config.mode;
  report.multi = config.multi;
  report.seed = seed;
  report.config = to_settings(config);
  report.config["seed"] = std::to_string(seed);

  const std::size_t n = config.limit ? std::min(config.limit, problems.size()) : problems.size();
  report.records.resize(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto problem_seed = seed * 1000003ULL + i;
        report.records[i] = solve_problem(problems[i], config, params, problem_seed, llm).record;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  // With an LLM in the loop the per-problem call count is only exact when
  // problems run one at a time.
  const int threads = llm ? 1 : std::max(1, config.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  report.aggregates = aggregate(report.records);
  return report;
}

EvalReport evaluate(const RunConfig& config, std::uint64_t seed, LlmClient* llm) {
  if (config.data.empty())
    throw ContractError("no dataset configured (data = path)");
  if (config.checkpoint.empty())
    throw ContractError("no checkpoint configured (checkpoint = path)");
  if (!std::filesystem::exists(config.checkpoint))
    throw Error("checkpoint not found: " + config.checkpoint);
  const auto all = read_instances(config.data);
  auto problems = select_split(all, config.split);
  for (const auto& p : problems)
    if (p.task != config.task)
      throw TaskMismatchError("dataset " + config.data + " holds " + std::string(to_string(p.task)) +
                              " problems");
  const auto params = load_checkpoint(config.checkpoint, config.task);
  return evaluate(config, problems, params, seed, llm);
}

} // namespace xot
