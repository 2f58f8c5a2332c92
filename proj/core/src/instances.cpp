#include "xot/instances.hpp"

#include "xot/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <set>

namespace xot {

namespace {

std::size_t train_share(Task task, std::size_t count) {
  const double ratio = task == Task::puzzle8 ? 300.0 / 419.0 : 1000.0 / 1183.0;
  return static_cast<std::size_t>(std::lround(ratio * static_cast<double>(count)));
}

std::string id_prefix(Task task) { return std::string(to_string(task)) + "-"; }

} // namespace

std::vector<Instance> generate_instances(Task task, std::size_t count, std::uint64_t seed) {
  if (count == 0)
    throw ContractError("instance count must be positive");
  if (task == Task::game24)
    throw ContractError("Game24 instances are ingested from a CSV file, not generated");

  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  std::vector<Instance> out;
  const std::size_t max_attempts = count * 20000 + 100000;
  const int horizon = default_horizon(task);
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    ProblemState state;
    if (task == Task::puzzle8) {
      // Fixed-length walks only reach one distance parity, so the length varies.
      auto s = Puzzle8State::goal();
      std::uniform_int_distribution<int> length(1, horizon);
      const int n = length(rng);
      std::optional<Move8> last;
      for (int i = 0; i < n; ++i) {
        auto moves = legal_actions(s);
        if (last)
          std::erase(moves, opposite(*last));
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        last = moves[pick(rng)];
        s = apply(s, *last);
      }
      state = s;
    } else {
      auto s = CubeState::solved();
      std::uniform_int_distribution<int> pick(0, kScrambleMoves - 1);
      for (int i = 0; i < 5; ++i)
        s = apply_scramble(s, pick(rng));
      state = s;
    }
    const int d = goal_distance(state);
    if (d < 1 || d > horizon)
      continue;
    if (!seen.insert(state_key(state)).second)
      continue;
    Instance inst;
    inst.task = task;
    inst.id = id_prefix(task) + std::to_string(out.size());
    inst.state = std::move(state);
    out.push_back(std::move(inst));
  }
  if (out.size() < count)
    throw GenerationExhaustedError("only " + std::to_string(out.size()) + " distinct " +
                                   std::string(to_string(task)) + " instances found, " +
                                   std::to_string(count) + " requested");
  // Random membership: later draws skew long because short walks repeat.
  std::vector<std::size_t> order(out.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = train_share(task, count);
  for (std::size_t i = 0; i < order.size(); ++i)
    out[order[i]].split = i < n_train ? "train" : "test";
  return out;
}

namespace {

// Same enumeration as legal_actions, on bare values.
int count_paths(std::vector<Rational> values) {
  if (values.size() == 1)
    return values.front() == Rational(24) ? 1 : 0;
  std::sort(values.begin(), values.end());
  int total = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const Rational a = values[i];
      const Rational b = values[j];
      std::vector<Rational> rest;
      for (std::size_t k = 0; k < values.size(); ++k)
        if (k != i && k != j)
          rest.push_back(values[k]);
      std::vector<Rational> results{a + b, a - b, a * b};
      if (a != b)
        results.push_back(b - a);
      if (b != Rational(0))
        results.push_back(a / b);
      if (a != Rational(0) && a != b)
        results.push_back(b / a);
      for (const auto& r : results) {
        rest.push_back(r);
        total += count_paths(rest);
        rest.pop_back();
      }
    }
  return total;
}

} // namespace

int game24_solution_paths(const Game24State& state) { return count_paths(state.numbers()); }

std::vector<std::array<int, 4>> game24_ranked_problems() {
  struct Entry {
    std::array<int, 4> numbers;
    int paths;
  };
  std::vector<Entry> entries;
  for (int a = 1; a <= 13; ++a)
    for (int b = a; b <= 13; ++b)
      for (int c = b; c <= 13; ++c)
        for (int d = c; d <= 13; ++d) {
          const std::array<int, 4> nums{a, b, c, d};
          const auto state = Game24State::from_ints(nums);
          const int paths = game24_solution_paths(state);
          if (paths > 0)
            entries.push_back({nums, paths});
        }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.paths > y.paths; });
  std::vector<std::array<int, 4>> out;
  out.reserve(entries.size());
  for (const auto& e : entries)
    out.push_back(e.numbers);
  return out;
}

void write_instances(const std::filesystem::path& path, std::span<const Instance> instances) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  for (const auto& inst : instances) {
    nlohmann::json j{{"task", to_string(inst.task)},
                     {"id", inst.id},
                     {"state", format_state_text(inst.state)},
                     {"split", inst.split}};
    if (inst.rank > 0)
      j["rank"] = inst.rank;
    out << j.dump() << '\n';
  }
}

std::vector<Instance> read_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  std::vector<Instance> out;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const auto line_start = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Instance inst;
      inst.task = parse_task(j.at("task").get<std::string>());
      inst.id = j.at("id").get<std::string>();
      inst.state = parse_state_text(inst.task, j.at("state").get<std::string>());
      inst.split = j.value("split", "");
      inst.rank = j.value("rank", 0);
      out.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_start, path.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<Instance> select_split(std::span<const Instance> instances, std::string_view split) {
  std::vector<Instance> out;
  for (const auto& inst : instances)
    if (split.empty() || inst.split == split)
      out.push_back(inst);
  return out;
}

} // namespace xot
