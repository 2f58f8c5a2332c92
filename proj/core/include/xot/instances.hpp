#pragma once

#include "xot/problem.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace xot {

struct Instance {
  Task task = Task::game24;
  std::string id;
  ProblemState state;
  std::string split; // "train" or "test"
  int rank = 0;      // Game24 difficulty rank (1 = easiest); 0 elsewhere
};

/// Seeded random instances for Puzzle8 (non-backtracking random walks of 1..9 moves) and
/// Cube (5 moves from the 27-move scramble set), filtered to 1 <= distance <=
/// horizon and deduplicated. A seeded random subset of 300/419 (1000/1183) is
/// marked train. Game24 is ingested from a file instead (ContractError).
std::vector<Instance> generate_instances(Task task, std::size_t count, std::uint64_t seed);

/// All 4-number multisets over 1..13 that can make 24, ordered from easiest to
/// hardest by a search-based proxy: more solving paths means easier.
std::vector<std::array<int, 4>> game24_ranked_problems();

/// Number of distinct action sequences (over the 36-entry enumeration) that reach 24.
int game24_solution_paths(const Game24State& state);

/// One JSON object per line: {"task", "id", "state", "split", "rank"}.
void write_instances(const std::filesystem::path& path, std::span<const Instance> instances);
std::vector<Instance> read_instances(const std::filesystem::path& path);

std::vector<Instance> select_split(std::span<const Instance> instances, std::string_view split);

} // namespace xot
