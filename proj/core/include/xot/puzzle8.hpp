#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xot {

/// Direction the blank ("0") moves. Enumeration order is the order used when
/// listing valid moves: Left, Right, Up, Down.
enum class Move8 : std::uint8_t { left, right, up, down };

inline constexpr int kPuzzle8Moves = 4;

struct Puzzle8State {
  std::array<std::uint8_t, 9> tiles{}; // row-major, 0 = blank

  static Puzzle8State goal();
  int blank() const;
  friend bool operator==(const Puzzle8State&, const Puzzle8State&) = default;
};

std::string_view move_name(Move8 move);
Move8 parse_move8(std::string_view name);
Move8 opposite(Move8 move);

/// Throws ContractError unless tiles are a permutation of 0..8 with goal parity.
void validate(const Puzzle8State& state);
bool is_legal(const Puzzle8State& state, Move8 move);
std::vector<Move8> legal_actions(const Puzzle8State& state);
Puzzle8State apply(const Puzzle8State& state, Move8 move);
bool is_goal(const Puzzle8State& state);

/// "0 1 2\n3 4 5\n6 7 8".
std::string format_state_text(const Puzzle8State& state);
Puzzle8State parse_puzzle8_text(std::string_view text);

/// Lehmer rank in [0, 9!).
std::uint32_t permutation_rank(const Puzzle8State& state);

/// Exact minimum number of moves to the goal; throws UnsolvableError for
/// states outside the goal's parity class.
int goal_distance(const Puzzle8State& state);

} // namespace xot
