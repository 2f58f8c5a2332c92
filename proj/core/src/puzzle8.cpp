#include "xot/puzzle8.hpp"

#include "xot/distance_table.hpp"
#include "xot/errors.hpp"

#include <algorithm>
#include <cctype>

namespace xot {

Puzzle8State Puzzle8State::goal() {
  Puzzle8State s;
  for (std::uint8_t i = 0; i < 9; ++i)
    s.tiles[i] = i;
  return s;
}

int Puzzle8State::blank() const {
  return static_cast<int>(std::find(tiles.begin(), tiles.end(), 0) - tiles.begin());
}

std::string_view move_name(Move8 move) {
  switch (move) {
  case Move8::left:
    return "Left";
  case Move8::right:
    return "Right";
  case Move8::up:
    return "Up";
  case Move8::down:
    return "Down";
  }
  return "?";
}

Move8 parse_move8(std::string_view name) {
  for (int i = 0; i < kPuzzle8Moves; ++i) {
    const auto move = static_cast<Move8>(i);
    if (move_name(move) == name)
      return move;
  }
  throw ParseError(0, "unknown 8-puzzle move '" + std::string(name) + "'");
}

Move8 opposite(Move8 move) {
  switch (move) {
  case Move8::left:
    return Move8::right;
  case Move8::right:
    return Move8::left;
  case Move8::up:
    return Move8::down;
  case Move8::down:
    return Move8::up;
  }
  return move;
}

namespace {

int inversions(const Puzzle8State& s) {
  int count = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      if (s.tiles[i] != 0 && s.tiles[j] != 0 && s.tiles[i] > s.tiles[j])
        ++count;
  return count;
}

int target_cell(int blank, Move8 move) {
  const int row = blank / 3;
  const int col = blank % 3;
  switch (move) {
  case Move8::left:
    return col > 0 ? blank - 1 : -1;
  case Move8::right:
    return col < 2 ? blank + 1 : -1;
  case Move8::up:
    return row > 0 ? blank - 3 : -1;
  case Move8::down:
    return row < 2 ? blank + 3 : -1;
  }
  return -1;
}

} // namespace

void validate(const Puzzle8State& state) {
  std::array<int, 9> seen{};
  for (auto t : state.tiles) {
    if (t > 8)
      throw ContractError("8-puzzle tile out of range: " + std::to_string(t));
    if (seen[t]++)
      throw ContractError("8-puzzle tile repeated: " + std::to_string(t));
  }
  // On a 3-wide board every move preserves inversion parity; the goal has none.
  if (inversions(state) % 2 != 0)
    throw UnsolvableError("8-puzzle state has odd parity: " + format_state_text(state));
}

bool is_legal(const Puzzle8State& state, Move8 move) {
  return target_cell(state.blank(), move) >= 0;
}

std::vector<Move8> legal_actions(const Puzzle8State& state) {
  std::vector<Move8> out;
  for (int i = 0; i < kPuzzle8Moves; ++i)
    if (is_legal(state, static_cast<Move8>(i)))
      out.push_back(static_cast<Move8>(i));
  return out;
}

Puzzle8State apply(const Puzzle8State& state, Move8 move) {
  const int blank = state.blank();
  const int target = target_cell(blank, move);
  if (target < 0)
    throw IllegalMoveError("illegal 8-puzzle move '" + std::string(move_name(move)) +
                           "' with blank at cell " + std::to_string(blank + 1));
  Puzzle8State next = state;
  std::swap(next.tiles[static_cast<std::size_t>(blank)], next.tiles[static_cast<std::size_t>(target)]);
  return next;
}

bool is_goal(const Puzzle8State& state) { return state == Puzzle8State::goal(); }

std::string format_state_text(const Puzzle8State& state) {
  std::string out;
  for (int i = 0; i < 9; ++i) {
    out += static_cast<char>('0' + state.tiles[static_cast<std::size_t>(i)]);
    if (i == 8)
      break;
    out += (i % 3 == 2) ? '\n' : ' ';
  }
  return out;
}

Puzzle8State parse_puzzle8_text(std::string_view text) {
  Puzzle8State state;
  int count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']' ||
        c == '/')
      continue;
    if (c < '0' || c > '8')
      throw ParseError(i, std::string("unexpected character '") + c + "' in 8-puzzle state");
    if (count == 9)
      throw ParseError(i, "more than 9 tiles in 8-puzzle state");
    state.tiles[static_cast<std::size_t>(count++)] = static_cast<std::uint8_t>(c - '0');
  }
  if (count != 9)
    throw ParseError(text.size(), "expected 9 tiles, got " + std::to_string(count));
  try {
    validate(state);
  } catch (const Error& e) {
    throw ParseError(text.size(), e.what());
  }
  return state;
}

std::uint32_t permutation_rank(const Puzzle8State& state) {
  static constexpr std::array<std::uint32_t, 9> factorial{40320, 5040, 720, 120, 24, 6, 2, 1, 1};
  std::uint32_t rank = 0;
  for (int i = 0; i < 9; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < 9; ++j)
      if (state.tiles[static_cast<std::size_t>(j)] < state.tiles[static_cast<std::size_t>(i)])
        ++smaller;
    rank += smaller * factorial[static_cast<std::size_t>(i)];
  }
  return rank;
}

int goal_distance(const Puzzle8State& state) {
  validate(state);
  const auto d = puzzle8_distances().at(permutation_rank(state));
  if (d == DistanceTable::kUnreached)
    throw UnsolvableError("8-puzzle state unreachable from goal");
  return d;
}

} // namespace xot
