#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xot {

// Compare Rational only with Rational: mixed rational/int comparisons in Boost
// 1.74 recurse forever under C++20 rewritten operators.
using Rational = boost::rational<long long>;

/// "24", "-5", "3/4".
std::string format_rational(const Rational& value);
Rational parse_rational(std::string_view text);

enum class Game24Op : std::uint8_t { add, sub_ab, sub_ba, mul, div_ab, div_ba };

inline constexpr int kGame24Ops = 6;
inline constexpr int kGame24Pairs = 6;

/// Two slots of the ascending-sorted number list plus an operation variant.
/// `_ab` variants compute slot_a OP slot_b, `_ba` variants slot_b OP slot_a.
struct Game24Action {
  int slot_a = 0;
  int slot_b = 1;
  Game24Op op = Game24Op::add;

  /// Position in the fixed 36-entry enumeration: pair * 6 + op.
  int index() const;
  static Game24Action from_index(int index);
  friend bool operator==(const Game24Action&, const Game24Action&) = default;
};

/// One remaining number together with the text of how it was formed.
struct Game24Term {
  Rational value;
  std::string expr;   // fully parenthesized, e.g. "((10) - (9)) * ((12) * (2))"
  std::string answer; // minimal form used on the Answer line, e.g. "(12 * 2) * (10 - 9)"
  bool atom = true;
};

/// Remaining numbers in display order (survivors keep their order, results are
/// appended). Equality compares the numbers only; expressions and history are
/// annotations used for rendering.
struct Game24State {
  std::vector<Game24Term> terms;
  std::vector<std::string> history; // equations applied so far, e.g. "12 * 2 = 24"

  static Game24State from_numbers(std::span<const Rational> numbers);
  static Game24State from_ints(std::span<const int> numbers);

  std::vector<Rational> numbers() const;
  std::vector<Rational> sorted_numbers() const;
  std::size_t size() const { return terms.size(); }

  friend bool operator==(const Game24State& a, const Game24State& b);
};

/// Display positions ordered by (value, position); slot k of an action refers to
/// the term at `sorted_positions(state)[k]`.
std::vector<int> sorted_positions(const Game24State& state);

void validate(const Game24State& state);
std::vector<Game24Action> legal_actions(const Game24State& state);
/// Slot pairs repeating the values of an earlier pair are illegal, so distinct
/// action sequences always read as distinct equations.
bool is_legal(const Game24State& state, Game24Action action);
Game24State apply(const Game24State& state, Game24Action action);
bool is_goal(const Game24State& state);

/// Equation text of an action, e.g. "12 * 2 = 24".
std::string equation_text(const Game24State& state, Game24Action action);
std::string action_label(Game24Action action);

/// "(left: 9 10 24)".
std::string format_state_text(const Game24State& state);
/// Accepts "(left: 9 10 24)", "left: 9 10 24" or a bare "2 9 10 12".
Game24State parse_game24_text(std::string_view text);

/// Space-separated values in display order: "9 10 24".
std::string numbers_text(const Game24State& state);
/// "Expression: ..." payload: comma-separated term expressions.
std::string expressions_text(const Game24State& state);

struct Solvability {
  bool solvable = false;
  std::optional<std::string> witness;
};

/// Exhaustive exact search over operand pairings and the six operation variants.
Solvability solvable_24(std::span<const Rational> numbers);

/// Binary expression tree; leaves have `op == 0`.
struct ExpressionNode {
  char op = 0; // one of + - * / or 0 for a number
  Rational value;
  int lhs = -1;
  int rhs = -1;
};

struct Expression {
  std::vector<ExpressionNode> nodes;
  int root = -1;
};

/// Parses an arithmetic expression over + - * / and parentheses (also accepts
/// the glyphs × ÷ −). A trailing "= value" is ignored.
Expression parse_expression(std::string_view text);
/// Exact value; throws ContractError on division by zero.
Rational evaluate(const Expression& expression);
Rational evaluate_expression(std::string_view text);

/// Replays an answer expression over `initial` as a sequence of actions, one per
/// operator in post-order. Each input number must be used exactly once;
/// violations throw ValidationError naming the offending step.
std::vector<Game24Action> actions_from_expression(const Game24State& initial,
                                                  const Expression& expression);

} // namespace xot
