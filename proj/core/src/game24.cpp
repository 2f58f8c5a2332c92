#include "xot/game24.hpp"

#include "xot/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <utility>

namespace xot {

namespace {

constexpr std::array<std::pair<int, int>, kGame24Pairs> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

char op_symbol(Game24Op op) {
  switch (op) {
  case Game24Op::add:
    return '+';
  case Game24Op::sub_ab:
  case Game24Op::sub_ba:
    return '-';
  case Game24Op::mul:
    return '*';
  case Game24Op::div_ab:
  case Game24Op::div_ba:
    return '/';
  }
  return '?';
}

bool is_commutative(Game24Op op) { return op == Game24Op::add || op == Game24Op::mul; }

Rational combine(const Rational& x, char op, const Rational& y) {
  switch (op) {
  case '+':
    return x + y;
  case '-':
    return x - y;
  case '*':
    return x * y;
  case '/':
    if (y == Rational(0))
      throw ContractError("division by zero");
    return x / y;
  }
  throw ContractError(std::string("unknown operator '") + op + "'");
}

std::string wrap_answer(const Game24Term& term) {
  return term.atom ? term.answer : "(" + term.answer + ")";
}

Game24Term atom_term(const Rational& value) {
  const auto text = format_rational(value);
  return {value, text, text, true};
}

// Display positions (first, second) of the operands as written in the equation.
// Commutative operations write the later display position first.
std::pair<int, int> operand_positions(const Game24State& state, Game24Action action) {
  const auto order = sorted_positions(state);
  const int pa = order[static_cast<std::size_t>(action.slot_a)];
  const int pb = order[static_cast<std::size_t>(action.slot_b)];
  switch (action.op) {
  case Game24Op::add:
  case Game24Op::mul:
    return pa > pb ? std::pair{pa, pb} : std::pair{pb, pa};
  case Game24Op::sub_ab:
  case Game24Op::div_ab:
    return {pa, pb};
  case Game24Op::sub_ba:
  case Game24Op::div_ba:
    return {pb, pa};
  }
  return {pa, pb};
}

} // namespace

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1)
    return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty())
      throw ParseError(0, "empty number in '" + std::string(text) + "'");
    std::size_t i = 0;
    bool negative = false;
    if (part[0] == '-' || part[0] == '+') {
      negative = part[0] == '-';
      i = 1;
    }
    if (i == part.size())
      throw ParseError(0, "malformed number '" + std::string(text) + "'");
    long long v = 0;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw ParseError(i, "malformed number '" + std::string(text) + "'");
      v = v * 10 + (part[i] - '0');
    }
    return negative ? -v : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw ParseError(slash + 1, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

int Game24Action::index() const {
  for (int p = 0; p < kGame24Pairs; ++p)
    if (kPairs[static_cast<std::size_t>(p)] == std::pair{slot_a, slot_b})
      return p * kGame24Ops + static_cast<int>(op);
  throw ContractError("invalid Game24 slot pair");
}

Game24Action Game24Action::from_index(int index) {
  if (index < 0 || index >= kGame24Pairs * kGame24Ops)
    throw ContractError("Game24 action index out of range: " + std::to_string(index));
  const auto [a, b] = kPairs[static_cast<std::size_t>(index / kGame24Ops)];
  return {a, b, static_cast<Game24Op>(index % kGame24Ops)};
}

Game24State Game24State::from_numbers(std::span<const Rational> numbers) {
  Game24State state;
  for (const auto& n : numbers)
    state.terms.push_back(atom_term(n));
  validate(state);
  return state;
}

Game24State Game24State::from_ints(std::span<const int> numbers) {
  std::vector<Rational> values(numbers.begin(), numbers.end());
  return from_numbers(values);
}

std::vector<Rational> Game24State::numbers() const {
  std::vector<Rational> out;
  out.reserve(terms.size());
  for (const auto& t : terms)
    out.push_back(t.value);
  return out;
}

std::vector<Rational> Game24State::sorted_numbers() const {
  auto out = numbers();
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Game24State& a, const Game24State& b) {
  return a.numbers() == b.numbers();
}

std::vector<int> sorted_positions(const Game24State& state) {
  std::vector<int> order(state.terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return state.terms[static_cast<std::size_t>(x)].value <
           state.terms[static_cast<std::size_t>(y)].value;
  });
  return order;
}

void validate(const Game24State& state) {
  if (state.terms.empty() || state.terms.size() > 4)
    throw ContractError("Game24 state must hold 1-4 numbers, got " +
                        std::to_string(state.terms.size()));
}

bool is_legal(const Game24State& state, Game24Action action) {
  const int n = static_cast<int>(state.size());
  if (action.slot_a < 0 || action.slot_b >= n || action.slot_a >= action.slot_b)
    return false;
  const auto sorted = state.sorted_numbers();
  const auto& a = sorted[static_cast<std::size_t>(action.slot_a)];
  const auto& b = sorted[static_cast<std::size_t>(action.slot_b)];
  // Equal values in different slots give the same move; only the first pair counts.
  if (action.slot_a > 0 && sorted[static_cast<std::size_t>(action.slot_a - 1)] == a)
    return false;
  if (action.slot_b - 1 > action.slot_a && sorted[static_cast<std::size_t>(action.slot_b - 1)] == b)
    return false;
  switch (action.op) {
  case Game24Op::add:
  case Game24Op::mul:
  case Game24Op::sub_ab:
    return true;
  case Game24Op::sub_ba:
    return a != b;
  case Game24Op::div_ab:
    return b != Rational(0);
  case Game24Op::div_ba:
    return a != Rational(0) && a != b;
  }
  return false;
}

std::vector<Game24Action> legal_actions(const Game24State& state) {
  validate(state);
  std::vector<Game24Action> out;
  for (int i = 0; i < kGame24Pairs * kGame24Ops; ++i) {
    const auto action = Game24Action::from_index(i);
    if (is_legal(state, action))
      out.push_back(action);
  }
  return out;
}

std::string equation_text(const Game24State& state, Game24Action action) {
  if (!is_legal(state, action))
    throw IllegalMoveError("illegal Game24 action " + action_label(action));
  const auto [first, second] = operand_positions(state, action);
  const auto& x = state.terms[static_cast<std::size_t>(first)];
  const auto& y = state.terms[static_cast<std::size_t>(second)];
  const char op = op_symbol(action.op);
  return format_rational(x.value) + " " + op + " " + format_rational(y.value) + " = " +
         format_rational(combine(x.value, op, y.value));
}

std::string action_label(Game24Action action) {
  static constexpr std::array<const char*, kGame24Ops> names{"add",    "sub_ab", "sub_ba",
                                                             "mul",    "div_ab", "div_ba"};
  return "(" + std::to_string(action.slot_a) + "," + std::to_string(action.slot_b) + "," +
         names[static_cast<std::size_t>(action.op)] + ")";
}

Game24State apply(const Game24State& state, Game24Action action) {
  validate(state);
  if (!is_legal(state, action))
    throw IllegalMoveError("illegal Game24 action " + action_label(action) + " on " +
                           format_state_text(state));
  const auto [first, second] = operand_positions(state, action);
  const auto& x = state.terms[static_cast<std::size_t>(first)];
  const auto& y = state.terms[static_cast<std::size_t>(second)];
  const char op = op_symbol(action.op);

  Game24Term result;
  result.value = combine(x.value, op, y.value);
  result.atom = false;
  result.expr = "(" + x.expr + ") " + op + " (" + y.expr + ")";
  // The answer form writes the larger operand of a commutative operation first.
  if (is_commutative(action.op) && y.value > x.value)
    result.answer = wrap_answer(y) + " " + op + " " + wrap_answer(x);
  else
    result.answer = wrap_answer(x) + " " + op + " " + wrap_answer(y);

  Game24State next;
  for (std::size_t i = 0; i < state.terms.size(); ++i)
    if (static_cast<int>(i) != first && static_cast<int>(i) != second)
      next.terms.push_back(state.terms[i]);
  next.terms.push_back(std::move(result));
  next.history = state.history;
  next.history.push_back(format_rational(x.value) + " " + op + " " + format_rational(y.value) +
                         " = " + format_rational(next.terms.back().value));
  return next;
}

bool is_goal(const Game24State& state) {
  return state.size() == 1 && state.terms.front().value == Rational(24);
}

std::string numbers_text(const Game24State& state) {
  std::string out;
  for (const auto& t : state.terms) {
    if (!out.empty())
      out += ' ';
    out += format_rational(t.value);
  }
  return out;
}

std::string expressions_text(const Game24State& state) {
  std::string out;
  for (const auto& t : state.terms) {
    if (!out.empty())
      out += ", ";
    out += t.expr;
  }
  return out;
}

std::string format_state_text(const Game24State& state) {
  return "(left: " + numbers_text(state) + ")";
}

Game24State parse_game24_text(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  bool parenthesized = false;
  if (begin < end && text[begin] == '(') {
    if (text[end - 1] != ')')
      throw ParseError(end, "missing ')'");
    parenthesized = true;
    ++begin;
    --end;
  }
  auto body = text.substr(begin, end - begin);
  if (body.starts_with("left:")) {
    body.remove_prefix(5);
    begin += 5;
  } else if (parenthesized) {
    throw ParseError(begin, "expected 'left:'");
  }

  Game24State state;
  std::size_t i = 0;
  while (i < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])) &&
           body[j] != ',')
      ++j;
    try {
      state.terms.push_back(atom_term(parse_rational(body.substr(i, j - i))));
    } catch (const ParseError& e) {
      throw ParseError(begin + i + e.offset(), e.what());
    }
    i = j;
  }
  if (state.terms.empty() || state.terms.size() > 4)
    throw ParseError(begin, "expected 1-4 numbers, got " + std::to_string(state.terms.size()));
  return state;
}

namespace {

bool search_24(std::vector<Game24Term>& terms, std::string& witness) {
  if (terms.size() == 1) {
    if (terms.front().value == Rational(24)) {
      witness = terms.front().answer;
      return true;
    }
    return false;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      std::vector<Game24Term> rest;
      for (std::size_t k = 0; k < terms.size(); ++k)
        if (k != i && k != j)
          rest.push_back(terms[k]);
      const auto& a = terms[i];
      const auto& b = terms[j];
      const std::array<std::tuple<const Game24Term*, char, const Game24Term*>, 6> variants{{
          {&a, '+', &b},
          {&a, '-', &b},
          {&b, '-', &a},
          {&a, '*', &b},
          {&a, '/', &b},
          {&b, '/', &a},
      }};
      for (const auto& [x, op, y] : variants) {
        if (op == '/' && y->value == Rational(0))
          continue;
        Game24Term t;
        t.value = combine(x->value, op, y->value);
        t.atom = false;
        t.answer = wrap_answer(*x) + " " + op + " " + wrap_answer(*y);
        rest.push_back(t);
        if (search_24(rest, witness))
          return true;
        rest.pop_back();
      }
    }
  }
  return false;
}

class ExpressionParser {
public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression parse() {
    auto cut = text_.find('=');
    if (cut != std::string_view::npos)
      text_ = text_.substr(0, cut);
    out_.root = parse_sum();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(pos_, "unexpected trailing input");
    return std::move(out_);
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  // Returns the ASCII operator at the cursor (mapping × ÷ − glyphs), consuming it
  // when it is one of `wanted`.
  char take_operator(std::string_view wanted) {
    skip_space();
    if (pos_ >= text_.size())
      return 0;
    char op = text_[pos_];
    std::size_t width = 1;
    const auto rest = text_.substr(pos_);
    if (rest.starts_with("×")) {
      op = '*';
      width = std::string_view("×").size();
    } else if (rest.starts_with("÷")) {
      op = '/';
      width = std::string_view("÷").size();
    } else if (rest.starts_with("−")) {
      op = '-';
      width = std::string_view("−").size();
    }
    if (wanted.find(op) == std::string_view::npos)
      return 0;
    pos_ += width;
    return op;
  }

  int add_node(char op, int lhs, int rhs) {
    ExpressionNode node;
    node.op = op;
    node.lhs = lhs;
    node.rhs = rhs;
    out_.nodes.push_back(node);
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_product();
    while (char op = take_operator("+-"))
      lhs = add_node(op, lhs, parse_product());
    return lhs;
  }

  int parse_product() {
    int lhs = parse_primary();
    while (char op = take_operator("*/"))
      lhs = add_node(op, lhs, parse_primary());
    return lhs;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size())
      throw ParseError(pos_, "unexpected end of expression");
    if (text_[pos_] == '(') {
      ++pos_;
      const int inner = parse_sum();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    const std::size_t start = pos_;
    if (text_[pos_] == '-')
      ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-'))
      throw ParseError(start, "expected a number");
    ExpressionNode leaf;
    leaf.value = parse_rational(text_.substr(start, pos_ - start));
    out_.nodes.push_back(leaf);
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Expression out_;
};

Rational evaluate_node(const Expression& e, int index) {
  const auto& node = e.nodes[static_cast<std::size_t>(index)];
  if (node.op == 0)
    return node.value;
  return combine(evaluate_node(e, node.lhs), node.op, evaluate_node(e, node.rhs));
}

} // namespace

Solvability solvable_24(std::span<const Rational> numbers) {
  if (numbers.empty() || numbers.size() > 4)
    throw ContractError("solvable_24 expects 1-4 numbers");
  std::vector<Game24Term> terms;
  for (const auto& n : numbers)
    terms.push_back(atom_term(n));
  std::string witness;
  if (search_24(terms, witness))
    return {true, witness};
  return {false, std::nullopt};
}

Expression parse_expression(std::string_view text) { return ExpressionParser(text).parse(); }

Rational evaluate(const Expression& expression) {
  if (expression.root < 0)
    throw ContractError("empty expression");
  return evaluate_node(expression, expression.root);
}

Rational evaluate_expression(std::string_view text) { return evaluate(parse_expression(text)); }

std::vector<Game24Action> actions_from_expression(const Game24State& initial,
                                                  const Expression& expression) {
  validate(initial);
  if (expression.root < 0)
    throw ValidationError(1, "empty expression");

  Game24State state = initial;
  // Identity of each live term, parallel to state.terms: the expression node it
  // stands for, or -1 for an input not yet claimed by a leaf.
  std::vector<int> owner(state.terms.size(), -1);
  std::vector<Game24Action> actions;

  auto find_position = [&](int node) {
    for (std::size_t i = 0; i < owner.size(); ++i)
      if (owner[i] == node)
        return static_cast<int>(i);
    return -1;
  };

  // Leaves claim an unused input of equal value, in display order.
  auto claim_leaves = [&](auto&& self, int index) -> void {
    const auto& node = expression.nodes[static_cast<std::size_t>(index)];
    if (node.op == 0) {
      for (std::size_t i = 0; i < state.terms.size(); ++i) {
        if (owner[i] == -1 && state.terms[i].atom && state.terms[i].value == node.value) {
          owner[i] = index;
          return;
        }
      }
      throw ValidationError(1, "number " + format_rational(node.value) +
                                   " is not an unused input");
    }
    self(self, node.lhs);
    self(self, node.rhs);
  };
  claim_leaves(claim_leaves, expression.root);
  if (std::count(owner.begin(), owner.end(), -1) != 0)
    throw ValidationError(1, "not every input number is used");

  auto reduce = [&](auto&& self, int index) -> void {
    const auto& node = expression.nodes[static_cast<std::size_t>(index)];
    if (node.op == 0)
      return;
    self(self, node.lhs);
    self(self, node.rhs);
    const std::size_t step = actions.size() + 1;
    const int px = find_position(node.lhs);
    const int py = find_position(node.rhs);
    const auto order = sorted_positions(state);
    const auto slot_of = [&](int pos) {
      return static_cast<int>(std::find(order.begin(), order.end(), pos) - order.begin());
    };
    const int sx = slot_of(px);
    const int sy = slot_of(py);
    Game24Action action;
    action.slot_a = std::min(sx, sy);
    action.slot_b = std::max(sx, sy);
    const bool forward = sx < sy; // x occupies slot_a
    switch (node.op) {
    case '+':
      action.op = Game24Op::add;
      break;
    case '*':
      action.op = Game24Op::mul;
      break;
    case '-':
      action.op = forward ? Game24Op::sub_ab : Game24Op::sub_ba;
      break;
    case '/':
      action.op = forward ? Game24Op::div_ab : Game24Op::div_ba;
      break;
    default:
      throw ValidationError(step, "unknown operator");
    }
    // Equal operands share one deduplicated variant.
    const auto& vx = state.terms[static_cast<std::size_t>(px)].value;
    const auto& vy = state.terms[static_cast<std::size_t>(py)].value;
    if (vx == vy && action.op == Game24Op::sub_ba)
      action.op = Game24Op::sub_ab;
    if (vx == vy && action.op == Game24Op::div_ba)
      action.op = Game24Op::div_ab;
    if (!is_legal(state, action))
      throw ValidationError(step, "illegal operation " + format_rational(vx) + " " + node.op +
                                      " " + format_rational(vy));

    std::vector<int> next_owner;
    for (std::size_t i = 0; i < owner.size(); ++i)
      if (static_cast<int>(i) != px && static_cast<int>(i) != py)
        next_owner.push_back(owner[i]);
    next_owner.push_back(index);
    state = apply(state, action);
    owner = std::move(next_owner);
    actions.push_back(action);
  };
  reduce(reduce, expression.root);
  return actions;
}

} // namespace xot
