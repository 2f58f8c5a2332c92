#include "doctest.h"
#include "examples.hpp"

#include "xot/cube.hpp"
#include "xot/distance_table.hpp"
#include "xot/errors.hpp"
#include "xot/game24.hpp"
#include "xot/instances.hpp"
#include "xot/problem.hpp"
#include "xot/puzzle8.hpp"

#include <filesystem>
#include <random>
#include <set>

using namespace xot;
using namespace xot::testing;

TEST_CASE("game24: solvability agrees with a floating-point search") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(1, 13);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> v{d(rng), d(rng), d(rng), d(rng)};
    std::vector<Rational> r(v.begin(), v.end());
    std::vector<double> f(v.begin(), v.end());
    CHECK(solvable_24(r).solvable == reaches_24(f));
  }
}

TEST_CASE("game24: the solvable multisets over 1..13 number 1362") {
  CHECK(game24_ranked_problems().size() == 1362);
  const std::vector<Rational> row{4, 6, 10, 10};
  const auto s = solvable_24(row);
  CHECK(s.solvable);
  REQUIRE(s.witness);
  CHECK(evaluate_expression(*s.witness) == Rational(24));
}

TEST_CASE("game24: worked answer replays to 24") {
  const auto g = game24_example();
  const auto t = parse_trajectory("Answer: (12 * 2) * (10 - 9) = 24", Task::game24, g);
  CHECK(t.steps.size() == 3);
  CHECK(is_solved(t));
  CHECK(reward(t.final_state(), 3, 3).value == 1.0);
  const auto w = game24_wrong();
  CHECK_FALSE(is_solved(w));
  CHECK(reward(w.final_state(), 3, 3).value == -1.0);
}

TEST_CASE("game24: answers must use every number exactly once") {
  const auto g = std::get<Game24State>(game24_example());
  CHECK_THROWS_AS(actions_from_expression(g, parse_expression("12 * 2")), ValidationError);
  CHECK_THROWS_AS(actions_from_expression(g, parse_expression("(12 * 2) * (10 - 9) * 9")), ValidationError);
  CHECK_THROWS_AS(evaluate_expression("4 / (2 - 2)"), ContractError);
}

TEST_CASE("game24: encoding of {24}") {
  const auto e = encode_state(parse_state_text(Task::game24, "24"));
  REQUIRE(e.features.size() == 12);
  CHECK(e.features[0] == doctest::Approx(1.0));
  CHECK(e.features[1] == 1.0);
  for (int i = 2; i < 8; ++i)
    CHECK(e.features[i] == 0.0);
  CHECK(e.features[8] == 1.0);
  CHECK(e.features[9] == 0.0);
  CHECK(std::count(e.mask.begin(), e.mask.end(), 1) == 0);
  CHECK(is_terminal(parse_state_text(Task::game24, "24"), 3, 3));
}

TEST_CASE("game24: distinct legal actions read as distinct equations") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> card(1, 4); // small range forces repeated values
  for (int trial = 0; trial < 300; ++trial) {
    auto s = parse_state_text(Task::game24, std::to_string(card(rng)) + " " + std::to_string(card(rng)) +
                                                " " + std::to_string(card(rng)) + " " + std::to_string(card(rng)));
    while (!legal_action_ids(s).empty()) {
      const auto ids = legal_action_ids(s);
      std::set<std::string> texts;
      for (int id : ids)
        texts.insert(action_text(s, id));
      CHECK(texts.size() == ids.size());
      s = apply_action(s, ids[rng() % ids.size()]);
    }
  }
  // {1, 1, 24}: "24 + 1" once, not once per 1.
  const auto s = parse_state_text(Task::game24, "1 1 24");
  std::set<std::string> texts;
  for (int id : legal_action_ids(s))
    texts.insert(action_text(s, id));
  CHECK(texts.count("24 + 1 = 25") == 1);
  CHECK(legal_action_ids(s).size() == texts.size());
}

TEST_CASE("problem: mask bits match legal actions on random walks") {
  std::mt19937 rng(3);
  for (auto task : kAllTasks) {
    for (int walk = 0; walk < 30; ++walk) {
      ProblemState s = task == Task::game24 ? game24_example()
                       : task == Task::puzzle8 ? ProblemState(Puzzle8State::goal())
                                               : ProblemState(CubeState::solved());
      for (int step = 0; step < 3; ++step) {
        const auto enc = encode_state(s);
        const auto legal = legal_action_ids(s);
        CHECK(enc.features.size() == feature_width(task));
        REQUIRE(enc.mask.size() == static_cast<std::size_t>(action_space_size(task)));
        for (int a = 0; a < action_space_size(task); ++a)
          CHECK((enc.mask[a] == 1) == (std::find(legal.begin(), legal.end(), a) != legal.end()));
        if (legal.empty())
          break;
        s = apply_action(s, legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]);
      }
    }
  }
}

TEST_CASE("problem: reward is only defined on terminal states") {
  const auto p = puzzle8_example();
  CHECK_THROWS_AS(reward(p, 0, 9), ContractError);
  CHECK(reward(p, 9, 9).value == -4.0);
  CHECK(normalized_reward(p, 9, 9) == doctest::Approx(-4.0 / 31));
  CHECK(reward(Puzzle8State::goal(), 2, 9).value == 0.0);
  const auto c = cube_example();
  CHECK(normalized_reward(c, 4, 4) == doctest::Approx(-3.0 / 11));
}

TEST_CASE("puzzle8: moves and legality") {
  auto g = Puzzle8State::goal();
  CHECK(legal_actions(g) == std::vector<Move8>{Move8::right, Move8::down});
  CHECK_THROWS_AS(apply(g, Move8::left), IllegalMoveError);
  for (auto m : legal_actions(g))
    CHECK(apply(apply(g, m), opposite(m)) == g);
  const auto t = puzzle8_solution();
  CHECK(is_solved(t));
  CHECK(goal_distance(puzzle8_example()) == 4);
}

TEST_CASE("puzzle8: distances match an independent BFS" * doctest::timeout(60)) {
  const auto bfs = puzzle8_bfs();
  CHECK(bfs.size() == 181440);
  const auto& table = puzzle8_distances();
  CHECK(table.diameter() == 31);
  CHECK(table.reached() == 181440);
  std::size_t i = 0;
  for (const auto& [tiles, d] : bfs) {
    if (i++ % 97 != 0)
      continue;
    Puzzle8State s;
    s.tiles = tiles;
    CHECK(goal_distance(s) == d);
  }
}

TEST_CASE("cube: group structure of the move set") {
  const auto solved = CubeState::solved();
  std::mt19937 rng(11);
  auto s = solved;
  for (int i = 0; i < 20; ++i)
    s = apply_scramble(s, std::uniform_int_distribution<int>(0, kScrambleMoves - 1)(rng));
  for (int m = 0; m < kCubeMoves; ++m) {
    const auto mv = static_cast<CubeMove>(m);
    CHECK(apply(apply(s, mv), inverse(mv)) == s);
    auto four = s;
    for (int k = 0; k < 4; ++k)
      four = apply(four, mv);
    CHECK(four == s);
  }
  CHECK(apply(apply(s, CubeMove::U), CubeMove::U) == apply(s, CubeMove::U2));
  CHECK(apply(s, CubeMove::R) != apply(s, CubeMove::F));
}

TEST_CASE("cube: distances" * doctest::timeout(120)) {
  const auto& table = cube_distances();
  CHECK(table.diameter() == 11);
  CHECK(table.reached() == 3674160);
  const auto solved = CubeState::solved();
  for (int i = 0; i < 18; ++i)
    CHECK(goal_distance(apply_scramble(solved, i)) == 1);
  for (int i = 18; i < kScrambleMoves; ++i) {
    const auto rotated = apply_scramble(solved, i);
    CHECK(goal_distance(rotated) == 0);
    CHECK(is_goal(rotated));
  }
  CHECK(goal_distance(cube_example()) == 3);
  CHECK(is_solved(cube_solution()));
  CHECK_FALSE(is_solved(cube_wrong()));
  // Whole-cube rotations do not change the distance.
  auto s = apply(apply(solved, CubeMove::R), CubeMove::U_prime);
  CHECK(goal_distance(apply_scramble(s, 19)) == goal_distance(s));
}

TEST_CASE("cube: text round trip and move names") {
  const auto c = std::get<CubeState>(cube_example());
  CHECK(parse_cube_text(format_state_text(c)) == c);
  CHECK(parse_cube_move("U’") == CubeMove::U_prime);
  CHECK(move_name(CubeMove::F2) == "F2");
  CHECK_THROWS(parse_cube_move("D"));
}

TEST_CASE("distance table: save/load round trip") {
  const auto path = std::filesystem::temp_directory_path() / "xot_table_test.bin";
  const DistanceTable t(std::vector<std::uint8_t>{0, 1, 2, 1, DistanceTable::kUnreached});
  t.save(path);
  CHECK(DistanceTable::load(path) == t);
  CHECK(t.diameter() == 2);
  CHECK(t.reached() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("instances: generated sets, splits and round trip" * doctest::timeout(120)) {
  const auto p = generate_instances(Task::puzzle8, 419, 5);
  CHECK(p.size() == 419);
  std::set<std::string> keys;
  for (const auto& i : p) {
    const int d = goal_distance(i.state);
    CHECK(d >= 1);
    CHECK(d <= 9);
    keys.insert(state_key(i.state));
  }
  CHECK(keys.size() == 419);
  CHECK(select_split(p, "train").size() == 300);
  CHECK(select_split(p, "test").size() == 119);

  const auto c = generate_instances(Task::cube, 1183, 5);
  CHECK(select_split(c, "train").size() == 1000);
  CHECK(select_split(c, "test").size() == 183);
  for (const auto& i : c) {
    const int d = goal_distance(i.state);
    CHECK(d >= 1);
    CHECK(d <= 4);
  }
  const auto again = generate_instances(Task::cube, 1183, 5);
  CHECK(state_key(again[17].state) == state_key(c[17].state));

  const auto path = std::filesystem::temp_directory_path() / "xot_instances_test.jsonl";
  write_instances(path, c);
  const auto back = read_instances(path);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i].id == c[i].id);
    CHECK(state_key(back[i].state) == state_key(c[i].state));
    CHECK(back[i].split == c[i].split);
  }
  std::filesystem::remove(path);
}
