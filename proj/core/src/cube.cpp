#include "xot/cube.hpp"

#include "xot/distance_table.hpp"
#include "xot/errors.hpp"

#include <algorithm>
#include <cctype>

namespace xot {

namespace {

using Vec = std::array<int, 3>;

struct Sticker {
  Vec pos;
  Vec normal;
};

// Cubie centre and outward normal of every sticker; x right, y up, z toward the viewer.
std::array<Sticker, 24> make_geometry() {
  std::array<Sticker, 24> g{};
  auto face = [&](int base, int axis, int sign, int u, int v,
                  std::array<std::array<int, 2>, 4> uv) {
    for (int k = 0; k < 4; ++k) {
      Vec p{};
      p[static_cast<std::size_t>(axis)] = sign;
      p[static_cast<std::size_t>(u)] = uv[static_cast<std::size_t>(k)][0];
      p[static_cast<std::size_t>(v)] = uv[static_cast<std::size_t>(k)][1];
      Vec n{};
      n[static_cast<std::size_t>(axis)] = sign;
      g[static_cast<std::size_t>(base + k)] = {p, n};
    }
  };
  face(0, 1, +1, 0, 2, {{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}});  // up
  face(4, 0, +1, 2, 1, {{{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}});  // right
  face(8, 2, +1, 0, 1, {{{-1, 1}, {1, 1}, {-1, -1}, {1, -1}}});  // front
  face(12, 1, -1, 0, 2, {{{-1, 1}, {1, 1}, {-1, -1}, {1, -1}}}); // down
  face(16, 0, -1, 2, 1, {{{-1, 1}, {1, 1}, {-1, -1}, {1, -1}}}); // left
  face(20, 2, -1, 0, 1, {{{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}}); // back
  return g;
}

Vec rotate(Vec v, int axis, int quarter_turns) {
  const int q = ((quarter_turns % 4) + 4) % 4;
  for (int i = 0; i < q; ++i) {
    const auto [x, y, z] = v;
    switch (axis) {
    case 0:
      v = {x, -z, y};
      break;
    case 1:
      v = {z, y, -x};
      break;
    default:
      v = {-y, x, z};
      break;
    }
  }
  return v;
}

using Perm = std::array<std::uint8_t, 24>;

// Result is a gather table: new[i] = old[perm[i]]. layer 0 turns the whole cube.
Perm make_perm(int axis, int layer, int quarter_turns) {
  static const auto geometry = make_geometry();
  Perm perm{};
  for (std::size_t i = 0; i < 24; ++i)
    perm[i] = static_cast<std::uint8_t>(i);
  for (std::size_t j = 0; j < 24; ++j) {
    const auto& s = geometry[j];
    if (layer != 0 && s.pos[static_cast<std::size_t>(axis)] != layer)
      continue;
    const Vec p = rotate(s.pos, axis, quarter_turns);
    const Vec n = rotate(s.normal, axis, quarter_turns);
    for (std::size_t i = 0; i < 24; ++i)
      if (geometry[i].pos == p && geometry[i].normal == n)
        perm[i] = static_cast<std::uint8_t>(j);
  }
  return perm;
}

struct Generator {
  std::string_view name;
  int axis;
  int layer;
  int quarter_turns;
};

// Order fixes the scramble indices; the first three groups are the CubeMove actions.
constexpr std::array<Generator, 9> kGenerators{{{"U", 1, +1, -1},
                                                {"R", 0, +1, -1},
                                                {"F", 2, +1, -1},
                                                {"D", 1, -1, +1},
                                                {"L", 0, -1, +1},
                                                {"B", 2, -1, +1},
                                                {"x", 0, 0, -1},
                                                {"y", 1, 0, -1},
                                                {"z", 2, 0, -1}}};

struct MoveTables {
  std::array<Perm, kScrambleMoves> perms{};
  std::array<std::string, kScrambleMoves> names;
};

const MoveTables& move_tables() {
  static const MoveTables tables = [] {
    MoveTables t;
    for (std::size_t g = 0; g < kGenerators.size(); ++g) {
      const auto& gen = kGenerators[g];
      const std::array<int, 3> turns{gen.quarter_turns, -gen.quarter_turns, 2 * gen.quarter_turns};
      const std::array<std::string_view, 3> suffix{"", "'", "2"};
      for (std::size_t v = 0; v < 3; ++v) {
        t.perms[g * 3 + v] = make_perm(gen.axis, gen.layer, turns[v]);
        t.names[g * 3 + v] = std::string(gen.name) + std::string(suffix[v]);
      }
    }
    return t;
  }();
  return tables;
}

CubeState permute(const CubeState& state, const Perm& perm) {
  CubeState next;
  for (std::size_t i = 0; i < 24; ++i)
    next.stickers[i] = state.stickers[perm[i]];
  return next;
}

// Corner slots: the sticker indices of each corner, ordered by normal axis (y, x, z).
// Slot 7 is the down-left-back corner, which U/R/F turns leave in place.
struct Corners {
  std::array<std::array<std::uint8_t, 3>, 8> stickers{};
  std::array<std::int8_t, 64> piece_of_mask{};
};

const Corners& corners() {
  static const Corners c = [] {
    const auto geometry = make_geometry();
    Corners out;
    constexpr std::array<std::size_t, 8> anchors{0, 1, 2, 3, 12, 13, 15, 14};
    for (std::size_t slot = 0; slot < 8; ++slot) {
      const Vec pos = geometry[anchors[slot]].pos;
      for (std::size_t i = 0; i < 24; ++i) {
        if (geometry[i].pos != pos)
          continue;
        for (std::size_t axis = 0; axis < 3; ++axis)
          if (geometry[i].normal[axis] != 0) {
            constexpr std::array<std::size_t, 3> order_of_axis{1, 0, 2};
            out.stickers[slot][order_of_axis[axis]] = static_cast<std::uint8_t>(i);
          }
      }
    }
    out.piece_of_mask.fill(-1);
    const auto solved = CubeState::solved();
    for (std::size_t slot = 0; slot < 8; ++slot) {
      int mask = 0;
      for (auto s : out.stickers[slot])
        mask |= 1 << solved.stickers[s];
      out.piece_of_mask[static_cast<std::size_t>(mask)] = static_cast<std::int8_t>(slot);
    }
    return out;
  }();
  return c;
}

} // namespace

CubeState CubeState::solved() {
  CubeState s;
  for (std::size_t i = 0; i < 24; ++i)
    s.stickers[i] = static_cast<std::uint8_t>(i / 4);
  return s;
}

std::string_view move_name(CubeMove move) {
  return move_tables().names[static_cast<std::size_t>(move)];
}

CubeMove parse_cube_move(std::string_view name) {
  std::string norm(name);
  // Accept the typographic prime some models emit.
  if (auto at = norm.find("’"); at != std::string::npos)
    norm.replace(at, 3, "'");
  for (int i = 0; i < kCubeMoves; ++i)
    if (move_tables().names[static_cast<std::size_t>(i)] == norm)
      return static_cast<CubeMove>(i);
  throw ParseError(0, "unknown cube move '" + std::string(name) + "'");
}

CubeMove inverse(CubeMove move) {
  const int i = static_cast<int>(move);
  const int group = i / 3;
  const int variant = i % 3;
  const int inv = variant == 2 ? 2 : 1 - variant;
  return static_cast<CubeMove>(group * 3 + inv);
}

std::string_view scramble_move_name(int index) {
  if (index < 0 || index >= kScrambleMoves)
    throw ContractError("scramble move index out of range: " + std::to_string(index));
  return move_tables().names[static_cast<std::size_t>(index)];
}

void validate(const CubeState& state) {
  std::array<int, 6> count{};
  for (auto c : state.stickers) {
    if (c > 5)
      throw ContractError("cube color out of range: " + std::to_string(c));
    ++count[c];
  }
  for (std::size_t c = 0; c < 6; ++c)
    if (count[c] != 4)
      throw ContractError("cube color " + std::to_string(c) + " appears " +
                          std::to_string(count[c]) + " times");
}

std::vector<CubeMove> legal_actions(const CubeState&) {
  std::vector<CubeMove> out;
  for (int i = 0; i < kCubeMoves; ++i)
    out.push_back(static_cast<CubeMove>(i));
  return out;
}

CubeState apply(const CubeState& state, CubeMove move) {
  const int i = static_cast<int>(move);
  if (i < 0 || i >= kCubeMoves)
    throw IllegalMoveError("cube move id out of range: " + std::to_string(i));
  return permute(state, move_tables().perms[static_cast<std::size_t>(i)]);
}

CubeState apply_scramble(const CubeState& state, int scramble_index) {
  if (scramble_index < 0 || scramble_index >= kScrambleMoves)
    throw IllegalMoveError("scramble move index out of range: " + std::to_string(scramble_index));
  return permute(state, move_tables().perms[static_cast<std::size_t>(scramble_index)]);
}

bool is_goal(const CubeState& state) {
  for (std::size_t f = 0; f < 6; ++f)
    for (std::size_t k = 1; k < 4; ++k)
      if (state.stickers[f * 4 + k] != state.stickers[f * 4])
        return false;
  return true;
}

std::string format_state_text(const CubeState& state) {
  std::string out;
  for (std::size_t f = 0; f < 6; ++f) {
    if (f)
      out += '\n';
    out += kCubeFaceLabels[f];
    out += ":\n";
    const auto* s = &state.stickers[f * 4];
    out += static_cast<char>('0' + s[0]);
    out += ' ';
    out += static_cast<char>('0' + s[1]);
    out += '\n';
    out += static_cast<char>('0' + s[2]);
    out += ' ';
    out += static_cast<char>('0' + s[3]);
  }
  return out;
}

CubeState parse_cube_text(std::string_view text) {
  CubeState state;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < 6; ++f) {
    const auto label = std::string(kCubeFaceLabels[f]) + ":";
    const auto at = text.find(label, pos);
    if (at == std::string_view::npos)
      throw ParseError(pos, "missing cube face '" + label + "'");
    pos = at + label.size();
    for (std::size_t k = 0; k < 4; ++k) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos >= text.size() || text[pos] < '0' || text[pos] > '5')
        throw ParseError(pos, "expected a color digit 0-5 in face " + label);
      state.stickers[f * 4 + k] = static_cast<std::uint8_t>(text[pos] - '0');
      ++pos;
    }
  }
  try {
    validate(state);
  } catch (const Error& e) {
    throw ParseError(text.size(), e.what());
  }
  return state;
}

CubeState canonical_colors(const CubeState& state) {
  validate(state);
  const auto& c = corners();
  // Two colors are opposite exactly when no corner shows both.
  std::array<std::array<bool, 6>, 6> touches{};
  for (const auto& corner : c.stickers)
    for (auto a : corner)
      for (auto b : corner)
        touches[state.stickers[a]][state.stickers[b]] = true;
  auto opposite = [&](std::uint8_t color) -> int {
    int found = -1;
    for (int o = 0; o < 6; ++o)
      if (!touches[color][static_cast<std::size_t>(o)]) {
        if (found >= 0)
          return -1;
        found = o;
      }
    return found;
  };
  const auto& dlb = c.stickers[7];
  // Solved colors of the down-left-back stickers are D=3, L=4, B=5 (by normal y, x, z).
  std::array<int, 6> map;
  map.fill(-1);
  const std::array<int, 3> home{3, 4, 5};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto color = state.stickers[dlb[k]];
    const int opp = opposite(color);
    if (opp < 0 || map[color] >= 0 || map[static_cast<std::size_t>(opp)] >= 0)
      throw UnsolvableError("cube coloring is not physical");
    map[color] = home[k];
    map[static_cast<std::size_t>(opp)] = home[k] - 3;
  }
  CubeState out;
  for (std::size_t i = 0; i < 24; ++i)
    out.stickers[i] = static_cast<std::uint8_t>(map[state.stickers[i]]);
  return out;
}

std::size_t cube_index(const CubeState& canonical) {
  const auto& c = corners();
  std::array<int, 7> perm{};
  std::size_t orientation = 0;
  for (std::size_t slot = 0; slot < 7; ++slot) {
    const auto& st = c.stickers[slot];
    int mask = 0;
    std::size_t ori = 3;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto color = canonical.stickers[st[k]];
      mask |= 1 << color;
      if (color == 0 || color == 3)
        ori = k;
    }
    const int piece = c.piece_of_mask[static_cast<std::size_t>(mask)];
    if (piece < 0 || piece == 7 || ori == 3)
      throw UnsolvableError("cube corner " + std::to_string(slot) + " is not a valid piece");
    perm[slot] = piece;
    orientation = orientation * 3 + ori;
  }
  static constexpr std::array<std::size_t, 7> factorial{720, 120, 24, 6, 2, 1, 1};
  std::size_t rank = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (perm[j] == perm[i])
        throw UnsolvableError("cube corner piece repeated");
      if (perm[j] < perm[i])
        ++smaller;
    }
    rank += smaller * factorial[i];
  }
  return rank * 2187 + orientation;
}

int goal_distance(const CubeState& state) {
  const auto d = cube_distances().at(cube_index(canonical_colors(state)));
  if (d == DistanceTable::kUnreached)
    throw UnsolvableError("cube state is not reachable from a solved cube");
  return d;
}

} // namespace xot
