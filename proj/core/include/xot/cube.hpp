#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xot {

/// The nine quarter/half turns of the reduced action space, in enumeration order.
enum class CubeMove : std::uint8_t { U, U_prime, U2, R, R_prime, R2, F, F_prime, F2 };

inline constexpr int kCubeMoves = 9;
/// Face turns of all six faces plus the nine whole-cube rotations (x, y, z).
inline constexpr int kScrambleMoves = 27;
/// 7! corner permutations x 3^7 orientation codes.
inline constexpr std::size_t kCubeIndexSpace = 5040 * 2187;

/// Rendered face labels, one per block of four stickers.
inline constexpr std::array<std::string_view, 6> kCubeFaceLabels{"Upper", "Front", "Down",
                                                                 "Left",  "Right", "Back"};

/// 24 stickers as six blocks of four (row-major 2x2 each). Blocks are stored
/// and rendered in one fixed order; block k carries label kCubeFaceLabels[k].
/// Geometrically the blocks are the up, right, front, down, left and back faces,
/// so labels are positional names rather than physical faces. The solved state
/// has color k on every sticker of block k. U/R/F turns never move the
/// down-left-back corner.
struct CubeState {
  std::array<std::uint8_t, 24> stickers{};

  static CubeState solved();
  friend bool operator==(const CubeState&, const CubeState&) = default;
};

std::string_view move_name(CubeMove move);
CubeMove parse_cube_move(std::string_view name);
CubeMove inverse(CubeMove move);

/// Names of the 27 scramble actions: U U' U2 R R' R2 F F' F2 D ... B2 x ... z2.
std::string_view scramble_move_name(int index);

/// Throws ContractError unless colors are 0..5 with four stickers each.
void validate(const CubeState& state);
std::vector<CubeMove> legal_actions(const CubeState& state);
CubeState apply(const CubeState& state, CubeMove move);
CubeState apply_scramble(const CubeState& state, int scramble_index);
/// Every face shows a single color (which color is irrelevant).
bool is_goal(const CubeState& state);

/// Block layout: "Upper:\n4 5\n4 4\nFront:\n..." (no trailing newline).
std::string format_state_text(const CubeState& state);
CubeState parse_cube_text(std::string_view text);

/// Relabels colors so the down-left-back corner carries its solved colors.
/// Throws UnsolvableError when the coloring is not a physical cube.
CubeState canonical_colors(const CubeState& state);

/// Rank of a canonically colored state in [0, kCubeIndexSpace).
std::size_t cube_index(const CubeState& canonical);

/// Exact minimum number of U/R/F turns until every face is uniform.
int goal_distance(const CubeState& state);

} // namespace xot
