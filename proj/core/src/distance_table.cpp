#include "xot/distance_table.hpp"

#include "xot/cube.hpp"
#include "xot/errors.hpp"
#include "xot/puzzle8.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>

namespace xot {

namespace {

constexpr std::array<char, 4> kMagic{'X', 'O', 'T', 'D'};

template <typename T> void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename T> T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in)
    throw ParseError(static_cast<std::size_t>(in.gcount()), "truncated distance table header");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

std::filesystem::path cache_path(const char* name) {
  const char* dir = std::getenv("XOT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0')
    return {};
  return std::filesystem::path(dir) / name;
}

} // namespace

DistanceTable::DistanceTable(std::vector<std::uint8_t> distances)
    : distances_(std::move(distances)) {}

int DistanceTable::diameter() const {
  int best = -1;
  for (auto d : distances_)
    if (d != kUnreached)
      best = std::max(best, static_cast<int>(d));
  return best;
}

std::size_t DistanceTable::reached() const {
  return static_cast<std::size_t>(
      std::count_if(distances_.begin(), distances_.end(), [](auto d) { return d != kUnreached; }));
}

void DistanceTable::save(const std::filesystem::path& path) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write distance table " + path.string());
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kFormatVersion);
  write_le<std::uint64_t>(out, distances_.size());
  out.write(reinterpret_cast<const char*>(distances_.data()),
            static_cast<std::streamsize>(distances_.size()));
  if (!out)
    throw Error("failed writing distance table " + path.string());
}

DistanceTable DistanceTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open distance table " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic)
    throw ParseError(0, "bad magic in " + path.string());
  const auto version = read_le<std::uint32_t>(in);
  if (version != kFormatVersion)
    throw UnsupportedVersionError("distance table version " + std::to_string(version) +
                                  " is not supported (expected " +
                                  std::to_string(kFormatVersion) + ")");
  const auto count = read_le<std::uint64_t>(in);
  std::vector<std::uint8_t> distances(count);
  in.read(reinterpret_cast<char*>(distances.data()), static_cast<std::streamsize>(count));
  if (static_cast<std::uint64_t>(in.gcount()) != count)
    throw ParseError(16 + static_cast<std::size_t>(in.gcount()), "truncated distance table");
  return DistanceTable(std::move(distances));
}

DistanceTable load_or_build(const std::filesystem::path& path,
                            const std::function<DistanceTable()>& build) {
  if (!path.empty() && std::filesystem::exists(path)) {
    try {
      return DistanceTable::load(path);
    } catch (const Error&) {
      // stale or corrupt: regenerate below
    }
  }
  auto table = build();
  if (!path.empty())
    table.save(path);
  return table;
}

DistanceTable build_puzzle8_table() {
  std::vector<std::uint8_t> dist(362880, DistanceTable::kUnreached);
  std::vector<Puzzle8State> frontier{Puzzle8State::goal()};
  dist[permutation_rank(frontier.front())] = 0;
  for (std::uint8_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<Puzzle8State> next;
    for (const auto& s : frontier) {
      for (auto move : legal_actions(s)) {
        auto t = apply(s, move);
        auto& slot = dist[permutation_rank(t)];
        if (slot == DistanceTable::kUnreached) {
          slot = static_cast<std::uint8_t>(depth + 1);
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
  return DistanceTable(std::move(dist));
}

DistanceTable build_cube_table() {
  std::vector<std::uint8_t> dist(kCubeIndexSpace, DistanceTable::kUnreached);
  std::vector<CubeState> frontier{CubeState::solved()};
  dist[cube_index(frontier.front())] = 0;
  for (std::uint8_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<CubeState> next;
    for (const auto& s : frontier) {
      for (int m = 0; m < kCubeMoves; ++m) {
        auto t = apply(s, static_cast<CubeMove>(m));
        auto& slot = dist[cube_index(t)];
        if (slot == DistanceTable::kUnreached) {
          slot = static_cast<std::uint8_t>(depth + 1);
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
  return DistanceTable(std::move(dist));
}

const DistanceTable& puzzle8_distances() {
  static const DistanceTable table =
      load_or_build(cache_path("puzzle8.xotd"), build_puzzle8_table);
  return table;
}

const DistanceTable& cube_distances() {
  static const DistanceTable table = load_or_build(cache_path("cube.xotd"), build_cube_table);
  return table;
}

} // namespace xot
