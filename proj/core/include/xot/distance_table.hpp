#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace xot {

/// Exact goal distances indexed by a task-specific state rank, produced by
/// breadth-first search from the goal.
///
/// On disk: "XOTD", u32 format version, u64 entry count, then one byte per
/// entry (little endian header; 255 marks unreachable ranks).
class DistanceTable {
public:
  static constexpr std::uint8_t kUnreached = 255;
  static constexpr std::uint32_t kFormatVersion = 1;

  DistanceTable() = default;
  explicit DistanceTable(std::vector<std::uint8_t> distances);

  std::uint8_t at(std::size_t rank) const { return distances_.at(rank); }
  std::size_t size() const { return distances_.size(); }
  std::span<const std::uint8_t> data() const { return distances_; }

  /// Largest finite distance.
  int diameter() const;
  std::size_t reached() const;

  void save(const std::filesystem::path& path) const;
  static DistanceTable load(const std::filesystem::path& path);

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

private:
  std::vector<std::uint8_t> distances_;
};

/// Loads `path` when it holds a valid table, otherwise builds and writes it.
DistanceTable load_or_build(const std::filesystem::path& path,
                            const std::function<DistanceTable()>& build);

DistanceTable build_puzzle8_table();
DistanceTable build_cube_table();

/// Process-wide tables, built once on first use. When XOT_CACHE_DIR is set the
/// blobs are read from / written to that directory.
const DistanceTable& puzzle8_distances();
const DistanceTable& cube_distances();

} // namespace xot
