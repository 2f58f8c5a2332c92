#pragma once

#include <array>
#include <string>
#include <string_view>

namespace xot {

enum class Task { game24, puzzle8, cube };

inline constexpr std::array<Task, 3> kAllTasks{Task::game24, Task::puzzle8, Task::cube};

std::string_view to_string(Task task);
/// Accepts "game24", "puzzle8" and "cube" (plus "24", "8puzzle", "pocketcube").
Task parse_task(std::string_view name);

/// Size of the fixed action enumeration used as the policy head width.
int action_space_size(Task task);
/// Width of the feature vector produced by encode_state.
int feature_width(Task task);
/// Step limit of one episode.
int default_horizon(Task task);
/// Normalizer applied to distance rewards (the metric's diameter); 1 for Game of 24.
double reward_scale(Task task);

} // namespace xot
