#include "xot/task.hpp"

#include "xot/errors.hpp"

namespace xot {

std::string_view to_string(Task task) {
  switch (task) {
  case Task::game24:
    return "game24";
  case Task::puzzle8:
    return "puzzle8";
  case Task::cube:
    return "cube";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  if (name == "game24" || name == "24" || name == "game-of-24")
    return Task::game24;
  if (name == "puzzle8" || name == "8puzzle" || name == "8-puzzle")
    return Task::puzzle8;
  if (name == "cube" || name == "pocketcube" || name == "pocket-cube")
    return Task::cube;
  throw ContractError("unknown task '" + std::string(name) + "'");
}

int action_space_size(Task task) {
  switch (task) {
  case Task::game24:
    return 36;
  case Task::puzzle8:
    return 4;
  case Task::cube:
    return 9;
  }
  return 0;
}

int feature_width(Task task) {
  switch (task) {
  case Task::game24:
    return 12;
  case Task::puzzle8:
    return 81;
  case Task::cube:
    return 144;
  }
  return 0;
}

int default_horizon(Task task) {
  switch (task) {
  case Task::game24:
    return 3;
  case Task::puzzle8:
    return 9;
  case Task::cube:
    return 4;
  }
  return 0;
}

double reward_scale(Task task) {
  switch (task) {
  case Task::game24:
    return 1.0;
  case Task::puzzle8:
    return 31.0;
  case Task::cube:
    return 11.0;
  }
  return 1.0;
}

} // namespace xot
