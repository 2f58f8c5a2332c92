#pragma once

#include "xot/task.hpp"

#include <string_view>

namespace xot {

/// System instruction for solving a task.
std::string_view instruction_text(Task task);

/// Worked solve prompt for each task's example problem, as published. The
/// 8-puzzle block lists [Right, Up] at its Step 4, where the rules give
/// [Right, Up, Down]; the renderer produces the latter.
std::string_view prompt_example_text(Task task);

/// Worked critique exchange, used verbatim as the few-shot part of critique prompts.
std::string_view revision_example_text(Task task);

} // namespace xot
