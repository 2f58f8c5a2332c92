#include "xot/prompt_text.hpp"

namespace xot {

namespace {

constexpr std::string_view kInstruction_game24 = R"xot(Use numbers and basic arithmetic operations (+ - * /) to obtain 24.)xot";

constexpr std::string_view kInstruction_puzzle8 = R"xot(You are a virtual expert in solving a 8-puzzle problrm. Please follow the instructions and rules below to complete the solving. Your goal is to reach the goal state with valid moves.
[The goal state]
0 1 2
3 4 5
6 7 8
[Instructions]
The 8-puzzle consists of a 3x3 grid containing 8 numbered tiles (from 1 to 8) and one empty space (denoted by 0).
Only 0 can be moved horizontally or vertically, and the objective is to reach the goal state from a given initial state.
The goal state is typically the numbers ordered sequentially, with the 0 in the first position:
[The goal state]
0 1 2
3 4 5
6 7 8
[Rules]
1. Only 0 can be moved horizontally or vertically.
2. Each move is chosen from the following set of options:
- 'Left': move 0 to the left
- 'Down': move 0 downward
- 'Right': move 0 to the right
- 'Up': move 0 upward
For example:
Before move:
1 2 3
4 0 6
7 8 5
After move 'Left':
1 2 3
0 4 6
7 8 5
Before move:
1 2 3
4 0 6
7 8 5
After move 'Down':
1 2 3
4 8 6
7 0 5
Before move:
1 2 3
4 0 6
7 8 5
After move 'Right':
1 2 3
4 6 0
7 8 5
Before move:
1 2 3
4 0 6
7 8 5
After move 'Up':
1 0 3
4 2 6
7 8 5
3. The next move must be chosen from the valid move set depending on the position of '0'.
For example:
p1  p2  p3
p4  p5  p6
p7  p8  p9
(1) If '0' is located at position 'p1', the valid move set is ['Right', 'Down'].
(2) If '0' is located at position 'p2', the valid move set is ['Left', 'Right', 'Down'].
(3) If '0' is located at position 'p3', the valid move set is ['Left', 'Down'].
(4) If '0' is located at position 'p4', the valid move set is ['Right', 'Up', 'Down'].
(5) If '0' is located at position 'p5', the valid move set is ['Left', 'Right', 'Up', 'Down'].
(6) If '0' is located at position 'p6', the valid move set is ['Left', 'Up', 'Down'].
(7) If '0' is located at position 'p7', the valid move set is ['Right', 'Up'].
(8) If '0' is located at position 'p8', the valid move set is ['Left, 'Right', 'Up'].
(9) If '0' is located at position 'p9', the valid move set is ['Left', 'Up'].
4. Diagonal moves are not allowed.
5. The objective is to return the moves which can reach the goal state.)xot";

constexpr std::string_view kInstruction_cube = R"xot(You are a virtual expert in solving a 2x2 Pocket Cube. Your task is to restore a scrambled 2x2 Rubik's Cube to its original state. All the given problems can be solved in 1 to 4 moves. You cannot exceed more than 11 moves. Provide the sequence of moves required for the restoration. Please follow the instructions and rules below to complete the solving:
1. A 2x2 Pocket Cube has six faces, namely: [Upper, Front, Bottom, Left, Right, Back] Each consisting of a 2x2 grid of squares, with each square having its own color.
2. Colors in the Cube are represented in numbers: [0, 1, 2, 3, 4, 5]
3. The Cube's state is represented into a facelets expanding graph, for instance:
Upper:
0 0
0 0
Front:
5 5
2 2
Down:
3 3
3 3
Left:
1 1
4 4
Right:
4 4
1 1
Back:
2 2
5 5
4. A restoration of a Pocket Cube is to move squares in each face to have same numbers. Some example Restored States are:
[Restored State]
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
Or
[Restored State]
Upper:
2 2
2 2
Front:
0 0
0 0
Down:
3 3
3 3
Left:
1 1
1 1
Right:
4 4
4 4
Back:
5 5
5 5
You must make move to the Cube to achieve a Restored State, not limited to the above one. Note that we just need each face to have same numbers, no matter which face has which color.
5. You are only allowed to use following moves [U, U', U2, R, R', R2, F, F', F2].
["U": Turn the Upper face of the cube 90 degrees clockwise.
For instance, after taking move U:
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Up:
0 0
0 0
Front:
1 1
2 2
Down:
3 3
3 3
Left:
2 2
4 4
Right:
5 5
1 1
Back:
4 4
5 5
"U'": Turn the Upper face of the cube 90 degrees counterclockwise (or anti-clockwise). For instance, after taking move U':
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Upper:
0 0
0 0
Front:
4 4
2 2
Down:
3 3
3 3
Left:
5 5
4 4
Right:
2 2
1 1
Back:
1 1
5 5
"U2": Turn the Upper face of the cube 180 degrees (a half turn). For instance, after taking move U2:
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Up:
0 0
0 0
Front:
5 5
2 2
Down:
3 3
3 3
Left:
1 1
4 4
Right:
4 4
1 1
Back:
2 2
5 5
"R": Turn the Right face of the cube 90 degrees clockwise.
For instance, after taking move R:
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Upper:
0 2
0 2
Front:
2 3
2 3
Down:
3 5
3 5
Left:
4 4
4 4
Right:
1 1
1 1
Back:
0 5
0 5
"R'": Turn the Right face of the cube 90 degrees counterclockwise. For instance, after taking move R':
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Upper:
0 5
0 5
Front:
2 0
2 0
Down:
3 2
3 2
Left:
4 4
4 4
Right:
1 1
1 1
Back:
3 5
3 5
"R2": Turn the Right face of the cube 180 degrees.
For instance, after taking move R':
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Up:
0 3
0 3
Front:
2 5
2 5
Down:
3 0
3 0
Left:
4 4
4 4
Right:
1 1
1 1
Back:
2 5
2 5
"F": Turn the Front face of the cube 90 degrees clockwise.
For instance, after taking move F:
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Up:
0 0
4 4
Front:
2 2
2 2
Down:
1 1
3 3
Left:
4 3
4 3
Right:
0 1
0 1
Back:
5 5
5 5
"F'": Turn the Front face of the cube 90 degrees counterclockwise.
For instance, after taking move F':
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Upper:
0 0
1 1
Front:
2 2
2 2
Down:
4 4
3 3
Left:
4 0
4 0
Right:
3 1
3 1
Back:
5 5
5 5
"F2": Turn the Front face of the cube 180 degrees.
For instance, after taking move F2:
Upper:
0 0
0 0
Front:
2 2
2 2
Down:
3 3
3 3
Left:
4 4
4 4
Right:
1 1
1 1
Back:
5 5
5 5
will become
Upper:
0 0
3 3
Front:
2 2
2 2
Down:
0 0
3 3
Left:
4 1
4 1
Right:
4 1
4 1
Back:
5 5
5 5)xot";

constexpr std::string_view kPrompt_game24 = R"xot(Input: 2 9 10 12
Steps:
12 * 2 = 24 (left: 9 10 24) Expression: 9, 10, (12) * (2)
10 - 9 = 1 (left: 24 1) Expression: (12) * (2), (10) - (9)
1 * 24 = 24 (left: 24) Expression: ((10) - (9)) * ((12) * (2))
Answer: (12 * 2) * (10 - 9) = 24)xot";

constexpr std::string_view kPrompt_puzzle8 = R"xot(All given problems can be solved within 1 to 9 steps. The next move must be chosen from the valid move set. The maximum step number you can take is 9. Try to reach the goal state using the least number of steps (≤9). **DO NOT exceed 9 steps.**
[Initial State]:
3 1 2
6 4 5
7 8 0
[Process]:
3 1 2
6 4 5
7 8 0
Step 1: Choose one valid move from: [Left, Up]
Move: Left
Current State:
3 1 2
6 4 5
7 0 8
Step 2: Choose one valid move from: [Left, Right, Up]
Move: Left
Current State:
3 1 2
6 4 5
0 7 8
Step 3: Choose one valid move from: [Right, Up]
Move: Up
Current State:
3 1 2
0 4 5
6 7 8
Step 4: Choose one valid move from: [Right, Up]
Move: Up
Current State:
0 1 2
3 4 5
6 7 8
Finished.
[Moves]:
Left, Left, Up, Up)xot";

constexpr std::string_view kPrompt_cube = R"xot(All the given problems can be solved in 1 to 4 moves. **You cannot exceed more than 11 moves.** Please complete [Process] and return the [Restoration Moves].
[Initial Cube State]:
Upper:
4 5
4 4
Front:
5 1
5 0
Down:
0 0
2 0
Left:
1 1
3 2
Right:
2 2
4 3
Back:
3 3
1 5
[Process]:
[Step 1]
[Move] R
[Current Cube State]
Upper:
4 0
4 0
Front:
5 5
0 1
Down:
0 1
2 2
Left:
1 1
3 3
Right:
2 2
4 3
Back:
4 3
5 5
[Step 2]
[Move] U'
[Current Cube State]
Upper:
0 0
4 4
Front:
0 1
0 1
Down:
2 2
2 2
Left:
1 1
3 3
Right:
4 3
4 3
Back:
5 5
5 5
[Step 3]
[Move] F'
[Current Cube State]
Upper:
0 0
0 0
Front:
1 1
1 1
Down:
2 2
2 2
Left:
3 3
3 3
Right:
4 4
4 4
Back:
5 5
5 5
Finished.
Now strictly follow the above process to form Restoration Moves.
[Restoration Moves]:
R U' F')xot";

constexpr std::string_view kRevision_game24 = R"xot(Using the given [input] numbers and basic arithmetic operations (+, -, *, /), follow the steps strictly to achieve a result of 24.
All the [input] numbers can reach 24 by basic arithmetic operations (+, -, *, /).
If the final answer is not exactly 24, then the corresponding [Steps] is considered [wrong]. Please help me identify the exact wrong step based on its left number, among [Step 1, Step 2, Step 3]. If you are uncertain about which step is wrong, please begin your analysis with [Step 1] for better understanding.
Input: 2 9 10 12
Steps:
[Steps 1] 12 * 2 = 24 (left: 9 10 24) Expression: 9, 10, (12) * (2)
[Steps 2] 24 - 10 = 14 (left: 9 14) Expression: 9, ((12) * (2)) - (10)
[Steps 3] 9 + 14 = 23 (left: 23) Expression: (9) + ((12) * (2)) - (10)
The Steps are wrong. Because it can not reach 24 in the end. To be specific,
23 is not equal to 24. [Steps 2] is wrong. Because it is impossible to reach 24 from the step 2. After Step 2, left numbers are 9, 14.
9 + 14 = 23
9 * 14 = 126
9 -  14 = -5
It is impossible to reach 24 from [Steps 2].)xot";

constexpr std::string_view kRevision_puzzle8 = R"xot(The given [Process] is not correct since it does not reach the goal state in the end.
If the final answer does not reach the goal state, then the corresponding [Process] is considered [wrong]. Please help me identify the exact wrong step based on its left number, among [Step 1, Step 2, Step 3, ...]. If you are uncertain about which step is wrong, please begin your analysis with [Step 1] for better understanding.
Please help me identify the exact step number that is wrong. You must provide one wrong step.
[Initial State]:
3 1 2
6 4 5
7 8 0
[Process]
3 1 2
6 4 5
7 8 0
Step 1: Choose one valid move from: [Left, Up]
Left
3 1 2
6 4 5
7 0 8
Step 2: Choose one valid move from: [Left, Right, Up]
Left
3 1 2
6 4 5
0 7 8
Step 3: Choose one valid move from: [Right, Up]
Up
3 1 2
0 4 5
6 7 8
Step 4: Choose one valid move from: [Right, Up]
Right
3 1 2
4 0 5
6 7 8
Finished.
The given [Process] is not correct because number 3, 4, 0, 5 are not their goal positions in the end. The puzzle has failed on reaching its goal state.
Now please help me identify the exact step number that is wrong. You must provide one wrong step. If you can not provide an exact step number, please consider that it could be "all steps are wrong".
[Step 4] is wrong, with Move: Right.)xot";

constexpr std::string_view kRevision_cube = R"xot(The given [Process] is not correct since it does not reach the goal state in the end.
If the final answer does not reach the goal state, then the corresponding [Process] is considered [wrong]. Please help me identify the exact wrong step based on its left number, among [Step 1, Step 2, Step 3, ...]. If you are uncertain about which step is wrong, please begin your analysis with [Step 1] for better understanding.
Please help me identify the exact step number that is wrong. You must provide one wrong step.
[Initial Cube State]:
Upper:
4 5
4 4
Front:
5 1
5 0
Down:
0 0
2 0
Left:
1 1
3 2
Right:
2 2
4 3
Back:
3 3
1 5
[Process]:
[Step 1]
[Move] R
[Current Cube State]
Upper:
4 0
4 0
Front:
5 5
0 1
Down:
0 1
2 2
Left:
1 1
3 3
Right:
2 2
4 3
Back:
4 3
5 5
[Step 2]
[Move] U'
[Current Cube State]
Upper:
0 0
4 4
Front:
0 1
0 1
Down:
2 2
2 2
Left:
1 1
3 3
Right:
4 3
4 3
Back:
5 5
5 5
[Step 3]
[Move] F2
[Current Cube State]
Upper:
0 0
1 1
Front:
2 2
2 2
Down:
4 4
3 3
Left:
4 0
4 0
Right:
3 1
3 1
Back:
5 5
5 5
Finished.
After finishing all the moves: The Upper face still has 2 differnet colors. The Down face still has 2 differnet colors. The Left face still has 2 differnet colors. The Right face still has 2 differnet colors.
The given [Process] is not correct because not every face has the same numbers in the end. The cube has failed on restoring to its original state.
Now please help me identify the exact step number that is wrong. You must provide one wrong step. If you can not provide an exact step number, please consider that it could be "all steps are wrong".
[Step 3] is wrong, with Move: F2.)xot";

} // namespace

std::string_view instruction_text(Task task) {
  switch (task) {
  case Task::game24:
    return kInstruction_game24;
  case Task::puzzle8:
    return kInstruction_puzzle8;
  case Task::cube:
    return kInstruction_cube;
  }
  return {};
}

std::string_view prompt_example_text(Task task) {
  switch (task) {
  case Task::game24:
    return kPrompt_game24;
  case Task::puzzle8:
    return kPrompt_puzzle8;
  case Task::cube:
    return kPrompt_cube;
  }
  return {};
}

std::string_view revision_example_text(Task task) {
  switch (task) {
  case Task::game24:
    return kRevision_game24;
  case Task::puzzle8:
    return kRevision_puzzle8;
  case Task::cube:
    return kRevision_cube;
  }
  return {};
}

} // namespace xot
