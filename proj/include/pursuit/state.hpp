#pragma once

#include <array>
#include <functional>

#include "pursuit/vec.hpp"

namespace pursuit {

// Snapshot of the game at a grid time.
struct GameState {
  double t = 0.0;
  Point E;
  std::array<Point, 3> P;
};

// What a pursuer is shown when asked for its move. Decentralized policies must
// use only `own`, `evader` and `evader_heading`; `full_state` and `own_index`
// are populated so that cooperative controllers can coordinate, and tests
// verify that decentralized policies ignore them.
struct PursuerObservation {
  Point own;
  Point evader;
  Direction evader_heading;
  const GameState* full_state = nullptr;
  int own_index = -1;
};

// Policies return the velocity direction for the next step. The returned
// vector must have norm <= 1 (up to rounding): unit norm is full speed, and a
// shorter vector slows down or stops, which controllers use to park on a
// target without overshooting. Stateful policies keep their mutable state
// behind a shared_ptr so copies of the std::function share it.
using EvaderPolicy = std::function<Direction(const GameState&)>;
using PursuerPolicy = std::function<Direction(const PursuerObservation&)>;

}  // namespace pursuit
