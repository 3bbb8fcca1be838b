#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "amalnim/game.hpp"

namespace amalnim {

// Least non-negative integer absent from values. Uses a presence bitmap of
// size |values|+1, since the answer never exceeds the number of values.
Stones mex(const std::vector<Stones>& values);

// Exhaustive memoized solver, the ground truth the formula is checked
// against. Outcomes and Grundy values are computed by two separate
// recursions so that their agreement stays a meaningful invariant.
//
// Results are pure functions of (position, ruleset); the caches are guarded
// by a mutex, so concurrent callers always observe identical answers. The
// recursion is well-founded because every move strictly decreases
// (total stones, non-empty piles) lexicographically; it runs on an explicit
// stack, so deep positions cannot overflow the call stack.
class Solver {
 public:
  explicit Solver(Ruleset rules) : rules_(rules) {}

  const Ruleset& rules() const { return rules_; }

  Outcome outcome(Position p);
  Stones grundy(Position p);

 private:
  Ruleset rules_;
  mutable std::mutex mu_;
  std::unordered_map<Position, Outcome, PositionHash> outcome_memo_;
  std::unordered_map<Position, Stones, PositionHash> grundy_memo_;
};

// A rectangle of positions to enumerate: either every pile at most `limit`,
// or the total at most `limit`. Only total_stones bounds are closed under
// legal moves (a merge can push a single pile past a per-pile limit).
struct BoundSpec {
  enum class Mode { max_pile, total_stones };

  Mode mode = Mode::total_stones;
  std::uint64_t limit = 0;
  int pile_count = 3;

  friend bool operator==(const BoundSpec&, const BoundSpec&) = default;
};

const char* to_string(BoundSpec::Mode m);

// Visits every canonical position within the bound, ordered by
// (total stones, non-empty piles, lexicographic).
void for_each_position(const BoundSpec& bound,
                       const std::function<void(const Position&)>& fn);
std::vector<Position> enumerate_positions(const BoundSpec& bound);

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FillOptions {
  int workers = 1;
  std::uint64_t entry_ceiling = 100'000'000;
};

struct GrundyTable {
  Ruleset ruleset;
  BoundSpec bound;
  std::map<Position, Stones> entries;  // canonical position -> Grundy value

  friend bool operator==(const GrundyTable&, const GrundyTable&) = default;
};

// Bottom-up table fill in (total, non-empty piles) order, so every successor
// is solved before its predecessors. Workers may split a layer; the result
// is identical for any worker count. max_pile bounds are not move-closed:
// merge successors past the per-pile limit are solved by recursion on the
// side and not stored. Throws ResourceLimitError when the entry count would
// exceed opts.entry_ceiling.
GrundyTable retrograde_fill(const BoundSpec& bound, const Ruleset& rules,
                            const FillOptions& opts = {});

// Independent bottom-up recomputation of a single Grundy value. Shares no
// state with any Solver cache; used to double-check reported
// counterexamples.
Stones grundy_by_fill(const Position& p, const Ruleset& rules);

}  // namespace amalnim
