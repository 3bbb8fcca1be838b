#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amalnim {

using Stones = std::uint64_t;

// Largest pile size accepted from user input. Positions produced internally
// may hold larger piles, since a merge adds two piles together.
inline constexpr Stones kMaxInputPile = 0xffff'ffffULL;

enum class RuleKind { classic, amalgamation, restricted };

const char* to_string(RuleKind kind);
std::optional<RuleKind> rule_kind_from_string(std::string_view name);

// Which moves are legal. classic never merges, amalgamation merges any two
// non-empty piles, restricted merges only two piles that each hold at least
// merge_threshold stones (2 by default; other thresholds are exploratory).
struct Ruleset {
  RuleKind kind = RuleKind::restricted;
  Stones merge_threshold = 2;

  bool merge_allowed(Stones a, Stones b) const;

  friend bool operator==(const Ruleset&, const Ruleset&) = default;
};

// P: the player who just moved wins with optimal play.
// N: the player to move wins with optimal play.
enum class Outcome { P, N };
const char* to_string(Outcome o);

// A multiset of pile sizes. Canonical form keeps the piles sorted
// non-decreasing; move generation and the solvers work on canonical
// positions only.
struct Position {
  std::vector<Stones> piles;

  friend auto operator<=>(const Position&, const Position&) = default;
};

Position canonicalize(Position p);
bool is_canonical(const Position& p);
std::uint64_t total(const Position& p);
Stones nim_sum(const Position& p);
bool is_terminal(const Position& p);
int nonempty_count(const Position& p);

// One canonical position per unordered pile pair the ruleset lets us merge.
// Duplicates are preserved, so the result size equals the number of
// qualifying pairs.
std::vector<Position> merge_moves(const Position& p, const Ruleset& rules);

// Every position reachable in one move, canonicalized, deduplicated, sorted.
// Each result q satisfies (total(q), nonempty_count(q)) <
// (total(p), nonempty_count(p)) lexicographically, so play always ends.
std::vector<Position> legal_moves(const Position& p, const Ruleset& rules);

// Text form "3,5,7"; whitespace around values is ignored. parse_piles keeps
// the pile order as written (the play command shows piles in entry order),
// parse_position canonicalizes. Both reject values above kMaxInputPile.
std::vector<Stones> parse_piles(std::string_view text);
Position parse_position(std::string_view text);
std::string to_text(const Position& p);

struct PositionHash {
  std::size_t operator()(const Position& p) const;
};

}  // namespace amalnim
