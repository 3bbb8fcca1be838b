#pragma once

#include <array>
#include <optional>

#include "amalnim/game.hpp"

namespace amalnim {

enum class SumRelation { equal_sum, sum_plus_two, sum_exceeds_two, not_applicable };
const char* to_string(SumRelation r);

// How x+y compares with z, read off the binary digits. For triples of zero
// nim-sum the carry word c = x & y satisfies x + y = z + 2c, so the three
// cases are exactly c = 0 (x+y = z), c = 1 (x+y = z+2) and c >= 2
// (x+y > z+2). Triples with non-zero nim-sum map to not_applicable.
struct DigitRelation {
  SumRelation value = SumRelation::not_applicable;
  // lowest bit index j >= 1 with x_j = y_j = 1 and z_j = 0; present exactly
  // when value is sum_exceeds_two
  std::optional<int> witness_bit;

  friend bool operator==(const DigitRelation&, const DigitRelation&) = default;
};

DigitRelation digit_relation(Stones x, Stones y, Stones z);

// Ordered-triple families behind the P-position formula for the restricted
// three-pile game. Arguments are taken in the given roles; every defining
// clause, including x,y <= z, is checked by the test itself.
//
//   N01: x+y = z,   nim-sum 0, x,y <= z, x,y >= 2
//   N02: x+y = z+2, nim-sum 0, x,y <= z
//   P01: x+y = z,   nim-sum 0, x,y <= z, min(x,y) < 2
//   P02: x+y > z+2, nim-sum 0, x,y <= z
//
// P11/P12 members are N01/N02 members with the third coordinate shifted by
// +1 when x+y is even and by -1 when x+y is odd; the tests below undo the
// shift and test the underlying triple.
bool in_N01(Stones x, Stones y, Stones z);
bool in_N02(Stones x, Stones y, Stones z);
bool in_P01(Stones x, Stones y, Stones z);
bool in_P02(Stones x, Stones y, Stones z);
bool in_P11(Stones x, Stones y, Stones w);
bool in_P12(Stones x, Stones y, Stones w);

enum class Subset { P01, P02, P11, P12, N01, N02, None };

const char* subset_name(Subset s);  // "P_{0,1}", "N_{0,2}", ...
bool is_p_subset(Subset s);

struct Membership {
  Subset subset = Subset::None;
  // index of the canonical pile that played the z role; -1 for None
  int orientation = -1;
  // for P11/P12: the zero-nim-sum triple (x, y, w) the member was built from
  std::optional<std::array<Stones, 3>> witness;
};

// Tests the three placements of a canonical coordinate in the z role (the
// predicates are symmetric in x and y, so three placements cover all six
// permutations). Subsets are tried in the fixed order P01, P02, P11, P12,
// N01, N02 and the first match wins. Requires exactly 3 piles.
Membership membership(const Position& p);

// P exactly when membership lands in one of the P families. Requires
// exactly 3 piles; only meaningful for the restricted ruleset with merge
// threshold 2.
Outcome classify(const Position& p);

}  // namespace amalnim
