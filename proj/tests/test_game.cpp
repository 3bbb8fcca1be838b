#include <algorithm>
#include <random>

#include "amalnim/game.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace amalnim;

namespace {

Position pos(std::initializer_list<Stones> piles) { return Position{piles}; }

const Ruleset kClassic{RuleKind::classic, 2};
const Ruleset kAmalgamation{RuleKind::amalgamation, 2};
const Ruleset kRestricted{RuleKind::restricted, 2};

}  // namespace

TEST_CASE("canonicalize sorts and is idempotent") {
  CHECK(canonicalize(pos({7, 5, 3})) == pos({3, 5, 7}));
  CHECK(canonicalize(pos({0, 0, 0})) == pos({0, 0, 0}));
  CHECK(canonicalize(pos({4, 0, 4})) == pos({0, 4, 4}));
  CHECK(canonicalize(canonicalize(pos({7, 5, 3}))) == pos({3, 5, 7}));
}

TEST_CASE("total and nim_sum") {
  CHECK(total(pos({0, 0, 0})) == 0);
  CHECK(total(pos({3, 5, 7})) == 15);
  CHECK(total(pos({2, 2, 1})) == 5);
  CHECK(nim_sum(pos({2, 4, 6})) == 0);
  CHECK(nim_sum(pos({1, 1, 1})) == 1);
  CHECK(nim_sum(pos({3, 5, 6})) == 0);
}

TEST_CASE("is_terminal") {
  CHECK(is_terminal(pos({0, 0, 0})));
  CHECK_FALSE(is_terminal(pos({0, 0, 1})));
  CHECK_FALSE(is_terminal(pos({0, 4, 4})));
}

TEST_CASE("legal_moves matches hand-enumerated examples") {
  CHECK(legal_moves(pos({1, 2, 2}), kRestricted) ==
        std::vector<Position>{pos({0, 1, 2}), pos({0, 1, 4}), pos({0, 2, 2}), pos({1, 1, 2})});
  CHECK(legal_moves(pos({0, 0, 0}), kRestricted).empty());
  CHECK(legal_moves(pos({1, 2}), kAmalgamation) ==
        std::vector<Position>{pos({0, 1}), pos({0, 2}), pos({0, 3}), pos({1, 1})});
}

TEST_CASE("restricted merges need both piles at the threshold") {
  const auto moves = legal_moves(pos({1, 2, 3}), kRestricted);
  CHECK(std::count(moves.begin(), moves.end(), pos({0, 1, 5})) == 1);  // merge of 2 and 3
  // no merge may involve the 1-pile: the only merge keeps the 1-pile intact
  for (const Position& q : moves) {
    if (total(q) == 6) CHECK(q == pos({0, 1, 5}));
  }
  CHECK(merge_moves(pos({1, 2, 3}), kRestricted).size() == 1);
  CHECK(merge_moves(pos({1, 2, 3}), kAmalgamation).size() == 3);
  CHECK(merge_moves(pos({1, 2, 3}), kClassic).empty());
}

TEST_CASE("move generator agrees with the clause-by-clause reference") {
  for (const Ruleset& rules : {kClassic, kAmalgamation, kRestricted}) {
    for (Stones x = 0; x <= 5; ++x)
      for (Stones y = 0; y <= 5; ++y)
        for (Stones z = 0; z <= 5; ++z) {
          const auto expected = testing::reference_moves_3(x, y, z, rules);
          const auto actual = legal_moves(canonicalize(pos({x, y, z})), rules);
          REQUIRE_MESSAGE(actual == expected, "at (", x, ",", y, ",", z, ") rules ",
                          to_string(rules.kind));
        }
  }
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<Stones> dist(0, 200);
  for (int i = 0; i < 200; ++i) {
    const Stones x = dist(rng), y = dist(rng), z = dist(rng);
    const auto expected = testing::reference_moves_3(x, y, z, kRestricted);
    CHECK(legal_moves(canonicalize(pos({x, y, z})), kRestricted) == expected);
  }
}

TEST_CASE("every move strictly decreases (total, nonempty)") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<Stones> dist(0, 60);
  for (int i = 0; i < 300; ++i) {
    const Position p = canonicalize(pos({dist(rng), dist(rng), dist(rng)}));
    for (const Ruleset& rules : {kClassic, kAmalgamation, kRestricted}) {
      for (const Position& q : legal_moves(p, rules)) {
        const bool smaller = total(q) < total(p) ||
                             (total(q) == total(p) && nonempty_count(q) < nonempty_count(p));
        CHECK(smaller);
      }
    }
  }
}

TEST_CASE("moves are invariant under pile permutation") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<Stones> dist(0, 30);
  for (int i = 0; i < 100; ++i) {
    std::vector<Stones> piles{dist(rng), dist(rng), dist(rng), dist(rng)};
    std::vector<Stones> shuffled = piles;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(legal_moves(canonicalize(Position{piles}), kRestricted) ==
          legal_moves(canonicalize(Position{shuffled}), kRestricted));
  }
}

TEST_CASE("rulesets nest: classic within restricted within amalgamation") {
  for (Stones x = 0; x <= 6; ++x)
    for (Stones y = x; y <= 6; ++y)
      for (Stones z = y; z <= 6; ++z) {
        const Position p = pos({x, y, z});
        const auto classic = legal_moves(p, kClassic);
        const auto restricted = legal_moves(p, kRestricted);
        const auto amalgamation = legal_moves(p, kAmalgamation);
        CHECK(std::includes(restricted.begin(), restricted.end(), classic.begin(),
                            classic.end()));
        CHECK(std::includes(amalgamation.begin(), amalgamation.end(), restricted.begin(),
                            restricted.end()));
      }
}

TEST_CASE("merge move count equals qualifying pile pairs") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<Stones> dist(0, 8);
  for (int i = 0; i < 300; ++i) {
    const Position p = canonicalize(pos({dist(rng), dist(rng), dist(rng)}));
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b)
        if (p.piles[a] >= 2 && p.piles[b] >= 2) ++pairs;
    CHECK(merge_moves(p, kRestricted).size() == pairs);
  }
}

TEST_CASE("position text round trip and validation") {
  CHECK(parse_position("3,5,7") == pos({3, 5, 7}));
  CHECK(parse_position(" 7 , 5 , 3 ") == pos({3, 5, 7}));
  CHECK(to_text(pos({0, 2, 4})) == "0,2,4");
  CHECK(parse_piles("2,1") == std::vector<Stones>{2, 1});  // entry order kept
  CHECK(parse_position("4294967295,0").piles[1] == 4294967295ULL);
  CHECK_THROWS_AS(parse_position(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_position("3,,5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_position("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_position("1,2,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_position("4294967296"), std::invalid_argument);
}
