#include "amalnim/classifier.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace amalnim {

const char* to_string(SumRelation r) {
  switch (r) {
    case SumRelation::equal_sum: return "equal_sum";
    case SumRelation::sum_plus_two: return "sum_plus_two";
    case SumRelation::sum_exceeds_two: return "sum_exceeds_two";
    case SumRelation::not_applicable: return "not_applicable";
  }
  return "?";
}

DigitRelation digit_relation(Stones x, Stones y, Stones z) {
  if ((x ^ y ^ z) != 0) return {SumRelation::not_applicable, std::nullopt};
  const Stones carry = x & y;  // x + y = (x ^ y) + 2*carry = z + 2*carry
  if (carry == 0) return {SumRelation::equal_sum, std::nullopt};
  if (carry == 1) return {SumRelation::sum_plus_two, std::nullopt};
  return {SumRelation::sum_exceeds_two, std::countr_zero(carry & ~Stones{1})};
}

namespace {

bool within_z(Stones x, Stones y, Stones z) { return x <= z && y <= z; }

}  // namespace

bool in_N01(Stones x, Stones y, Stones z) {
  return within_z(x, y, z) && x >= 2 && y >= 2 &&
         digit_relation(x, y, z).value == SumRelation::equal_sum;
}

bool in_N02(Stones x, Stones y, Stones z) {
  return within_z(x, y, z) && digit_relation(x, y, z).value == SumRelation::sum_plus_two;
}

bool in_P01(Stones x, Stones y, Stones z) {
  return within_z(x, y, z) && std::min(x, y) < 2 &&
         digit_relation(x, y, z).value == SumRelation::equal_sum;
}

bool in_P02(Stones x, Stones y, Stones z) {
  return within_z(x, y, z) && digit_relation(x, y, z).value == SumRelation::sum_exceeds_two;
}

bool in_P11(Stones x, Stones y, Stones w) {
  if ((x + y) % 2 == 0) return w >= 1 && in_N01(x, y, w - 1);
  return in_N01(x, y, w + 1);
}

bool in_P12(Stones x, Stones y, Stones w) {
  if ((x + y) % 2 == 0) return w >= 1 && in_N02(x, y, w - 1);
  return in_N02(x, y, w + 1);
}

const char* subset_name(Subset s) {
  switch (s) {
    case Subset::P01: return "P_{0,1}";
    case Subset::P02: return "P_{0,2}";
    case Subset::P11: return "P_{1,1}";
    case Subset::P12: return "P_{1,2}";
    case Subset::N01: return "N_{0,1}";
    case Subset::N02: return "N_{0,2}";
    case Subset::None: return "none";
  }
  return "?";
}

bool is_p_subset(Subset s) {
  return s == Subset::P01 || s == Subset::P02 || s == Subset::P11 || s == Subset::P12;
}

Membership membership(const Position& p) {
  if (p.piles.size() != 3)
    throw std::invalid_argument("membership requires exactly 3 piles, got " +
                                std::to_string(p.piles.size()));
  const Position c = canonicalize(p);
  const Stones a = c.piles[0], b = c.piles[1], d = c.piles[2];

  struct Placement {
    Stones x, y, z;
    int z_index;
  };
  const Placement placements[3] = {{a, b, d, 2}, {a, d, b, 1}, {b, d, a, 0}};
  const Subset order[6] = {Subset::P01, Subset::P02, Subset::P11,
                           Subset::P12, Subset::N01, Subset::N02};

  for (Subset s : order) {
    for (const Placement& o : placements) {
      bool hit = false;
      switch (s) {
        case Subset::P01: hit = in_P01(o.x, o.y, o.z); break;
        case Subset::P02: hit = in_P02(o.x, o.y, o.z); break;
        case Subset::P11: hit = in_P11(o.x, o.y, o.z); break;
        case Subset::P12: hit = in_P12(o.x, o.y, o.z); break;
        case Subset::N01: hit = in_N01(o.x, o.y, o.z); break;
        case Subset::N02: hit = in_N02(o.x, o.y, o.z); break;
        case Subset::None: break;
      }
      if (!hit) continue;
      Membership m;
      m.subset = s;
      m.orientation = o.z_index;
      if (s == Subset::P11 || s == Subset::P12) {
        const Stones w = (o.x + o.y) % 2 == 0 ? o.z - 1 : o.z + 1;
        m.witness = std::array<Stones, 3>{o.x, o.y, w};
      }
      return m;
    }
  }
  return Membership{};
}

Outcome classify(const Position& p) {
  return is_p_subset(membership(p).subset) ? Outcome::P : Outcome::N;
}

}  // namespace amalnim
