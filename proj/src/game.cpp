#include "amalnim/game.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace amalnim {

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::classic: return "classic";
    case RuleKind::amalgamation: return "amalgamation";
    case RuleKind::restricted: return "restricted";
  }
  return "?";
}

std::optional<RuleKind> rule_kind_from_string(std::string_view name) {
  if (name == "classic") return RuleKind::classic;
  if (name == "amalgamation") return RuleKind::amalgamation;
  if (name == "restricted") return RuleKind::restricted;
  return std::nullopt;
}

bool Ruleset::merge_allowed(Stones a, Stones b) const {
  switch (kind) {
    case RuleKind::classic: return false;
    case RuleKind::amalgamation: return a >= 1 && b >= 1;
    case RuleKind::restricted: return a >= merge_threshold && b >= merge_threshold;
  }
  return false;
}

const char* to_string(Outcome o) { return o == Outcome::P ? "P" : "N"; }

Position canonicalize(Position p) {
  std::sort(p.piles.begin(), p.piles.end());
  return p;
}

bool is_canonical(const Position& p) {
  return std::is_sorted(p.piles.begin(), p.piles.end());
}

std::uint64_t total(const Position& p) {
  return std::accumulate(p.piles.begin(), p.piles.end(), std::uint64_t{0});
}

Stones nim_sum(const Position& p) {
  Stones x = 0;
  for (Stones s : p.piles) x ^= s;
  return x;
}

bool is_terminal(const Position& p) {
  return std::all_of(p.piles.begin(), p.piles.end(), [](Stones s) { return s == 0; });
}

int nonempty_count(const Position& p) {
  return static_cast<int>(std::count_if(p.piles.begin(), p.piles.end(),
                                        [](Stones s) { return s > 0; }));
}

std::vector<Position> merge_moves(const Position& p, const Ruleset& rules) {
  std::vector<Position> out;
  const std::size_t n = p.piles.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!rules.merge_allowed(p.piles[i], p.piles[j])) continue;
      Position q = p;
      q.piles[i] = p.piles[i] + p.piles[j];
      q.piles[j] = 0;
      out.push_back(canonicalize(std::move(q)));
    }
  }
  return out;
}

std::vector<Position> legal_moves(const Position& p, const Ruleset& rules) {
  assert(is_canonical(p));
  std::vector<Position> out;
  const std::size_t n = p.piles.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && p.piles[i] == p.piles[i - 1]) continue;  // same results as pile i-1
    for (Stones u = 0; u < p.piles[i]; ++u) {
      Position q = p;
      q.piles[i] = u;
      out.push_back(canonicalize(std::move(q)));
    }
  }
  std::vector<Position> merges = merge_moves(p, rules);
  out.insert(out.end(), std::make_move_iterator(merges.begin()),
             std::make_move_iterator(merges.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Stones> parse_piles(std::string_view text) {
  auto parse_token = [](std::string_view tok) -> Stones {
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) throw std::invalid_argument("position has an empty pile value");
    Stones v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("pile sizes must be non-negative decimal integers: '" +
                                    std::string(tok) + "'");
      v = v * 10 + static_cast<Stones>(ch - '0');
      if (v > kMaxInputPile)
        throw std::invalid_argument("pile size exceeds 2^32-1: '" + std::string(tok) + "'");
    }
    return v;
  };

  std::vector<Stones> piles;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    piles.push_back(parse_token(text.substr(pos, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return piles;
}

Position parse_position(std::string_view text) {
  return canonicalize(Position{parse_piles(text)});
}

std::string to_text(const Position& p) {
  std::string out;
  for (std::size_t i = 0; i < p.piles.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.piles[i]);
  }
  return out;
}

std::size_t PositionHash::operator()(const Position& p) const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over 64-bit words
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(p.piles.size());
  for (Stones s : p.piles) mix(s);
  return static_cast<std::size_t>(h);
}

}  // namespace amalnim
