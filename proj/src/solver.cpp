#include "amalnim/solver.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <thread>
#include <utility>

namespace amalnim {

Stones mex(const std::vector<Stones>& values) {
  std::vector<bool> present(values.size() + 1, false);
  for (Stones v : values) {
    if (v <= values.size()) present[static_cast<std::size_t>(v)] = true;
  }
  Stones g = 0;
  while (present[static_cast<std::size_t>(g)]) ++g;
  return g;
}

namespace {

template <typename V>
std::optional<V> memo_get(std::mutex& mu,
                          const std::unordered_map<Position, V, PositionHash>& memo,
                          const Position& p) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(p);
  if (it == memo.end()) return std::nullopt;
  return it->second;
}

template <typename V>
void memo_put(std::mutex& mu, std::unordered_map<Position, V, PositionHash>& memo,
              const Position& p, V v) {
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(p, v);
}

struct Frame {
  Position pos;
  std::vector<Position> succ;
  std::size_t next = 0;
};

}  // namespace

Outcome Solver::outcome(Position p) {
  p = canonicalize(std::move(p));
  if (auto v = memo_get(mu_, outcome_memo_, p)) return *v;

  std::vector<Frame> stack;
  stack.push_back(Frame{p, legal_moves(p, rules_)});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Position* missing = nullptr;
    bool losing_successor = false;  // some successor is P, so f.pos is N
    while (f.next < f.succ.size()) {
      auto v = memo_get(mu_, outcome_memo_, f.succ[f.next]);
      if (!v) {
        missing = &f.succ[f.next];
        break;
      }
      if (*v == Outcome::P) {
        losing_successor = true;
        break;
      }
      ++f.next;
    }
    if (losing_successor) {
      memo_put(mu_, outcome_memo_, f.pos, Outcome::N);
      stack.pop_back();
      continue;
    }
    if (missing == nullptr) {
      // every successor is N (or there are none): previous player wins
      memo_put(mu_, outcome_memo_, f.pos, Outcome::P);
      stack.pop_back();
      continue;
    }
    Position q = *missing;
    std::vector<Position> succ = legal_moves(q, rules_);
    stack.push_back(Frame{std::move(q), std::move(succ)});
  }
  return *memo_get(mu_, outcome_memo_, p);
}

Stones Solver::grundy(Position p) {
  p = canonicalize(std::move(p));
  if (auto v = memo_get(mu_, grundy_memo_, p)) return *v;

  std::vector<Frame> stack;
  stack.push_back(Frame{p, legal_moves(p, rules_)});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Position* missing = nullptr;
    while (f.next < f.succ.size()) {
      if (!memo_get(mu_, grundy_memo_, f.succ[f.next])) {
        missing = &f.succ[f.next];
        break;
      }
      ++f.next;
    }
    if (missing != nullptr) {
      Position q = *missing;
      std::vector<Position> succ = legal_moves(q, rules_);
      stack.push_back(Frame{std::move(q), std::move(succ)});
      continue;
    }
    std::vector<Stones> values;
    values.reserve(f.succ.size());
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (const Position& q : f.succ) values.push_back(grundy_memo_.at(q));
    }
    memo_put(mu_, grundy_memo_, f.pos, mex(values));
    stack.pop_back();
  }
  return *memo_get(mu_, grundy_memo_, p);
}

const char* to_string(BoundSpec::Mode m) {
  return m == BoundSpec::Mode::max_pile ? "max_pile" : "total_stones";
}

namespace {

// Emits the canonical positions with exactly `parts` non-empty piles summing
// to `remaining`, each pile at most `cap`, in lexicographic order.
void emit_partitions(std::uint64_t remaining, int parts, std::uint64_t min_value,
                     std::uint64_t cap, std::vector<Stones>& acc,
                     const std::function<void(const Position&)>& fn, int pile_count) {
  if (parts == 0) {
    if (remaining != 0) return;
    Position p;
    p.piles.assign(static_cast<std::size_t>(pile_count) - acc.size(), 0);
    p.piles.insert(p.piles.end(), acc.begin(), acc.end());
    fn(p);
    return;
  }
  std::uint64_t lo = min_value;
  const std::uint64_t rest_cap = cap * static_cast<std::uint64_t>(parts - 1);
  if (remaining > rest_cap) lo = std::max(lo, remaining - rest_cap);
  const std::uint64_t hi = std::min(cap, remaining / static_cast<std::uint64_t>(parts));
  for (std::uint64_t v = lo; v <= hi; ++v) {
    acc.push_back(v);
    emit_partitions(remaining - v, parts - 1, v, cap, acc, fn, pile_count);
    acc.pop_back();
  }
}

void for_each_layer(std::uint64_t total, int nonempty, int pile_count, std::uint64_t pile_cap,
                    const std::function<void(const Position&)>& fn) {
  if (nonempty == 0) {
    if (total == 0) fn(Position{std::vector<Stones>(static_cast<std::size_t>(pile_count), 0)});
    return;
  }
  std::vector<Stones> acc;
  emit_partitions(total, nonempty, 1, pile_cap, acc, fn, pile_count);
}

// C(values + k - 1, k), the number of size-k multisets over `values`
// symbols, saturated at `sat`.
std::uint64_t multiset_count(std::uint64_t values, int k, std::uint64_t sat) {
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (values + static_cast<std::uint64_t>(i) - 1) / static_cast<std::uint64_t>(i);
    if (r > sat) return sat + 1 == 0 ? sat : sat + 1;
  }
  return r > sat ? sat + 1 : static_cast<std::uint64_t>(r);
}

// A quick lower bound on the enumeration size, used to reject absurd bounds
// before enumerating anything.
std::uint64_t count_lower_bound(const BoundSpec& bound, std::uint64_t sat) {
  const int k = bound.pile_count;
  if (bound.mode == BoundSpec::Mode::max_pile)
    return multiset_count(bound.limit + 1, k, sat);  // exact in this mode
  const std::uint64_t per_pile = bound.limit / static_cast<std::uint64_t>(k);
  return multiset_count(per_pile + 1, k, sat);
}

}  // namespace

void for_each_position(const BoundSpec& bound,
                       const std::function<void(const Position&)>& fn) {
  if (bound.pile_count < 1) throw std::invalid_argument("pile_count must be positive");
  const int k = bound.pile_count;
  const bool per_pile = bound.mode == BoundSpec::Mode::max_pile;
  const std::uint64_t max_total =
      per_pile ? bound.limit * static_cast<std::uint64_t>(k) : bound.limit;
  for (std::uint64_t t = 0; t <= max_total; ++t) {
    for (int m = 0; m <= k; ++m) {
      for_each_layer(t, m, k, per_pile ? bound.limit : t, fn);
    }
  }
}

std::vector<Position> enumerate_positions(const BoundSpec& bound) {
  std::vector<Position> out;
  for_each_position(bound, [&out](const Position& p) { out.push_back(p); });
  return out;
}

GrundyTable retrograde_fill(const BoundSpec& bound, const Ruleset& rules,
                            const FillOptions& opts) {
  if (bound.pile_count < 1) throw std::invalid_argument("pile_count must be positive");
  if (count_lower_bound(bound, opts.entry_ceiling) > opts.entry_ceiling)
    throw ResourceLimitError("grundy table for bound " + std::string(to_string(bound.mode)) +
                             ":" + std::to_string(bound.limit) + " would exceed " +
                             std::to_string(opts.entry_ceiling) + " entries");

  GrundyTable table{rules, bound, {}};
  Solver side(rules);  // solves merge successors outside a max_pile bound
  const int k = bound.pile_count;
  const bool per_pile = bound.mode == BoundSpec::Mode::max_pile;
  const std::uint64_t max_total =
      per_pile ? bound.limit * static_cast<std::uint64_t>(k) : bound.limit;

  auto value_of = [&](const Position& p) -> Stones {
    const std::vector<Position> succ = legal_moves(p, rules);
    std::vector<Stones> values;
    values.reserve(succ.size());
    for (const Position& q : succ) {
      auto it = table.entries.find(q);
      if (it != table.entries.end()) {
        values.push_back(it->second);
      } else if (per_pile) {
        values.push_back(side.grundy(q));
      } else {
        throw std::logic_error("total_stones fill missed successor " + to_text(q));
      }
    }
    return mex(values);
  };

  std::uint64_t count = 0;
  std::vector<Position> layer;
  std::vector<Stones> values;
  for (std::uint64_t t = 0; t <= max_total; ++t) {
    for (int m = 0; m <= k; ++m) {
      layer.clear();
      for_each_layer(t, m, k, per_pile ? bound.limit : t,
                     [&layer](const Position& p) { layer.push_back(p); });
      if (layer.empty()) continue;
      count += layer.size();
      if (count > opts.entry_ceiling)
        throw ResourceLimitError("grundy table exceeds entry ceiling of " +
                                 std::to_string(opts.entry_ceiling));

      values.assign(layer.size(), 0);
      const int workers = std::max(1, opts.workers);
      if (workers == 1 || layer.size() < 64) {
        for (std::size_t i = 0; i < layer.size(); ++i) values[i] = value_of(layer[i]);
      } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
          const std::size_t lo = layer.size() * static_cast<std::size_t>(w) /
                                 static_cast<std::size_t>(workers);
          const std::size_t hi = layer.size() * static_cast<std::size_t>(w + 1) /
                                 static_cast<std::size_t>(workers);
          threads.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) values[i] = value_of(layer[i]);
          });
        }
        for (std::thread& th : threads) th.join();
      }
      auto hint = table.entries.end();
      for (std::size_t i = 0; i < layer.size(); ++i)
        hint = table.entries.emplace_hint(hint, layer[i], values[i]);
    }
  }
  return table;
}

Stones grundy_by_fill(const Position& p, const Ruleset& rules) {
  const Position c = canonicalize(p);
  const BoundSpec bound{BoundSpec::Mode::total_stones, total(c),
                        static_cast<int>(c.piles.size())};
  return retrograde_fill(bound, rules).entries.at(c);
}

}  // namespace amalnim
