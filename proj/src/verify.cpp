#include "amalnim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"

namespace amalnim {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::open: return "open";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

constexpr std::uint64_t kSweepCeiling = 100'000'000;

std::vector<Position> enumerate_capped(const BoundSpec& bound) {
  std::vector<Position> out;
  for_each_position(bound, [&out](const Position& p) {
    if (out.size() >= kSweepCeiling)
      throw ResourceLimitError("sweep enumeration exceeds " + std::to_string(kSweepCeiling) +
                               " positions");
    out.push_back(p);
  });
  return out;
}

// Keeps the lexicographically smallest `cap` counterexamples, which makes
// the reported set independent of how the sweep was partitioned.
class CxCollector {
 public:
  explicit CxCollector(std::size_t cap) : cap_(cap) {}

  void add(Counterexample cx) {
    set_.insert(std::move(cx));
    if (set_.size() > cap_) set_.erase(std::prev(set_.end()));
  }

  void merge(CxCollector&& other) {
    for (const Counterexample& cx : other.set_) add(cx);
  }

  bool empty() const { return set_.empty(); }

  std::vector<Counterexample> take() {
    return {std::make_move_iterator(set_.begin()), std::make_move_iterator(set_.end())};
  }

 private:
  std::size_t cap_;
  std::set<Counterexample> set_;
};

// Runs `check` over every item, splitting the range across workers. The
// merged result is identical to a sequential run.
template <typename Check>
CxCollector sweep(const std::vector<Position>& items, const SweepOptions& opts,
                  const Check& check) {
  const int workers = std::max(1, opts.workers);
  if (workers == 1 || items.size() < 256) {
    CxCollector out(opts.counterexample_cap);
    for (const Position& p : items) check(p, out);
    return out;
  }
  std::vector<CxCollector> parts(static_cast<std::size_t>(workers),
                                 CxCollector(opts.counterexample_cap));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo =
        items.size() * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
    const std::size_t hi =
        items.size() * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
    threads.emplace_back([&, lo, hi, w]() {
      for (std::size_t i = lo; i < hi; ++i) check(items[i], parts[static_cast<std::size_t>(w)]);
    });
  }
  for (std::thread& th : threads) th.join();
  CxCollector out(opts.counterexample_cap);
  for (CxCollector& part : parts) out.merge(std::move(part));
  return out;
}

VerificationReport finish_report(std::string name, Ruleset rules, BoundSpec bound,
                                 std::uint64_t checked, CxCollector&& cxs,
                                 Clock::time_point start, bool conjectural = false) {
  VerificationReport report;
  report.check_name = std::move(name);
  report.ruleset = rules;
  report.bound = bound;
  report.positions_checked = checked;
  report.counterexamples = cxs.take();
  report.verdict = report.counterexamples.empty()
                       ? (conjectural ? Verdict::open : Verdict::pass)
                       : Verdict::fail;
  report.elapsed_ms = ms_since(start);
  return report;
}

}  // namespace

VerificationReport verify_main_theorem(const BoundSpec& bound, const SweepOptions& opts) {
  if (bound.pile_count != 3)
    throw std::invalid_argument("main theorem check requires pile_count = 3");
  const auto start = Clock::now();
  const Ruleset rules{RuleKind::restricted, 2};
  const std::vector<Position> positions = enumerate_capped(bound);
  Solver solver(rules);
  CxCollector cxs = sweep(positions, opts, [&](const Position& p, CxCollector& out) {
    const Outcome formula = classify(p);
    const Outcome oracle = solver.outcome(p);
    if (formula != oracle) {
      out.add({p, to_string(oracle), to_string(formula),
               "formula subset " + std::string(subset_name(membership(p).subset)) +
                   " disagrees with exhaustive solver"});
    }
  });
  return finish_report("theorem", rules, bound, positions.size(), std::move(cxs), start);
}

VerificationReport verify_two_pile(Stones max_pile, const SweepOptions& opts) {
  const auto start = Clock::now();
  const Ruleset rules{RuleKind::amalgamation, 2};
  std::vector<Position> positions;
  positions.reserve(static_cast<std::size_t>((max_pile + 1) * (max_pile + 2) / 2));
  for (Stones x = 0; x <= max_pile; ++x)
    for (Stones y = x; y <= max_pile; ++y) positions.push_back(Position{{x, y}});
  Solver solver(rules);
  CxCollector cxs = sweep(positions, opts, [&](const Position& p, CxCollector& out) {
    const Outcome expected = p.piles[0] == p.piles[1] ? Outcome::P : Outcome::N;
    const Outcome actual = solver.outcome(p);
    if (expected != actual)
      out.add({p, to_string(expected), to_string(actual),
               "two-pile P-positions must be exactly the equal pairs"});
  });
  const BoundSpec bound{BoundSpec::Mode::max_pile, max_pile, 2};
  return finish_report("two-pile", rules, bound, positions.size(), std::move(cxs), start);
}

namespace {

std::string triple_text(Stones x, Stones y, Stones z) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
}

}  // namespace

VerificationReport verify_lemma_structure(const BoundSpec& bound, LemmaStructureStats* stats,
                                          const SweepOptions& opts) {
  if (bound.mode != BoundSpec::Mode::max_pile)
    throw std::invalid_argument("structure check takes a max_pile bound");
  if (bound.pile_count != 3)
    throw std::invalid_argument("structure check requires pile_count = 3");
  const auto start = Clock::now();
  const Stones limit = bound.limit;
  LemmaStructureStats local;
  LemmaStructureStats& st = stats ? *stats : local;
  st = LemmaStructureStats{};
  for (Subset s : {Subset::P01, Subset::P02, Subset::P11, Subset::P12, Subset::N01, Subset::N02})
    st.members[s] = 0;
  CxCollector cxs(opts.counterexample_cap);
  std::uint64_t checked = 0;

  // digit relation vs integer arithmetic on every zero-nim-sum triple with
  // x, y <= z <= limit
  for (Stones z = 0; z <= limit; ++z) {
    for (Stones x = 0; x <= z; ++x) {
      const Stones y = x ^ z;
      if (y > z) continue;
      ++st.digit_checks;
      ++checked;
      const DigitRelation rel = digit_relation(x, y, z);
      SumRelation arithmetic;
      if (x + y == z) arithmetic = SumRelation::equal_sum;
      else if (x + y == z + 2) arithmetic = SumRelation::sum_plus_two;
      else if (x + y > z + 2) arithmetic = SumRelation::sum_exceeds_two;
      else arithmetic = SumRelation::not_applicable;  // x+y = z + 2(x&y) rules this out
      if (rel.value != arithmetic) {
        cxs.add({Position{{x, y, z}}, to_string(arithmetic), to_string(rel.value),
                 "digit relation disagrees with arithmetic on " + triple_text(x, y, z)});
        continue;
      }
      if (rel.value == SumRelation::sum_exceeds_two) {
        const int j = rel.witness_bit.value_or(-1);
        const bool ok = j >= 1 && ((x >> j) & 1) == 1 && ((y >> j) & 1) == 1 &&
                        ((z >> j) & 1) == 0;
        if (!ok)
          cxs.add({Position{{x, y, z}}, "witness bit j>=1 with x_j=y_j=1, z_j=0",
                   "bit " + std::to_string(j), "bad witness on " + triple_text(x, y, z)});
      }
    }
  }

  // shape of every ordered family member with coordinates <= limit
  const auto violation = [&](Subset s, Stones x, Stones y, Stones z, const std::string& what) {
    cxs.add({Position{{x, y, z}}, what, triple_text(x, y, z),
             std::string(subset_name(s)) + " member breaks its shape clause"});
  };
  for (Stones x = 0; x <= limit; ++x) {
    for (Stones y = 0; y <= limit; ++y) {
      const Stones z = x ^ y;  // the only z giving nim-sum 0
      if (z <= limit) {
        if (in_P01(x, y, z)) {
          ++st.members[Subset::P01];
          ++checked;
          const bool shape = (x >= 1 && y >= 1 && z >= 1) || (x == 0 && y == z) ||
                             (y == 0 && x == z);
          if (!shape || (x + y + z) % 2 != 0)
            violation(Subset::P01, x, y, z, "positive coords or (0,k,k)/(k,0,k); even total");
        }
        if (in_P02(x, y, z)) {
          ++st.members[Subset::P02];
          ++checked;
          if (!(x >= 1 && y >= 1 && z >= 1 && (x + y + z) % 2 == 0))
            violation(Subset::P02, x, y, z, "positive coords and even total");
        }
        if (in_N01(x, y, z)) {
          ++st.members[Subset::N01];
          ++checked;
          if (!(x >= 2 && y >= 2 && z >= 4 && z >= x + 2 && z >= y + 2 && x + y == z))
            violation(Subset::N01, x, y, z, "x,y>=2, z>=4, z>=x+2, z>=y+2, x+y=z");
        }
        if (in_N02(x, y, z)) {
          ++st.members[Subset::N02];
          ++checked;
          if (!(x >= 3 && y >= 3 && x % 2 == 1 && y % 2 == 1 && z % 2 == 0 && z >= x + 1 &&
                z >= y + 1 && x + y == z + 2))
            violation(Subset::N02, x, y, z, "x,y>=3 odd, z even, z>=x+1, z>=y+1, x+y=z+2");
        }
      }
      const Stones w = z ^ 1;  // the only w giving nim-sum 1
      if (w <= limit) {
        if (in_P11(x, y, w)) {
          ++st.members[Subset::P11];
          ++checked;
          if (!(x >= 2 && y >= 2 && w >= 3 && w >= x + 1 && w >= y + 1 &&
                (x + y == w + 1 || x + y + 1 == w)))
            violation(Subset::P11, x, y, w, "x,y>=2, w>=3, w>=x+1, w>=y+1, |x+y-w|=1");
        }
        if (in_P12(x, y, w)) {
          ++st.members[Subset::P12];
          ++checked;
          if (!(x >= 3 && y >= 3 && w >= 3 && w >= x + 2 && w >= y + 2 && x + y == w + 1))
            violation(Subset::P12, x, y, w, "x,y,w>=3, w>=x+2, w>=y+2, x+y=w+1");
        }
      }
    }
  }

  const Ruleset rules{RuleKind::restricted, 2};
  return finish_report("lemma-structure", rules, bound, checked, std::move(cxs), start);
}

namespace {

// True when q is p with a single copy of an odd value v replaced by v-1;
// the shape every non-merge move between a P_0 and a P_1 member must have.
bool is_single_odd_decrement(const Position& p, const Position& q) {
  if (p.piles.size() != q.piles.size()) return false;
  std::vector<Stones> removed, added;
  std::size_t i = 0, j = 0;
  while (i < p.piles.size() && j < q.piles.size()) {
    if (p.piles[i] == q.piles[j]) {
      ++i;
      ++j;
    } else if (p.piles[i] < q.piles[j]) {
      removed.push_back(p.piles[i++]);
    } else {
      added.push_back(q.piles[j++]);
    }
  }
  removed.insert(removed.end(), p.piles.begin() + static_cast<std::ptrdiff_t>(i), p.piles.end());
  added.insert(added.end(), q.piles.begin() + static_cast<std::ptrdiff_t>(j), q.piles.end());
  return removed.size() == 1 && added.size() == 1 && removed[0] % 2 == 1 &&
         added[0] + 1 == removed[0];
}

bool in_p0(Subset s) { return s == Subset::P01 || s == Subset::P02; }
bool in_p1(Subset s) { return s == Subset::P11 || s == Subset::P12; }

}  // namespace

VerificationReport verify_lemma_transitions(const BoundSpec& bound, const SweepOptions& opts) {
  if (bound.mode != BoundSpec::Mode::total_stones)
    throw std::invalid_argument("transition check needs a move-closed total_stones bound");
  if (bound.pile_count != 3)
    throw std::invalid_argument("transition check requires pile_count = 3");
  const auto start = Clock::now();
  const Ruleset rules{RuleKind::restricted, 2};
  const std::vector<Position> positions = enumerate_capped(bound);
  CxCollector cxs = sweep(positions, opts, [&](const Position& p, CxCollector& out) {
    const Subset from = membership(p).subset;
    const std::vector<Position> succ = legal_moves(p, rules);
    if (is_p_subset(from)) {
      for (const Position& q : succ) {
        const Subset to = membership(q).subset;
        if (is_p_subset(to)) {
          out.add({p, "no successor in a P family",
                   std::string(subset_name(to)) + " at " + to_text(q),
                   std::string(subset_name(from)) + " member reaches a P member"});
        }
        // non-merge moves between P_0 and P_1 must drop one odd pile by 1
        const bool non_merge = total(q) < total(p);
        if (non_merge && ((in_p0(from) && in_p1(to)) || (in_p1(from) && in_p0(to))) &&
            !is_single_odd_decrement(p, q)) {
          out.add({p, "single decrement of an odd pile", to_text(q),
                   std::string(subset_name(from)) + " -> " + std::string(subset_name(to)) +
                       " move has the wrong shape"});
        }
      }
    } else {
      const bool reaches_p = std::any_of(succ.begin(), succ.end(), [](const Position& q) {
        return is_p_subset(membership(q).subset);
      });
      if (!reaches_p)
        out.add({p, "some successor in a P family", "none",
                 std::string(subset_name(from)) + " position cannot reach any P member"});
    }
  });
  return finish_report("lemma-transitions", rules, bound, positions.size(), std::move(cxs),
                       start);
}

VerificationReport check_conjecture(const BoundSpec& bound, const SweepOptions& opts) {
  if (bound.pile_count != 3)
    throw std::invalid_argument("conjecture check requires pile_count = 3");
  const auto start = Clock::now();
  const Ruleset rules{RuleKind::restricted, 2};
  const std::vector<Position> positions = enumerate_capped(bound);
  Solver solver(rules);
  CxCollector cxs = sweep(positions, opts, [&](const Position& p, CxCollector& out) {
    const Stones g = solver.grundy(p);
    const Stones s = nim_sum(p);
    if (g / 2 == s / 2) return;
    // a candidate counterexample must survive an independent bottom-up
    // recomputation before it is reported
    const Stones again = grundy_by_fill(p, rules);
    if (again != g)
      throw std::logic_error("solver self-inconsistency at " + to_text(p) + ": memoized " +
                             std::to_string(g) + ", refill " + std::to_string(again));
    out.add({p, "grundy in {" + std::to_string(s & ~Stones{1}) + "," +
                    std::to_string(s | Stones{1}) + "} (nim-sum " + std::to_string(s) + ")",
             "grundy " + std::to_string(g),
             "confirmed by independent bottom-up recomputation"});
  });
  return finish_report("conjecture", rules, bound, positions.size(), std::move(cxs), start,
                       /*conjectural=*/true);
}

std::vector<Position> unrestricted_p_positions(Stones small_heap_max, Stones other_max) {
  Solver solver(Ruleset{RuleKind::amalgamation, 2});
  std::vector<Position> rows;
  for (Stones a = 0; a <= std::min(small_heap_max, other_max); ++a)
    for (Stones b = a; b <= other_max; ++b)
      for (Stones c = b; c <= other_max; ++c)
        if (solver.outcome(Position{{a, b, c}}) == Outcome::P) rows.push_back(Position{{a, b, c}});
  return rows;  // already lexicographic
}

std::string p_positions_to_csv(const std::vector<Position>& rows, Stones small_heap_max,
                               Stones other_max) {
  std::string out = "# amalgam-nim ppositions v1; ruleset=amalgamation; piles=3; small_max=" +
                    std::to_string(small_heap_max) + "; max=" + std::to_string(other_max) + "\n";
  for (const Position& p : rows) {
    out += to_text(p);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["check"] = report.check_name;
  j["ruleset"] = to_string(report.ruleset.kind);
  j["threshold"] = report.ruleset.merge_threshold;
  j["bound"] = nlohmann::ordered_json{{"mode", to_string(report.bound.mode)},
                                      {"limit", report.bound.limit},
                                      {"piles", report.bound.pile_count}};
  j["checked"] = report.positions_checked;
  j["verdict"] = to_string(report.verdict);
  nlohmann::ordered_json cxs = nlohmann::ordered_json::array();
  for (const Counterexample& cx : report.counterexamples) {
    nlohmann::ordered_json c;
    c["position"] = cx.position.piles;
    c["expected"] = cx.expected;
    c["actual"] = cx.actual;
    c["detail"] = cx.detail;
    cxs.push_back(std::move(c));
  }
  j["counterexamples"] = std::move(cxs);
  j["elapsed_ms"] = report.elapsed_ms;
  return j.dump(2) + "\n";
}

std::string report_to_text(const VerificationReport& report) {
  std::string out = "check=" + report.check_name + " verdict=" + to_string(report.verdict) +
                    " ruleset=" + to_string(report.ruleset.kind) +
                    " threshold=" + std::to_string(report.ruleset.merge_threshold) +
                    " bound=" + to_string(report.bound.mode) + ":" +
                    std::to_string(report.bound.limit) +
                    " piles=" + std::to_string(report.bound.pile_count) +
                    " checked=" + std::to_string(report.positions_checked) +
                    " counterexamples=" + std::to_string(report.counterexamples.size()) +
                    " elapsed_ms=" + std::to_string(report.elapsed_ms) + "\n";
  for (const Counterexample& cx : report.counterexamples) {
    out += "counterexample position=" + to_text(cx.position) + " expected=" + cx.expected +
           " actual=" + cx.actual + " detail=" + cx.detail + "\n";
  }
  return out;
}

void write_report(const VerificationReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string text =
      format == ReportFormat::json ? report_to_json(report) : report_to_text(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace amalnim
