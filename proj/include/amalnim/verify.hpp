#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "amalnim/classifier.hpp"
#include "amalnim/solver.hpp"

namespace amalnim {

// pass: a proven claim held on every enumerated position.
// open: a conjectured claim held on every enumerated position (still
//       unproven, so never better than open).
// fail: at least one counterexample.
enum class Verdict { pass, fail, open };
const char* to_string(Verdict v);

struct Counterexample {
  Position position;
  std::string expected;
  std::string actual;
  std::string detail;

  friend auto operator<=>(const Counterexample&, const Counterexample&) = default;
};

struct VerificationReport {
  std::string check_name;
  Ruleset ruleset;
  BoundSpec bound;
  std::uint64_t positions_checked = 0;
  // sorted lexicographically by position, capped at the sweep's
  // counterexample_cap (the lexicographically smallest ones are kept)
  std::vector<Counterexample> counterexamples;
  std::int64_t elapsed_ms = 0;
  Verdict verdict = Verdict::pass;
};

struct SweepOptions {
  int workers = 1;
  std::size_t counterexample_cap = 100;
};

// Formula vs. exhaustive solver on every canonical 3-pile position within
// the bound, restricted ruleset with merge threshold 2. Counterexamples
// carry both labels.
VerificationReport verify_main_theorem(const BoundSpec& bound, const SweepOptions& opts = {});

// Unrestricted amalgamation with two piles: P-positions are exactly the
// pairs of equal piles. Checks every 0 <= x <= y <= max_pile.
VerificationReport verify_two_pile(Stones max_pile, const SweepOptions& opts = {});

// Per-family member counts from a structure sweep; all six families must be
// populated at any bound of at least 13.
struct LemmaStructureStats {
  std::uint64_t digit_checks = 0;
  std::map<Subset, std::uint64_t> members;
};

// Structure of the classifier families, swept over every ordered member
// with coordinates within a max_pile bound:
//   - the digit-based sum relation agrees with integer arithmetic on every
//     zero-nim-sum triple x,y <= z <= limit;
//   - every family member satisfies its shape clauses (bounds, parities and
//     the exact x+y vs z relation).
VerificationReport verify_lemma_structure(const BoundSpec& bound,
                                          LemmaStructureStats* stats = nullptr,
                                          const SweepOptions& opts = {});

// Move structure of the P families over a move-closed total_stones bound,
// restricted ruleset:
//   (a) no position in a P family has a successor in a P family;
//   (b) every position outside the P families has a successor in one;
//   (c) any non-merge move between a P_0 and a P_1 member (either way)
//       lowers exactly one pile by exactly 1, from an odd value.
// Rejects max_pile bounds, which are not move-closed.
VerificationReport verify_lemma_transitions(const BoundSpec& bound,
                                            const SweepOptions& opts = {});

// Conjectured pairing between Grundy values and nim-sums: floor(g/2) ==
// floor(nim_sum/2) on every enumerated position, restricted ruleset.
// A mismatch is re-verified by an independent bottom-up recomputation
// before it is reported; the verdict is open when no counterexample
// survives.
VerificationReport check_conjecture(const BoundSpec& bound, const SweepOptions& opts = {});

// All P-positions of 3-pile unrestricted amalgamation with min pile at most
// small_heap_max and max pile at most other_max, computed by the solver and
// sorted lexicographically.
std::vector<Position> unrestricted_p_positions(Stones small_heap_max, Stones other_max);
std::string p_positions_to_csv(const std::vector<Position>& rows, Stones small_heap_max,
                               Stones other_max);

enum class ReportFormat { json, text };

// JSON object with fields in this order: check, ruleset, threshold, bound
// {mode, limit, piles}, checked, verdict, counterexamples [{position,
// expected, actual, detail}], elapsed_ms.
std::string report_to_json(const VerificationReport& report);

// One summary line, then one line per counterexample.
std::string report_to_text(const VerificationReport& report);

void write_report(const VerificationReport& report, const std::filesystem::path& path,
                  ReportFormat format);

}  // namespace amalnim
