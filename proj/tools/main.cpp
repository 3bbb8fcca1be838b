// amalgam-nim: solver and verifier for three-pile Nim with restricted
// amalgamation. Subcommands: classify, solve, grundy, verify, table, play.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amalnim/classifier.hpp"
#include "amalnim/game.hpp"
#include "amalnim/solver.hpp"
#include "amalnim/table_io.hpp"
#include "amalnim/verify.hpp"

namespace {

using namespace amalnim;

Ruleset make_ruleset(const std::string& rules, std::uint64_t threshold) {
  const auto kind = rule_kind_from_string(rules);
  if (!kind) throw std::invalid_argument("unknown ruleset '" + rules + "'");
  if (threshold < 1) throw std::invalid_argument("--threshold must be at least 1");
  return Ruleset{*kind, threshold};
}

int cmd_classify(const std::string& pos_text) {
  const Position p = parse_position(pos_text);
  if (p.piles.size() != 3)
    throw std::invalid_argument("classify needs exactly 3 piles, got " +
                                std::to_string(p.piles.size()));
  const Membership m = membership(p);
  const Outcome outcome = is_p_subset(m.subset) ? Outcome::P : Outcome::N;
  std::string line = std::string(to_string(outcome)) + " (";
  if (m.subset == Subset::None) {
    line += "no matching subset";
  } else {
    line += subset_name(m.subset);
    if (m.witness) {
      const auto& w = *m.witness;
      line += " via witness (" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
              std::to_string(w[2]) + ") ∈ " +
              (m.subset == Subset::P11 ? "N_{0,1}" : "N_{0,2}");
    }
  }
  line += ")";
  std::cout << line << "\n";
  return 0;
}

int cmd_solve(const std::string& pos_text, const Ruleset& rules) {
  Solver solver(rules);
  std::cout << to_string(solver.outcome(parse_position(pos_text))) << "\n";
  return 0;
}

int cmd_grundy(const std::string& pos_text, const Ruleset& rules) {
  Solver solver(rules);
  std::cout << solver.grundy(parse_position(pos_text)) << "\n";
  return 0;
}

void print_summary(const VerificationReport& r) {
  std::cout << r.check_name << ": " << to_string(r.verdict) << " (checked "
            << r.positions_checked << " positions, " << r.counterexamples.size()
            << " counterexamples)\n";
  for (const Counterexample& cx : r.counterexamples) {
    std::cout << "  position=" << to_text(cx.position) << " expected=" << cx.expected
              << " actual=" << cx.actual << " detail=" << cx.detail << "\n";
  }
  std::cerr << "# " << r.check_name << " finished in " << r.elapsed_ms << " ms\n";
}

void write_reports(const std::vector<VerificationReport>& reports, const std::string& out_path,
                   const std::string& format) {
  if (out_path.empty()) return;
  const ReportFormat fmt = format == "text" ? ReportFormat::text : ReportFormat::json;
  if (reports.size() == 1) {
    write_report(reports[0], out_path, fmt);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  if (fmt == ReportFormat::text) {
    for (const VerificationReport& r : reports) out << report_to_text(r);
  } else {
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::string body = report_to_json(reports[i]);
      body.pop_back();  // trailing newline
      out << body << (i + 1 < reports.size() ? ",\n" : "\n");
    }
    out << "]\n";
  }
}

int finish_verify(const std::vector<VerificationReport>& reports, const std::string& out_path,
                  const std::string& format) {
  for (const VerificationReport& r : reports) print_summary(r);
  write_reports(reports, out_path, format);
  for (const VerificationReport& r : reports)
    if (r.verdict == Verdict::fail) return 1;
  return 0;
}

int cmd_table(const std::string& rules_name, std::uint64_t threshold,
              std::optional<std::uint64_t> max_total, std::optional<std::uint64_t> max_pile,
              const std::string& csv_path) {
  const Ruleset rules = make_ruleset(rules_name, threshold);
  if (max_total.has_value() == max_pile.has_value())
    throw std::invalid_argument("table needs exactly one of --max-total and --max-pile");
  BoundSpec bound;
  bound.mode = max_total ? BoundSpec::Mode::total_stones : BoundSpec::Mode::max_pile;
  bound.limit = max_total ? *max_total : *max_pile;
  const GrundyTable table = retrograde_fill(bound, rules);
  if (csv_path.empty()) {
    std::cout << table_to_string(table);
  } else {
    save_table(table, csv_path);
    std::cerr << "# wrote " << table.entries.size() << " entries to " << csv_path << "\n";
  }
  return 0;
}

int cmd_ppositions(std::uint64_t small_max, std::uint64_t max, const std::string& csv_path) {
  const std::vector<Position> rows = unrestricted_p_positions(small_max, max);
  const std::string text = p_positions_to_csv(rows, small_max, max);
  if (csv_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + csv_path + " for writing");
    out << text;
    std::cerr << "# wrote " << rows.size() << " P-positions to " << csv_path << "\n";
  }
  return 0;
}

// Interactive loop. Pile indices are 1-based in the order the user entered
// them; canonicalization stays internal.
int cmd_play(const std::string& pos_text, const Ruleset& rules) {
  std::vector<Stones> piles = parse_piles(pos_text);
  Solver solver(rules);

  const auto show = [&piles]() {
    std::cout << "Piles:";
    for (std::size_t i = 0; i < piles.size(); ++i)
      std::cout << ' ' << (i + 1) << ':' << piles[i];
    std::cout << "\n";
  };
  const auto done = [&piles]() {
    return std::all_of(piles.begin(), piles.end(), [](Stones s) { return s == 0; });
  };
  const auto target_is_p = [&](const Position& q) {
    if (rules.kind == RuleKind::restricted && rules.merge_threshold == 2 && q.piles.size() == 3)
      return classify(q) == Outcome::P;
    return solver.outcome(q) == Outcome::P;
  };

  if (done()) {
    std::cout << "All piles are already empty; nothing to play.\n";
    return 0;
  }

  std::string line;
  while (true) {
    show();
    std::cout << "Your move (take <k> from <pile> | merge <i> <j>): " << std::flush;
    if (!std::getline(std::cin, line)) {
      std::cout << "\nNo move entered; you resign. Engine wins!\n";
      return 0;
    }
    std::istringstream in(line);
    std::string verb;
    in >> verb;
    if (verb == "take") {
      std::uint64_t k = 0;
      std::string from;
      std::size_t pile = 0;
      if (!(in >> k >> from >> pile) || from != "from" || pile < 1 || pile > piles.size() ||
          k < 1 || k > piles[pile - 1]) {
        std::cout << "Illegal move.\n";
        continue;
      }
      piles[pile - 1] -= k;
      std::cout << "You take " << k << " from pile " << pile << ".\n";
    } else if (verb == "merge") {
      std::size_t i = 0, j = 0;
      if (!(in >> i >> j) || i < 1 || j < 1 || i > piles.size() || j > piles.size() || i == j ||
          !rules.merge_allowed(piles[i - 1], piles[j - 1])) {
        std::cout << "Illegal move.\n";
        continue;
      }
      piles[i - 1] += piles[j - 1];
      piles[j - 1] = 0;
      std::cout << "You merge piles " << i << " and " << j << ".\n";
    } else {
      std::cout << "Illegal move.\n";
      continue;
    }
    if (done()) {
      std::cout << "All piles are empty. You win!\n";
      return 0;
    }

    // engine replies: lexicographically smallest P successor, or the
    // smallest successor when every reply loses
    const Position current = canonicalize(Position{piles});
    const std::vector<Position> moves = legal_moves(current, rules);
    const Position* target = nullptr;
    for (const Position& q : moves) {
      if (target_is_p(q)) {
        target = &q;
        break;
      }
    }
    if (target == nullptr) target = &moves.front();

    bool applied = false;
    for (std::size_t i = 0; i < piles.size() && !applied; ++i) {
      for (Stones k = 1; k <= piles[i] && !applied; ++k) {
        std::vector<Stones> next = piles;
        next[i] -= k;
        if (canonicalize(Position{next}) == *target) {
          piles = std::move(next);
          std::cout << "Engine takes " << k << " from pile " << (i + 1) << ".\n";
          applied = true;
        }
      }
    }
    for (std::size_t i = 0; i < piles.size() && !applied; ++i) {
      for (std::size_t j = i + 1; j < piles.size() && !applied; ++j) {
        if (!rules.merge_allowed(piles[i], piles[j])) continue;
        std::vector<Stones> next = piles;
        next[i] += next[j];
        next[j] = 0;
        if (canonicalize(Position{next}) == *target) {
          piles = std::move(next);
          std::cout << "Engine merges piles " << (i + 1) << " and " << (j + 1) << ".\n";
          applied = true;
        }
      }
    }
    if (!applied) throw std::logic_error("engine move not realizable");  // unreachable
    if (done()) {
      std::cout << "All piles are empty. Engine wins!\n";
      return 0;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver and verifier for three-pile Nim with restricted amalgamation"};
  app.require_subcommand(1);

  std::string pos_text;
  std::string rules_name = "restricted";
  std::uint64_t threshold = 2;
  std::string out_path;
  std::string format = "json";
  std::string csv_path;

  const auto add_rules = [&](CLI::App* cmd) {
    cmd->add_option("--rules", rules_name, "classic, amalgamation or restricted")
        ->check(CLI::IsMember({"classic", "amalgamation", "restricted"}));
    cmd->add_option("--threshold", threshold, "merge threshold for restricted rules");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "closed-form P/N label for 3 piles");
  classify_cmd->add_option("--pos", pos_text, "position, e.g. 3,5,7")->required();

  CLI::App* solve_cmd = app.add_subcommand("solve", "exhaustive P/N outcome");
  solve_cmd->add_option("--pos", pos_text)->required();
  add_rules(solve_cmd);

  CLI::App* grundy_cmd = app.add_subcommand("grundy", "exhaustive Grundy value");
  grundy_cmd->add_option("--pos", pos_text)->required();
  add_rules(grundy_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification sweep");
  verify_cmd->require_subcommand(1);
  std::optional<std::uint64_t> max_total, max_pile;
  std::uint64_t two_pile_max = 256;
  CLI::App* theorem_cmd = verify_cmd->add_subcommand("theorem", "formula vs solver");
  CLI::App* lemmas_cmd =
      verify_cmd->add_subcommand("lemmas", "family structure and move transitions");
  CLI::App* two_pile_cmd =
      verify_cmd->add_subcommand("two-pile", "two-pile amalgamation diagonal");
  CLI::App* conjecture_cmd =
      verify_cmd->add_subcommand("conjecture", "grundy/nim-sum pairing sweep");
  for (CLI::App* cmd : {theorem_cmd, lemmas_cmd, conjecture_cmd}) {
    cmd->add_option("--max-total", max_total, "bound on total stones");
    cmd->add_option("--max-pile", max_pile, "bound on each pile");
  }
  two_pile_cmd->add_option("--max", two_pile_max, "largest pile checked");
  for (CLI::App* cmd : {theorem_cmd, lemmas_cmd, two_pile_cmd, conjecture_cmd}) {
    cmd->add_option("--out", out_path, "write the report here");
    cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
  }

  CLI::App* table_cmd = app.add_subcommand("table", "export a grundy table or P-position list");
  bool ppositions = false;
  std::uint64_t small_max = 7, pp_max = 40;
  add_rules(table_cmd);
  table_cmd->add_option("--max-total", max_total, "bound on total stones");
  table_cmd->add_option("--max-pile", max_pile, "bound on each pile");
  table_cmd->add_flag("--ppositions", ppositions,
                      "list unrestricted amalgamation P-positions instead");
  table_cmd->add_option("--small-max", small_max, "P-position list: cap on the smallest pile");
  table_cmd->add_option("--max", pp_max, "P-position list: cap on every pile");
  table_cmd->add_option("--csv", csv_path, "write to this file instead of stdout");

  CLI::App* play_cmd = app.add_subcommand("play", "interactive perfect-play opponent");
  play_cmd->add_option("--pos", pos_text)->required();
  add_rules(play_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  try {
    if (app.got_subcommand(classify_cmd)) return cmd_classify(pos_text);
    if (app.got_subcommand(solve_cmd))
      return cmd_solve(pos_text, make_ruleset(rules_name, threshold));
    if (app.got_subcommand(grundy_cmd))
      return cmd_grundy(pos_text, make_ruleset(rules_name, threshold));
    if (app.got_subcommand(play_cmd))
      return cmd_play(pos_text, make_ruleset(rules_name, threshold));
    if (app.got_subcommand(table_cmd)) {
      if (ppositions) return cmd_ppositions(small_max, pp_max, csv_path);
      return cmd_table(rules_name, threshold, max_total, max_pile, csv_path);
    }
    if (app.got_subcommand(verify_cmd)) {
      std::vector<VerificationReport> reports;
      if (verify_cmd->got_subcommand(theorem_cmd)) {
        if (max_total && max_pile)
          throw std::invalid_argument("theorem takes --max-total or --max-pile, not both");
        BoundSpec bound{BoundSpec::Mode::total_stones, max_total.value_or(150), 3};
        if (!max_total && max_pile) bound = {BoundSpec::Mode::max_pile, *max_pile, 3};
        reports.push_back(verify_main_theorem(bound));
      } else if (verify_cmd->got_subcommand(lemmas_cmd)) {
        const BoundSpec structure{BoundSpec::Mode::max_pile, max_pile.value_or(128), 3};
        const BoundSpec transitions{BoundSpec::Mode::total_stones, max_total.value_or(120), 3};
        LemmaStructureStats stats;
        reports.push_back(verify_lemma_structure(structure, &stats));
        for (const auto& [subset, count] : stats.members)
          std::cerr << "# " << subset_name(subset) << " members <= " << structure.limit << ": "
                    << count << "\n";
        std::cerr << "# digit relation checks: " << stats.digit_checks << "\n";
        reports.push_back(verify_lemma_transitions(transitions));
      } else if (verify_cmd->got_subcommand(two_pile_cmd)) {
        reports.push_back(verify_two_pile(two_pile_max));
      } else if (verify_cmd->got_subcommand(conjecture_cmd)) {
        if (max_total && max_pile)
          throw std::invalid_argument("conjecture takes --max-total or --max-pile, not both");
        BoundSpec bound{BoundSpec::Mode::max_pile, max_pile.value_or(48), 3};
        if (max_total && !max_pile) bound = {BoundSpec::Mode::total_stones, *max_total, 3};
        reports.push_back(check_conjecture(bound));
      }
      return finish_verify(reports, out_path, format);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
