#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <set>

#include "amalnim/verify.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace amalnim;

namespace {

Position pos(std::initializer_list<Stones> piles) { return Position{piles}; }

const Ruleset kRestricted{RuleKind::restricted, 2};

}  // namespace

TEST_CASE("main theorem sweep passes on a small bound") {
  const BoundSpec bound{BoundSpec::Mode::total_stones, 40, 3};
  const VerificationReport r = verify_main_theorem(bound);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.counterexamples.empty());
  CHECK(r.positions_checked == enumerate_positions(bound).size());
  CHECK(r.check_name == "theorem");
  CHECK(r.ruleset == kRestricted);
}

TEST_CASE("the empty board alone passes the zero-total sweep") {
  const VerificationReport r = verify_main_theorem({BoundSpec::Mode::total_stones, 0, 3});
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.positions_checked == 1);
}

TEST_CASE("two-pile sweep: P-positions are the diagonal") {
  const VerificationReport r = verify_two_pile(64);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.positions_checked == 65 * 66 / 2);
  CHECK(r.bound.pile_count == 2);
}

TEST_CASE("structure sweep passes and populates every family") {
  LemmaStructureStats stats;
  const VerificationReport r =
      verify_lemma_structure({BoundSpec::Mode::max_pile, 64, 3}, &stats);
  CHECK(r.verdict == Verdict::pass);
  CHECK(stats.digit_checks > 0);
  for (const auto& [subset, count] : stats.members) {
    CAPTURE(subset_name(subset));
    CHECK(count > 0);
  }
  CHECK_THROWS_AS(verify_lemma_structure({BoundSpec::Mode::total_stones, 64, 3}),
                  std::invalid_argument);
}

TEST_CASE("the only N02 members within 8 are (3,5,6) and its x,y swap") {
  std::set<std::array<Stones, 3>> members;
  for (Stones x = 0; x <= 8; ++x)
    for (Stones y = 0; y <= 8; ++y)
      for (Stones z = 0; z <= 8; ++z)
        if (in_N02(x, y, z)) members.insert({x, y, z});
  CHECK(members == std::set<std::array<Stones, 3>>{{3, 5, 6}, {5, 3, 6}});
}

TEST_CASE("P01 holds every (0,k,k)") {
  for (Stones k = 0; k <= 200; ++k) {
    CHECK(in_P01(0, k, k));
    CHECK(in_P01(k, 0, k));
  }
}

TEST_CASE("transition sweep passes and needs a move-closed bound") {
  const BoundSpec bound{BoundSpec::Mode::total_stones, 40, 3};
  const VerificationReport r = verify_lemma_transitions(bound);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.positions_checked == enumerate_positions(bound).size());
  CHECK_THROWS_AS(verify_lemma_transitions({BoundSpec::Mode::max_pile, 40, 3}),
                  std::invalid_argument);
}

TEST_CASE("a merge carries (2,4,6) into the P family") {
  const auto moves = legal_moves(pos({2, 4, 6}), kRestricted);
  CHECK(std::find(moves.begin(), moves.end(), pos({0, 6, 6})) != moves.end());
  CHECK(membership(pos({0, 6, 6})).subset == Subset::P01);
}

TEST_CASE("conjecture sweep is open at a small bound") {
  const VerificationReport r = check_conjecture({BoundSpec::Mode::max_pile, 16, 3});
  CHECK(r.verdict == Verdict::open);
  CHECK(r.counterexamples.empty());
  CHECK(r.positions_checked == 969);  // C(19,3)
}

TEST_CASE("sweeps are byte-identical for any worker split") {
  const BoundSpec bound{BoundSpec::Mode::total_stones, 30, 3};
  VerificationReport a = verify_main_theorem(bound, {.workers = 1});
  VerificationReport b = verify_main_theorem(bound, {.workers = 3});
  a.elapsed_ms = 0;
  b.elapsed_ms = 0;
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_text(a) == report_to_text(b));

  VerificationReport c = verify_lemma_transitions(bound, {.workers = 1});
  VerificationReport d = verify_lemma_transitions(bound, {.workers = 4});
  c.elapsed_ms = 0;
  d.elapsed_ms = 0;
  CHECK(report_to_json(c) == report_to_json(d));
}

TEST_CASE("report serialization carries every field in order") {
  VerificationReport r;
  r.check_name = "demo";
  r.ruleset = kRestricted;
  r.bound = {BoundSpec::Mode::total_stones, 5, 3};
  r.positions_checked = 7;
  r.counterexamples = {{pos({1, 2, 3}), "P", "N", "demo detail"}};
  r.elapsed_ms = 12;
  r.verdict = Verdict::fail;

  const std::string json = report_to_json(r);
  const auto parsed = nlohmann::json::parse(json);
  CHECK(parsed["check"] == "demo");
  CHECK(parsed["ruleset"] == "restricted");
  CHECK(parsed["threshold"] == 2);
  CHECK(parsed["bound"]["mode"] == "total_stones");
  CHECK(parsed["bound"]["limit"] == 5);
  CHECK(parsed["bound"]["piles"] == 3);
  CHECK(parsed["checked"] == 7);
  CHECK(parsed["verdict"] == "fail");
  CHECK(parsed["counterexamples"].size() == 1);
  CHECK(parsed["counterexamples"][0]["position"] == nlohmann::json({1, 2, 3}));
  CHECK(parsed["counterexamples"][0]["expected"] == "P");
  CHECK(parsed["counterexamples"][0]["actual"] == "N");
  CHECK(parsed["counterexamples"][0]["detail"] == "demo detail");
  CHECK(parsed["elapsed_ms"] == 12);
  std::size_t last = 0;
  for (const char* key : {"\"check\"", "\"ruleset\"", "\"threshold\"", "\"bound\"", "\"checked\"",
                          "\"verdict\"", "\"counterexamples\"", "\"elapsed_ms\""}) {
    const std::size_t at = json.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(at > last);
    last = at;
  }

  const std::string text = report_to_text(r);
  CHECK(text ==
        "check=demo verdict=fail ruleset=restricted threshold=2 bound=total_stones:5 piles=3 "
        "checked=7 counterexamples=1 elapsed_ms=12\n"
        "counterexample position=1,2,3 expected=P actual=N detail=demo detail\n");

  r.counterexamples.clear();
  r.verdict = Verdict::pass;
  CHECK(nlohmann::json::parse(report_to_json(r))["counterexamples"].is_array());
  r.verdict = Verdict::open;
  CHECK(nlohmann::json::parse(report_to_json(r))["verdict"] == "open");
}

TEST_CASE("write_report writes exactly the serialized form") {
  VerificationReport r = verify_two_pile(8);
  const auto path = std::filesystem::temp_directory_path() / "amalnim_report.json";
  write_report(r, path, ReportFormat::json);
  std::ifstream in(path, std::ios::binary);
  const std::string body{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  CHECK(body == report_to_json(r));
  std::filesystem::remove(path);
}

TEST_CASE("unrestricted P-position table") {
  const std::vector<Position> rows = unrestricted_p_positions(7, 16);
  const std::set<Position> set(rows.begin(), rows.end());
  for (Stones k = 0; k <= 16; ++k) CHECK(set.count(pos({0, k, k})) == 1);
  CHECK(set.count(pos({0, 1, 2})) == 0);
  for (const Position& p : rows) {
    // a zero pile reduces the game to two piles, so those rows are (0,k,k)
    if (p.piles[0] == 0) CHECK(p.piles[1] == p.piles[2]);
    // P-positions never reach P-positions in one move
    for (const Position& q : legal_moves(p, Ruleset{RuleKind::amalgamation, 2}))
      CHECK(set.count(q) == 0);
  }
  CHECK(std::is_sorted(rows.begin(), rows.end()));
}

TEST_CASE("P-position table matches the checked-in golden file") {
  const std::vector<Position> rows = unrestricted_p_positions(7, 40);
  const std::string text = p_positions_to_csv(rows, 7, 40);
  const std::filesystem::path golden =
      std::filesystem::path(AMALNIM_TEST_DATA_DIR) / "ppositions_small7_max40.csv";
  REQUIRE_MESSAGE(std::filesystem::exists(golden), "missing golden file ", golden.string());
  std::ifstream in(golden, std::ios::binary);
  const std::string body{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  CHECK(text == body);
}
