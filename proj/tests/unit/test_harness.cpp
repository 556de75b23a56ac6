#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "golden.hpp"

#include "fairx/harness/matrix.hpp"

#include <set>

using namespace fairx;

namespace {

ScenarioConfig toy(std::uint64_t seed = 7) {
  ScenarioConfig c;
  c.rsa_bits = 64;
  c.seed = seed;
  return c;
}

const World& toy_world() {
  static const World w = make_world(toy());
  return w;
}

ScenarioResult run(const std::string& scenario) {
  return run_scenario(toy_world(), parse_scenario(scenario));
}

}  // namespace

TEST_CASE("same seed, same session") {
  ScenarioResult x = run_scenario(toy(3), {});
  ScenarioResult y = run_scenario(toy(3), {});
  CHECK(x.outcome.transcript == y.outcome.transcript);
  CHECK(x.outcome.metrics.ops.counts() == y.outcome.metrics.ops.counts());
  CHECK(to_text(x.outcome.transcript) == to_text(y.outcome.transcript));
  ScenarioResult z = run_scenario(toy(4), {});
  CHECK(x.outcome.transcript != z.outcome.transcript);
}

TEST_CASE("honest session metrics") {
  ScenarioResult r = run("honest");
  const Metrics& m = r.outcome.metrics;
  CHECK(r.verdict.classification == Verdict::BothObtained);
  CHECK(m.exchange_messages == 3);
  CHECK(m.dispute_messages == 0);
  CHECK(m.sym_ops_exchange == 4);
  CHECK(m.rsa_ops_dispute == 0);
  CHECK_FALSE(m.both_parties_in_dispute);
  REQUIRE(r.outcome.transcript.size() == 3);
  CHECK(r.outcome.transcript[0].type == MessageType::EM1);
  CHECK(r.outcome.transcript[0].from == Actor::B);
  CHECK(r.outcome.transcript[1].type == MessageType::EM2);
  CHECK(r.outcome.transcript[2].type == MessageType::EM3);
}

TEST_CASE("per-role counts add up to the totals") {
  for (const auto& name : {"honest", "B:withhold-EM3", "A:premature-dispute"}) {
    CAPTURE(name);
    const Metrics& m = run(name).outcome.metrics;
    std::uint64_t by_role = 0;
    for (auto [actor, n] : m.rsa_exchange_by_actor) by_role += n;
    CHECK(by_role == m.rsa_ops_exchange);
    std::uint64_t rsa = 0;
    for (Actor a : {Actor::A, Actor::B, Actor::Sttp}) {
      rsa += m.ops.total(OpKind::Rsa, Phase::Exchange, a);
    }
    CHECK(rsa == m.rsa_ops_exchange);
    CHECK(m.ops.total(OpKind::Rsa) ==
          m.rsa_ops_setup + m.rsa_ops_exchange + m.rsa_ops_dispute);
    CHECK(m.ops.total(OpKind::Symmetric) ==
          m.sym_ops_setup + m.sym_ops_exchange + m.sym_ops_dispute);
  }
}

TEST_CASE("withheld E-M3 is settled in three dispute messages") {
  ScenarioResult r = run("B:withhold-EM3");
  CHECK(r.verdict.classification == Verdict::BothObtained);
  CHECK(r.outcome.metrics.exchange_messages == 2);
  CHECK(r.outcome.metrics.dispute_messages == 3);
  CHECK_FALSE(r.outcome.metrics.both_parties_in_dispute);
  Transcript sttp = project(r.outcome.transcript, Actor::Sttp);
  REQUIRE(sttp.size() == 3);
  CHECK(sttp[0].type == MessageType::DR1);
  CHECK(sttp[1].type == MessageType::DR2);
  CHECK(sttp[1].to == Actor::B);
  CHECK(sttp[2].type == MessageType::DR3);
  CHECK(sttp[2].to == Actor::A);
}

TEST_CASE("fairness verdict classification") {
  SessionOutcome o;
  CHECK(evaluate_fairness(o).classification == Verdict::NeitherObtained);
  o.pa_has_db = true;
  CHECK(evaluate_fairness(o).classification == Verdict::Unfair);
  o.pb_has_da = true;
  CHECK(evaluate_fairness(o).classification == Verdict::BothObtained);
  o.pa_has_db = false;
  CHECK(evaluate_fairness(o).classification == Verdict::Unfair);
  CHECK(to_string(Verdict::Unfair) == "UNFAIR");
}

TEST_CASE("leak search finds planted secrets") {
  SessionOutcome o = run("B:withhold-EM3").outcome;
  CHECK(find_sttp_leaks(o).empty());
  Bytes planted = o.sttp_snapshot;
  for (auto b : o.secrets.doc_b) planted.push_back(b);
  SessionOutcome leaky = o;
  leaky.sttp_snapshot = planted;
  auto leaks = find_sttp_leaks(leaky);
  CHECK(std::find(leaks.begin(), leaks.end(), "D_b") != leaks.end());
}

TEST_CASE("scenario names parse back") {
  for (const auto& spec : scenario_matrix(true)) {
    CHECK(scenario_name(spec.behaviors) == spec.name);
    CHECK(parse_scenario(spec.name) == spec.behaviors);
  }
  CHECK(parse_scenario("honest").empty());
  CHECK_THROWS(parse_scenario("B:nonsense"));
  CHECK_THROWS(parse_scenario("B:malformed-EM1"));
}

TEST_CASE("matrix covers every deviation with no unfair outcome") {
  auto specs = scenario_matrix(false);
  std::set<AdversaryAction> actions;
  for (const auto& s : specs) {
    for (const auto& b : s.behaviors) actions.insert(b.action);
  }
  CHECK(actions.size() == 11);
  CHECK(specs.size() >= 12);
  MatrixReport report = run_matrix(toy_world(), specs, 4);
  CHECK(report.unfair_count() == 0);
  CHECK(report.leak_count() == 0);
  for (const auto& row : report.rows) {
    CAPTURE(row.spec.name);
    CHECK(row.verdict.classification != Verdict::Unfair);
  }
}

TEST_CASE("matrix report is stable") {
  MatrixReport report = run_matrix(toy(), true, 3);
  MatrixReport serial = run_matrix(toy(), true, 1);
  CHECK(report.text() == serial.text());
  CHECK(report.jsonl() == serial.jsonl());
  CHECK(matches_golden("matrix-64-seed7.txt", report.text()));
  CHECK(matches_golden("matrix-64-seed7.jsonl", report.jsonl()));
}

TEST_CASE("one certificate serves two sessions") {
  const World& w = toy_world();
  ScenarioResult first = run_scenario(w, parse_scenario("B:withhold-EM3"));
  World again = w;
  again.config.seed = w.config.seed + 100;  // fresh session randomness, same keys and C_bt
  ScenarioResult second = run_scenario(again, parse_scenario("B:withhold-EM3"));
  CHECK(again.cert == w.cert);
  CHECK(first.verdict.classification == Verdict::BothObtained);
  CHECK(second.verdict.classification == Verdict::BothObtained);
  CHECK(first.outcome.secrets.k_b != second.outcome.secrets.k_b);
}

TEST_CASE("transcript text round-trips") {
  Transcript t = run("B:corrupt-EM3").outcome.transcript;
  CHECK(parse_transcript(to_text(t)) == t);
  for (const auto& e : t) CHECK(TranscriptEntry::parse_line(e.line()) == e);
  CHECK_THROWS(TranscriptEntry::parse_line("B A E-M9 00"));
}

TEST_CASE("metrics report reconciles the exchange count") {
  ScenarioResult honest = run("honest");
  ScenarioResult dispute = run("B:withhold-EM3");
  MetricsComparison c = collect_metrics(honest.outcome, &dispute.outcome);
  std::uint64_t sum = 0;
  for (const auto& line : c.accounting) sum += line.count;
  CHECK(sum == c.honest.rsa_ops_exchange);
  CHECK(c.measured.exchange_messages == "3");
  CHECK(c.measured.dispute_messages == "3");
  CHECK(c.measured.sym_exchange == "4");
  CHECK(c.text().find("13") != std::string::npos);
  CHECK(published_rows().size() == 4);
}
