#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairx/harness/behavior.hpp"
#include "fairx/harness/metrics.hpp"
#include "fairx/harness/transcript.hpp"
#include "fairx/harness/world.hpp"
#include "fairx/protocol/party_a.hpp"
#include "fairx/protocol/party_b.hpp"

namespace fairx {

struct SessionOutcome {
  bool pa_has_db = false;
  bool pb_has_da = false;
  std::optional<std::string> abort_reason;
  Transcript transcript;
  Metrics metrics;

  PhaseA a_phase = PhaseA::Setup;
  PhaseB b_phase = PhaseB::Setup;
  int a_failed_check = 0;
  std::optional<int> sttp_rejection;  // failed check number when STTP refused
  bool sttp_misbehavior_detected = false;
  std::vector<std::string> notes;  // "A: ...", "B: ...", "STTP: ..."

  // What the STTP holds at quiescence, and the secrets it must not hold.
  Bytes sttp_snapshot;
  struct Secrets {
    BigInt k_a;
    BigInt k_b;
    BigInt x_b;
    Bytes doc_a;
    Bytes doc_b;
  } secrets;
};

enum class Verdict { BothObtained, NeitherObtained, Unfair };

std::string_view to_string(Verdict v);

struct FairnessVerdict {
  Verdict classification = Verdict::NeitherObtained;
  std::string detail;
};

FairnessVerdict evaluate_fairness(const SessionOutcome& outcome);

// Names of the STTP-forbidden values found in its snapshot.
std::vector<std::string> find_sttp_leaks(const SessionOutcome& outcome);

struct ScenarioResult {
  SessionOutcome outcome;
  FairnessVerdict verdict;
};

// Drives setup, exchange and any dispute to quiescence on a deterministic
// event queue. Messages are delivered in send order within a tick; each
// await timer fires `timeout_ticks` after it was armed.
ScenarioResult run_scenario(const World& world, const std::vector<AdversaryBehavior>& behaviors);
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::vector<AdversaryBehavior>& behaviors);

}  // namespace fairx
