#include "fairx/harness/simulator.hpp"

#include <functional>
#include <queue>

#include "fairx/crypto/canonical.hpp"
#include "fairx/protocol/sttp.hpp"

namespace fairx {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BothObtained: return "both-obtained";
    case Verdict::NeitherObtained: return "neither-obtained";
    case Verdict::Unfair: return "UNFAIR";
  }
  return "?";
}

FairnessVerdict evaluate_fairness(const SessionOutcome& o) {
  FairnessVerdict v;
  if (o.pa_has_db && o.pb_has_da) {
    v.classification = Verdict::BothObtained;
  } else if (!o.pa_has_db && !o.pb_has_da) {
    v.classification = Verdict::NeitherObtained;
  } else {
    v.classification = Verdict::Unfair;
  }
  v.detail = std::string("P_a ") + (o.pa_has_db ? "holds" : "lacks") + " D_b, P_b " +
             (o.pb_has_da ? "holds" : "lacks") + " D_a";
  return v;
}

std::vector<std::string> find_sttp_leaks(const SessionOutcome& o) {
  // Short values would match by accident, so they only count when they
  // appear as a whole length-prefixed field.
  auto needle = [](Bytes raw) {
    if (raw.size() >= 8) return raw;
    return CanonicalWriter().bytes(raw).take();
  };
  const std::pair<const char*, Bytes> secrets[] = {
      {"k_a", needle(int_to_bytes(o.secrets.k_a))},
      {"k_b", needle(int_to_bytes(o.secrets.k_b))},
      {"X_b", needle(int_to_bytes(o.secrets.x_b))},
      {"D_a", needle(o.secrets.doc_a)},
      {"D_b", needle(o.secrets.doc_b)},
  };
  std::vector<std::string> found;
  for (const auto& [name, bytes] : secrets) {
    if (!bytes.empty() && contains_subsequence(o.sttp_snapshot, bytes)) found.emplace_back(name);
  }
  return found;
}

namespace {

struct Event {
  std::uint64_t tick;
  std::uint64_t seq;
  std::function<void()> fire;
};

struct Later {
  bool operator()(const Event& x, const Event& y) const {
    return std::tie(x.tick, x.seq) > std::tie(y.tick, y.seq);
  }
};

class Simulation {
 public:
  Simulation(const World& w, const RoleConducts& c)
      : world_(w),
        a_(PartyAConfig{w.a_id, w.a_keys, w.b_id, w.b_keys.pub, w.sttp.pk(), w.doc_a,
                        w.config.params()},
           Rng(w.config.seed, "party-a"), c.a),
        b_(PartyBConfig{w.b_id, w.b_keys, w.a_id, w.a_keys.pub, w.sttp.pk(), w.cert, w.doc_b,
                        w.config.params()},
           Rng(w.config.seed, "party-b"), c.b),
        sttp_(w.sttp, w.registry, w.config.params(), c.sttp) {}

  SessionOutcome run() {
    {
      ScopedOps b_ops(ops_, Actor::B, Phase::Setup);
      offer_ = b_.make_offer();
    }
    SetupReply reply;
    {
      ScopedOps a_ops(ops_, Actor::A, Phase::Setup);
      reply = a_.accept_offer(offer_);
    }
    {
      ScopedOps b_ops(ops_, Actor::B, Phase::Setup);
      b_.accept_reply(reply);
    }
    at(0, [this] {
      MessageEM1 em1;
      {
        ScopedOps s(ops_, Actor::B, Phase::Exchange);
        em1 = b_.build_em1();
      }
      send(Actor::B, Actor::A, em1);
      arm([this] { b_.on_em2_timeout(); });
    });
    while (!queue_.empty()) {
      Event e = queue_.top();
      queue_.pop();
      now_ = e.tick;
      e.fire();
    }
    return finish();
  }

 private:
  void at(std::uint64_t tick, std::function<void()> fn) {
    queue_.push(Event{tick, seq_++, std::move(fn)});
  }
  void arm(std::function<void()> fn) { at(now_ + world_.config.timeout_ticks, std::move(fn)); }

  // Messages travel as bytes and are parsed on arrival.
  void send(Actor from, Actor to, const ExchangeMessage& msg) {
    TranscriptEntry entry{from, to, type_of(msg), serialize_message(msg)};
    transcript_.push_back(entry);
    at(now_, [this, to, bytes = entry.bytes] { deliver(to, deserialize_message(bytes)); });
  }

  void deliver(Actor to, const ExchangeMessage& msg) {
    if (to == Actor::A) {
      std::visit([this](const auto& m) { on_a(m); }, msg);
    } else if (to == Actor::B) {
      std::visit([this](const auto& m) { on_b(m); }, msg);
    } else {
      std::visit([this](const auto& m) { on_sttp(m); }, msg);
    }
  }

  void dispute(const std::optional<MessageDR1>& dr1) {
    if (!dr1) return;
    send(Actor::A, Actor::Sttp, *dr1);
    arm([this] { a_.on_dr3_timeout(); });
  }

  void on_a(const MessageEM1& m) {
    Em1Outcome out;
    {
      ScopedOps s(ops_, Actor::A, Phase::Exchange);
      out = a_.process_em1(m);
    }
    if (out.em2) {
      send(Actor::A, Actor::B, *out.em2);
      arm([this] {
        std::optional<MessageDR1> dr1;
        {
          ScopedOps s(ops_, Actor::A, Phase::Dispute);
          dr1 = a_.on_em3_timeout();
        }
        dispute(dr1);
      });
    }
    dispute(out.dr1);
  }
  void on_a(const MessageEM3& m) {
    Em3Outcome out;
    {
      ScopedOps s(ops_, Actor::A, Phase::Exchange);
      out = a_.process_em3(m);
    }
    dispute(out.dr1);
  }
  void on_a(const MessageDR3& m) {
    ScopedOps s(ops_, Actor::A, Phase::Dispute);
    a_.process_dr3(m);
  }
  template <typename M>
  void on_a(const M&) {
    throw ProtocolError("unexpected message routed to P_a");
  }

  void on_b(const MessageEM2& m) {
    std::optional<MessageEM3> em3;
    {
      ScopedOps s(ops_, Actor::B, Phase::Exchange);
      em3 = b_.process_em2(m);
    }
    if (em3) send(Actor::B, Actor::A, *em3);
  }
  void on_b(const MessageDR2& m) {
    ScopedOps s(ops_, Actor::B, Phase::Dispute);
    b_.process_dr2(m);
  }
  template <typename M>
  void on_b(const M&) {
    throw ProtocolError("unexpected message routed to P_b");
  }

  void on_sttp(const MessageDR1& m) {
    DisputeDecision decision;
    {
      ScopedOps s(ops_, Actor::Sttp, Phase::Dispute);
      decision = sttp_.process_dr1(a_.id(), m);
    }
    if (auto* res = std::get_if<Resolution>(&decision)) {
      if (res->to_subject) send(Actor::Sttp, Actor::B, *res->to_subject);
      send(Actor::Sttp, Actor::A, res->to_requester);
    } else {
      const auto& rej = std::get<Rejection>(decision);
      sttp_rejection_ = rej.failed_check;
      sttp_notes_.push_back("rejected DR-M1 at check " + std::to_string(rej.failed_check) + ": " +
                            rej.reason);
      at(now_, [this, rej] { a_.process_sttp_error(rej.failed_check, rej.reason); });
    }
  }
  template <typename M>
  void on_sttp(const M&) {
    throw ProtocolError("unexpected message routed to the STTP");
  }

  SessionOutcome finish() {
    SessionOutcome o;
    o.pa_has_db = a_.received_document() && *a_.received_document() == world_.doc_b;
    o.pb_has_da = b_.received_document() && *b_.received_document() == world_.doc_a;
    o.transcript = transcript_;
    o.metrics = compute_metrics(transcript_, ops_);
    o.a_phase = a_.phase();
    o.b_phase = b_.phase();
    o.a_failed_check = a_.failed_check();
    o.sttp_rejection = sttp_rejection_;
    o.sttp_misbehavior_detected = a_.sttp_misbehaved();
    for (const auto& n : a_.notes()) o.notes.push_back("A: " + n);
    for (const auto& n : b_.notes()) o.notes.push_back("B: " + n);
    for (const auto& n : sttp_notes_) o.notes.push_back("STTP: " + n);
    if (o.a_failed_check != 0) {
      o.abort_reason = "P_a aborted: E-M1 check " + std::to_string(o.a_failed_check) + " failed";
    } else if (sttp_rejection_) {
      o.abort_reason = "STTP rejected DR-M1 at check " + std::to_string(*sttp_rejection_);
    } else if (o.sttp_misbehavior_detected) {
      o.abort_reason = "P_a detected an inconsistent DR-M3 (STTP misbehavior)";
    } else if (a_.phase() == PhaseA::WalkedAway) {
      o.abort_reason = "P_a walked away after E-M1";
    } else if (a_.phase() == PhaseA::Unresolved) {
      o.abort_reason = "dispute unresolved";
    }
    o.sttp_snapshot = sttp_.state_snapshot();
    o.secrets.k_a = b_.k_a().k;
    o.secrets.k_b = b_.k_b().k;
    if (b_.vre()) o.secrets.x_b = b_.vre()->pub.x_b;
    o.secrets.doc_a = world_.doc_a;
    o.secrets.doc_b = world_.doc_b;
    return o;
  }

  const World& world_;
  PartyA a_;
  PartyB b_;
  SttpRole sttp_;
  OpCounter ops_;
  SetupOffer offer_;
  Transcript transcript_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t now_ = 0;
  std::uint64_t seq_ = 0;
  std::optional<int> sttp_rejection_;
  std::vector<std::string> sttp_notes_;
};

}  // namespace

ScenarioResult run_scenario(const World& world, const std::vector<AdversaryBehavior>& behaviors) {
  RoleConducts conducts = conducts_for(behaviors);
  Simulation sim(world, conducts);
  ScenarioResult r;
  r.outcome = sim.run();
  r.verdict = evaluate_fairness(r.outcome);
  return r;
}

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::vector<AdversaryBehavior>& behaviors) {
  return run_scenario(make_world(config), behaviors);
}

}  // namespace fairx
