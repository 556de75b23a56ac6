#include "fairx/crypto/op_counter.hpp"

namespace fairx {

namespace {
struct Sink {
  OpCounter* counter = nullptr;
  Actor actor = Actor::None;
  Phase phase = Phase::None;
};
thread_local Sink tls_sink;
}  // namespace

std::string_view to_string(RsaOp op) {
  switch (op) {
    case RsaOp::Encrypt: return "encrypt";
    case RsaOp::Decrypt: return "decrypt";
    case RsaOp::Sign: return "sign";
    case RsaOp::Verify: return "verify";
    case RsaOp::ProtocolCheck: return "protocol-check";
  }
  return "?";
}

std::string_view to_string(Actor actor) {
  switch (actor) {
    case Actor::None: return "-";
    case Actor::A: return "A";
    case Actor::B: return "B";
    case Actor::Sttp: return "STTP";
  }
  return "?";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::None: return "-";
    case Phase::Setup: return "setup";
    case Phase::Exchange: return "exchange";
    case Phase::Dispute: return "dispute";
  }
  return "?";
}

void OpCounter::merge(const OpCounter& other) {
  for (const auto& [k, v] : other.counts_) counts_[k] += v;
}

std::uint64_t OpCounter::total(OpKind kind) const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : counts_) {
    if (k.kind == kind) n += v;
  }
  return n;
}

std::uint64_t OpCounter::total(OpKind kind, Phase phase) const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : counts_) {
    if (k.kind == kind && k.phase == phase) n += v;
  }
  return n;
}

std::uint64_t OpCounter::total(OpKind kind, Phase phase, Actor actor) const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : counts_) {
    if (k.kind == kind && k.phase == phase && k.actor == actor) n += v;
  }
  return n;
}

ScopedOps::ScopedOps(OpCounter& counter, Actor actor, Phase phase)
    : prev_counter_(tls_sink.counter), prev_actor_(tls_sink.actor), prev_phase_(tls_sink.phase) {
  tls_sink = Sink{&counter, actor, phase};
}

ScopedOps::~ScopedOps() { tls_sink = Sink{prev_counter_, prev_actor_, prev_phase_}; }

namespace ops {

void record_rsa(RsaOp op, std::string_view item) {
  if (tls_sink.counter == nullptr) return;
  tls_sink.counter->add(OpKey{tls_sink.phase, tls_sink.actor, OpKind::Rsa, op, std::string(item)});
}

void record_symmetric(std::string_view item) {
  if (tls_sink.counter == nullptr) return;
  tls_sink.counter->add(
      OpKey{tls_sink.phase, tls_sink.actor, OpKind::Symmetric, RsaOp::ProtocolCheck, std::string(item)});
}

void record_reduced_base() {
  if (tls_sink.counter == nullptr) return;
  tls_sink.counter->add(
      OpKey{tls_sink.phase, tls_sink.actor, OpKind::ReducedBase, RsaOp::ProtocolCheck, ""});
}

}  // namespace ops
}  // namespace fairx
