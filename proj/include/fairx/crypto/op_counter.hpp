#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

namespace fairx {

enum class RsaOp : std::uint8_t { Encrypt, Decrypt, Sign, Verify, ProtocolCheck };
enum class Actor : std::uint8_t { None, A, B, Sttp };
enum class Phase : std::uint8_t { None, Setup, Exchange, Dispute };
enum class OpKind : std::uint8_t { Rsa, Symmetric, ReducedBase };

std::string_view to_string(RsaOp op);
std::string_view to_string(Actor actor);
std::string_view to_string(Phase phase);

struct OpKey {
  Phase phase = Phase::None;
  Actor actor = Actor::None;
  OpKind kind = OpKind::Rsa;
  RsaOp op = RsaOp::ProtocolCheck;  // meaningful for OpKind::Rsa only
  std::string item;

  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

// Session-local tally of instrumented primitive calls. Not thread-safe: one
// counter belongs to one session, and sessions are merged with merge().
class OpCounter {
 public:
  void add(const OpKey& key, std::uint64_t n = 1) { counts_[key] += n; }
  void merge(const OpCounter& other);

  const std::map<OpKey, std::uint64_t>& counts() const { return counts_; }

  std::uint64_t total(OpKind kind) const;
  std::uint64_t total(OpKind kind, Phase phase) const;
  std::uint64_t total(OpKind kind, Phase phase, Actor actor) const;

 private:
  std::map<OpKey, std::uint64_t> counts_;
};

// Installs `counter` as the sink for instrumented calls on this thread and
// tags them with (actor, phase). Scopes nest; the previous sink is restored
// on destruction. Calls made with no sink installed are not counted.
class ScopedOps {
 public:
  ScopedOps(OpCounter& counter, Actor actor, Phase phase);
  ~ScopedOps();
  ScopedOps(const ScopedOps&) = delete;
  ScopedOps& operator=(const ScopedOps&) = delete;

 private:
  OpCounter* prev_counter_;
  Actor prev_actor_;
  Phase prev_phase_;
};

namespace ops {
void record_rsa(RsaOp op, std::string_view item);
void record_symmetric(std::string_view item);
void record_reduced_base();
}  // namespace ops

}  // namespace fairx
