#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fairx/crypto/op_counter.hpp"
#include "fairx/harness/transcript.hpp"

namespace fairx {

struct Metrics {
  std::uint64_t exchange_messages = 0;
  std::uint64_t dispute_messages = 0;
  std::uint64_t rsa_ops_exchange = 0;
  std::map<Actor, std::uint64_t> rsa_exchange_by_actor;
  std::uint64_t sym_ops_exchange = 0;
  std::uint64_t rsa_ops_dispute = 0;
  std::uint64_t sym_ops_dispute = 0;
  std::uint64_t rsa_ops_setup = 0;
  std::uint64_t sym_ops_setup = 0;
  std::uint64_t reduced_bases = 0;
  // True if the STTP had to hear from P_b to settle a dispute.
  bool both_parties_in_dispute = false;
  OpCounter ops;
};

Metrics compute_metrics(const Transcript& transcript, const OpCounter& ops);

// One column of the comparison table, as printed.
struct ProtocolRow {
  std::string name;
  std::string exchange_messages;
  std::string dispute_messages;
  std::string rsa_exchange;
  std::string sym_exchange;
  std::string both_parties_in_dispute;
};

// Published figures: Zhang et al., Ray et al., ECH, and the claimed row for
// this protocol. Reference data only.
const std::vector<ProtocolRow>& published_rows();

inline constexpr std::uint64_t kClaimedRsaOpsExchange = 13;
inline constexpr std::uint64_t kZhangRsaOpsExchange = 16;
inline constexpr std::uint64_t kClaimedSymOpsExchange = 4;
inline constexpr std::uint64_t kClaimedExchangeMessages = 3;
inline constexpr std::uint64_t kClaimedDisputeMessages = 3;

struct AccountingLine {
  Actor actor;
  RsaOp op;
  std::string item;
  std::uint64_t count;
};

struct MetricsComparison {
  Metrics honest;
  std::optional<Metrics> dispute;
  ProtocolRow measured;
  std::vector<AccountingLine> accounting;  // exchange-phase RSA operations
  std::uint64_t pair_blocks = 0;
  // The honest count rewritten under single-block pair encryption, separate
  // checks 5 and 6, a fresh enc.pk_a(k_a) in E-M1 and no r_b check.
  std::int64_t single_block_equivalent = 0;
  std::vector<std::string> reconciliation;

  std::string text() const;
  std::string jsonl() const;
};

struct SessionOutcome;
MetricsComparison collect_metrics(const SessionOutcome& honest,
                                  const SessionOutcome* dispute = nullptr);

}  // namespace fairx
