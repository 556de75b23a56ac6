#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairx/protocol/messages.hpp"
#include "fairx/protocol/params.hpp"

namespace fairx {

struct Resolution {
  PartyId subject;
  std::optional<MessageDR2> to_subject;
  MessageDR3 to_requester;
};

struct Rejection {
  int failed_check = 0;  // 0: subject unknown to this STTP
  std::string reason;
};

using DisputeDecision = std::variant<Resolution, Rejection>;

// The offline arbiter. It keeps its own key, the registry of certificates it
// issued, and an audit log of dispute traffic; d_bt is rebuilt per request
// from W_bt and never retained. Safe to call from many sessions at once.
class SttpRole {
 public:
  SttpRole(SttpIdentity identity, std::shared_ptr<const CertRegistry> registry,
           ProtocolParams params = {}, SttpConduct conduct = {});

  DisputeDecision process_dr1(const PartyId& requester, const MessageDR1& msg);

  const RsaPublicKey& pk() const { return identity_.pk(); }
  const PartyId& id() const { return identity_.id; }

  // Serialized messages received and sent, in order.
  std::vector<Bytes> audit_log() const;

  // Everything the STTP holds after the fact: registry, audit log, and the
  // public half of its identity.
  Bytes state_snapshot() const;

 private:
  void log(const ExchangeMessage& msg);

  SttpIdentity identity_;
  std::shared_ptr<const CertRegistry> registry_;
  ProtocolParams params_;
  SttpConduct conduct_;
  mutable std::mutex mu_;
  std::vector<Bytes> audit_;
};

}  // namespace fairx
