#pragma once

#include <filesystem>
#include <optional>

#include "fairx/harness/transcript.hpp"
#include "fairx/protocol/party_a.hpp"
#include "fairx/protocol/party_b.hpp"
#include "fairx/wire/socket.hpp"

namespace fairx {

struct NetOptions {
  // Wall-clock stand-in for one await timer.
  int timeout_ms = 2000;
  // After P_a hangs up, how long P_b keeps listening for a DR-M2 push.
  int linger_ms = 300;
  std::size_t max_frame_bytes = kDefaultMaxFrameBytes;
};

struct NetRun {
  Transcript transcript;  // what this role sent and received
  SessionId session{};
  std::vector<std::string> log;
};

// P_b's side over one accepted peer connection. When `sttp` is set, P_b
// subscribes there for DR-M2 right after setup.
NetRun run_party_b(PartyB& b, Socket peer, const std::optional<Endpoint>& sttp,
                   const NetOptions& opts);

// P_a's side over one connection to P_b. The dispute session is written to
// `session_out` once E-M1 has been accepted.
NetRun run_party_a(PartyA& a, Socket peer, const std::optional<Endpoint>& sttp,
                   const NetOptions& opts,
                   const std::optional<std::filesystem::path>& session_out = std::nullopt);

struct DisputeReply {
  std::optional<MessageDR3> dr3;
  std::optional<WireError> error;
};

// One DR-M1 round trip with the STTP. nullopt fields on both sides mean the
// STTP never answered.
DisputeReply request_dispute(const Endpoint& sttp, const PartyId& requester,
                             const SessionId& session, const MessageDR1& dr1,
                             const NetOptions& opts);

}  // namespace fairx
