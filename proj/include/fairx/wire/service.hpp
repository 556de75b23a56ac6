#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "fairx/harness/transcript.hpp"
#include "fairx/protocol/sttp.hpp"
#include "fairx/wire/socket.hpp"

namespace fairx {

struct ServiceOptions {
  std::size_t max_frame_bytes = kDefaultMaxFrameBytes;
  // How long a connection may sit mid-request before it is dropped.
  int idle_timeout_ms = 30000;
  // Dispute traffic is appended here as transcript lines when set.
  std::optional<std::filesystem::path> transcript_path;
};

// The STTP as a network service. Every connection introduces itself with a
// Hello frame. A requester then sends one DR-M1 and gets DR-M3 or an error
// frame back; a subject stays connected to receive DR-M2 pushes for the
// session named in its Hello frame. DR-M2 for a subject that is not
// connected waits in a queue until it says Hello.
class SttpService {
 public:
  SttpService(SttpIdentity identity, std::shared_ptr<const CertRegistry> registry,
              ProtocolParams params = {}, SttpConduct conduct = {}, ServiceOptions options = {});
  ~SttpService();

  // Binds and returns the bound port (useful with port 0).
  std::uint16_t bind(const Endpoint& ep);
  // Accepts until stop(). Each connection gets its own thread.
  void serve();
  void stop();

  Transcript transcript() const;
  std::size_t queued_dr2() const;
  const SttpRole& role() const { return role_; }

 private:
  struct Conn;
  using RouteKey = std::pair<std::string, SessionId>;

  void handle(std::shared_ptr<Conn> conn);
  void handle_dr1(Conn& conn, const Frame& frame);
  void deliver_dr2(const PartyId& subject, const SessionId& session, const MessageDR2& msg);
  void record(const TranscriptEntry& entry);
  void reply_error(Conn& conn, const SessionId& session, int check, const std::string& reason);

  SttpRole role_;
  ServiceOptions options_;
  Socket listener_;
  std::atomic<bool> stopping_{false};

  mutable std::mutex mu_;
  std::map<RouteKey, std::weak_ptr<Conn>> subscribers_;
  std::map<RouteKey, std::vector<MessageDR2>> queue_;
  std::vector<std::shared_ptr<Conn>> conns_;
  std::vector<std::jthread> threads_;
  Transcript transcript_;
};

}  // namespace fairx
