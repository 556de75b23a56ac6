#include "fairx/wire/service.hpp"

#include <fstream>
#include <iostream>

namespace fairx {

struct SttpService::Conn {
  explicit Conn(Socket s, std::size_t max) : channel(std::move(s), max) {}

  void send(const Frame& f) {
    std::lock_guard lock(send_mu);
    channel.send(f);
  }

  FrameChannel channel;
  std::mutex send_mu;
  std::optional<PartyId> party;
};

SttpService::SttpService(SttpIdentity identity, std::shared_ptr<const CertRegistry> registry,
                         ProtocolParams params, SttpConduct conduct, ServiceOptions options)
    : role_(std::move(identity), std::move(registry), params, conduct),
      options_(std::move(options)) {}

SttpService::~SttpService() {
  stop();
  std::vector<std::jthread> threads;
  {
    std::lock_guard lock(mu_);
    threads.swap(threads_);
  }
  threads.clear();  // joins
}

std::uint16_t SttpService::bind(const Endpoint& ep) {
  listener_ = Socket::listen(ep);
  return listener_.local_port();
}

void SttpService::serve() {
  while (!stopping_) {
    std::optional<Socket> s;
    try {
      s = listener_.accept(200);
    } catch (const TransportError& e) {
      if (stopping_) break;
      std::cerr << "sttp: accept failed: " << e.what() << "\n";
      continue;
    }
    if (!s) continue;
    auto conn = std::make_shared<Conn>(std::move(*s), options_.max_frame_bytes);
    std::lock_guard lock(mu_);
    if (stopping_) break;
    conns_.push_back(conn);
    threads_.emplace_back([this, conn] { handle(conn); });
  }
}

void SttpService::stop() {
  stopping_ = true;
  std::lock_guard lock(mu_);
  for (auto& c : conns_) c->channel.socket().shutdown();
}

Transcript SttpService::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

std::size_t SttpService::queued_dr2() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& [key, msgs] : queue_) n += msgs.size();
  return n;
}

void SttpService::record(const TranscriptEntry& entry) {
  std::lock_guard lock(mu_);
  transcript_.push_back(entry);
  if (options_.transcript_path) {
    std::ofstream out(*options_.transcript_path, std::ios::app);
    out << entry.line() << "\n";
  }
}

void SttpService::reply_error(Conn& conn, const SessionId& session, int check,
                              const std::string& reason) {
  try {
    conn.send(Frame{session, FrameTag::Error, WireError{check, reason}.serialize()});
  } catch (const TransportError&) {
  }
}

void SttpService::handle(std::shared_ptr<Conn> conn) {
  std::optional<RouteKey> subscription;
  try {
    for (;;) {
      std::optional<Frame> frame = conn->channel.receive(options_.idle_timeout_ms);
      if (!frame) {
        // Subscribers may idle as long as they like; requesters may not.
        if (subscription) continue;
        break;
      }
      if (frame->tag == FrameTag::Hello) {
        Hello hello = Hello::deserialize(frame->payload);
        conn->party = hello.party;
        RouteKey key{hello.party.value, frame->session};
        std::vector<MessageDR2> pending;
        {
          std::lock_guard lock(mu_);
          subscribers_[key] = conn;
          subscription = key;
          if (auto it = queue_.find(key); it != queue_.end()) {
            pending = std::move(it->second);
            queue_.erase(it);
          }
        }
        for (const auto& msg : pending) conn->send(message_frame(frame->session, msg));
        continue;
      }
      if (frame->tag != FrameTag::DR1) {
        reply_error(*conn, frame->session, -1,
                    "unexpected " + std::string(to_string(frame->tag)) + " frame");
        break;
      }
      if (!conn->party) {
        reply_error(*conn, frame->session, -1, "DR-M1 before Hello");
        break;
      }
      handle_dr1(*conn, *frame);
      break;  // one request per connection
    }
  } catch (const ConnectionClosed&) {
  } catch (const DecodeError& e) {
    reply_error(*conn, SessionId{}, -1, std::string("malformed input: ") + e.what());
  } catch (const std::exception& e) {
    std::cerr << "sttp: connection dropped: " << e.what() << "\n";
  }
  if (subscription) {
    std::lock_guard lock(mu_);
    auto it = subscribers_.find(*subscription);
    if (it != subscribers_.end() && it->second.lock() == conn) subscribers_.erase(it);
  }
  conn->channel.socket().shutdown();
}

void SttpService::handle_dr1(Conn& conn, const Frame& frame) {
  MessageDR1 msg;
  try {
    msg = std::get<MessageDR1>(frame_message(frame));
  } catch (const DecodeError& e) {
    reply_error(conn, frame.session, -1, std::string("malformed DR-M1: ") + e.what());
    return;
  }
  record({Actor::A, Actor::Sttp, MessageType::DR1, serialize_message(msg)});
  DisputeDecision decision = role_.process_dr1(*conn.party, msg);
  if (auto* rej = std::get_if<Rejection>(&decision)) {
    reply_error(conn, frame.session, rej->failed_check, rej->reason);
    return;
  }
  auto& res = std::get<Resolution>(decision);
  if (res.to_subject) {
    record({Actor::Sttp, Actor::B, MessageType::DR2, serialize_message(*res.to_subject)});
    deliver_dr2(res.subject, frame.session, *res.to_subject);
  }
  record({Actor::Sttp, Actor::A, MessageType::DR3, serialize_message(res.to_requester)});
  conn.send(message_frame(frame.session, res.to_requester));
}

void SttpService::deliver_dr2(const PartyId& subject, const SessionId& session,
                              const MessageDR2& msg) {
  RouteKey key{subject.value, session};
  std::shared_ptr<Conn> target;
  {
    std::lock_guard lock(mu_);
    if (auto it = subscribers_.find(key); it != subscribers_.end()) target = it->second.lock();
    if (!target) {
      queue_[key].push_back(msg);
      return;
    }
  }
  try {
    target->send(message_frame(session, msg));
  } catch (const TransportError&) {
    std::lock_guard lock(mu_);
    queue_[key].push_back(msg);
  }
}

}  // namespace fairx
