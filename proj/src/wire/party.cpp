#include "fairx/wire/party.hpp"

#include <poll.h>

#include "fairx/wire/files.hpp"

namespace fairx {

namespace {

using Clock = std::chrono::steady_clock;

Clock::time_point after(int ms) { return Clock::now() + std::chrono::milliseconds(ms); }

Frame expect_control(FrameChannel& ch, FrameTag tag, int timeout_ms) {
  auto f = ch.receive(timeout_ms);
  if (!f) throw TransportError("timed out waiting for " + std::string(to_string(tag)));
  if (f->tag != tag) {
    throw ProtocolError("expected " + std::string(to_string(tag)) + ", got " +
                        std::string(to_string(f->tag)));
  }
  return *f;
}

template <typename M>
std::optional<M> expect_message(FrameChannel& ch, const Frame& f) {
  if (f.tag == FrameTag::Error) return std::nullopt;
  ExchangeMessage msg = frame_message(f);
  if (auto* m = std::get_if<M>(&msg)) return *m;
  throw ProtocolError("unexpected " + std::string(to_string(type_of(msg))));
  (void)ch;
}

void log_to(NetRun& run, Actor from, Actor to, const ExchangeMessage& msg) {
  run.transcript.push_back({from, to, type_of(msg), serialize_message(msg)});
}

}  // namespace

DisputeReply request_dispute(const Endpoint& sttp, const PartyId& requester,
                             const SessionId& session, const MessageDR1& dr1,
                             const NetOptions& opts) {
  DisputeReply reply;
  FrameChannel ch(Socket::connect(sttp, opts.timeout_ms), opts.max_frame_bytes);
  ch.send(Frame{session, FrameTag::Hello, Hello{requester}.serialize()});
  ch.send(message_frame(session, dr1));
  std::optional<Frame> f;
  try {
    f = ch.receive(opts.timeout_ms);
  } catch (const ConnectionClosed&) {
    return reply;
  }
  if (!f) return reply;
  if (f->tag == FrameTag::Error) {
    reply.error = WireError::deserialize(f->payload);
    return reply;
  }
  ExchangeMessage msg = frame_message(*f);
  if (auto* dr3 = std::get_if<MessageDR3>(&msg)) reply.dr3 = *dr3;
  return reply;
}

NetRun run_party_b(PartyB& b, Socket peer_socket, const std::optional<Endpoint>& sttp,
                   const NetOptions& opts) {
  NetRun run;
  FrameChannel peer(std::move(peer_socket), opts.max_frame_bytes);
  peer.send(Frame{SessionId{}, FrameTag::SetupOffer, b.make_offer().serialize()});
  Frame reply = expect_control(peer, FrameTag::SetupReply, opts.timeout_ms);
  b.accept_reply(SetupReply::deserialize(reply.payload));
  run.session = session_id_for(b.advertisement());

  std::optional<FrameChannel> sttp_ch;
  if (sttp) {
    try {
      sttp_ch.emplace(Socket::connect(*sttp, opts.timeout_ms), opts.max_frame_bytes);
      sttp_ch->send(Frame{run.session, FrameTag::Hello, Hello{b.id()}.serialize()});
    } catch (const TransportError& e) {
      run.log.push_back(std::string("STTP unreachable, DR-M2 stays queued: ") + e.what());
      sttp_ch.reset();
    }
  }

  MessageEM1 em1 = b.build_em1();
  peer.send(message_frame(run.session, em1));
  log_to(run, Actor::B, Actor::A, em1);

  auto take_dr2 = [&](const Frame& f) {
    if (auto dr2 = expect_message<MessageDR2>(*sttp_ch, f)) {
      log_to(run, Actor::Sttp, Actor::B, *dr2);
      b.process_dr2(*dr2);
    }
  };

  // Wait for E-M2, then for P_a to hang up, taking any DR-M2 pushed by the
  // STTP on the way.
  bool peer_open = true;
  bool em2_window = true;
  auto em2_deadline = after(opts.timeout_ms);
  auto hard_deadline = after(opts.timeout_ms * 4 + opts.linger_ms);
  while (peer_open && Clock::now() < hard_deadline) {
    pollfd fds[2] = {{peer.socket().fd(), POLLIN, 0},
                     {sttp_ch ? sttp_ch->socket().fd() : -1, POLLIN, 0}};
    int wait = remaining_ms(em2_window ? em2_deadline : hard_deadline);
    ::poll(fds, 2, std::max(wait, 1));
    if (em2_window && Clock::now() >= em2_deadline) {
      b.on_em2_timeout();
      em2_window = false;
    }
    if (fds[1].revents != 0) {
      try {
        if (auto f = sttp_ch->receive(0)) take_dr2(*f);
      } catch (const ConnectionClosed&) {
        sttp_ch.reset();
      }
    }
    if (fds[0].revents != 0) {
      try {
        while (auto f = peer.receive(0)) {
          ExchangeMessage msg = frame_message(*f);
          log_to(run, Actor::A, Actor::B, msg);
          if (auto* em2 = std::get_if<MessageEM2>(&msg)) {
            em2_window = false;
            if (auto em3 = b.process_em2(*em2)) {
              peer.send(message_frame(run.session, *em3));
              log_to(run, Actor::B, Actor::A, *em3);
            }
          }
        }
      } catch (const ConnectionClosed&) {
        peer_open = false;
        if (em2_window) b.on_em2_timeout();
      }
    }
  }
  // P_a has gone; a DR-M2 sent just before may still be in flight.
  auto linger = after(opts.linger_ms);
  while (sttp_ch && Clock::now() < linger) {
    try {
      auto f = sttp_ch->receive(remaining_ms(linger));
      if (!f) break;
      take_dr2(*f);
    } catch (const ConnectionClosed&) {
      break;
    }
  }
  return run;
}

NetRun run_party_a(PartyA& a, Socket peer_socket, const std::optional<Endpoint>& sttp,
                   const NetOptions& opts, const std::optional<std::filesystem::path>& session_out) {
  NetRun run;
  FrameChannel peer(std::move(peer_socket), opts.max_frame_bytes);
  Frame offer = expect_control(peer, FrameTag::SetupOffer, opts.timeout_ms);
  SetupReply reply = a.accept_offer(SetupOffer::deserialize(offer.payload));
  peer.send(Frame{SessionId{}, FrameTag::SetupReply, reply.serialize()});
  run.session = session_id_for(a.session().adv);

  auto dispute = [&](const MessageDR1& dr1) {
    if (session_out) write_file(*session_out, encode_session(a.session()));
    log_to(run, Actor::A, Actor::Sttp, dr1);
    if (!sttp) {
      run.log.push_back("no STTP address; dispute session saved for later");
      a.on_dr3_timeout();
      return;
    }
    DisputeReply r = request_dispute(*sttp, a.id(), run.session, dr1, opts);
    if (r.dr3) {
      log_to(run, Actor::Sttp, Actor::A, *r.dr3);
      a.process_dr3(*r.dr3);
    } else if (r.error) {
      a.process_sttp_error(r.error->failed_check, r.error->reason);
    } else {
      a.on_dr3_timeout();
    }
  };

  auto f = peer.receive(opts.timeout_ms);
  if (!f) throw TransportError("timed out waiting for E-M1");
  auto em1 = expect_message<MessageEM1>(peer, *f);
  if (!em1) throw ProtocolError("P_b sent an error instead of E-M1");
  log_to(run, Actor::B, Actor::A, *em1);
  Em1Outcome out = a.process_em1(*em1);
  if (session_out && a.phase() != PhaseA::Aborted) {
    write_file(*session_out, encode_session(a.session()));
  }
  if (out.em2) {
    peer.send(message_frame(run.session, *out.em2));
    log_to(run, Actor::A, Actor::B, *out.em2);
    std::optional<MessageDR1> dr1;
    try {
      auto g = peer.receive(opts.timeout_ms);
      if (g) {
        auto em3 = expect_message<MessageEM3>(peer, *g);
        if (em3) {
          log_to(run, Actor::B, Actor::A, *em3);
          dr1 = a.process_em3(*em3).dr1;
        }
      }
    } catch (const ConnectionClosed&) {
    }
    if (a.phase() == PhaseA::AwaitingEM3) dr1 = a.on_em3_timeout();
    if (dr1) dispute(*dr1);
  } else if (out.dr1) {
    dispute(*out.dr1);
  }
  peer.socket().shutdown();
  return run;
}

}  // namespace fairx
