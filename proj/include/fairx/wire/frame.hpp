#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>

#include "fairx/protocol/messages.hpp"

namespace fairx {

// Frame tags 0x01-0x06 carry protocol messages; the rest are transport
// control that never reaches a state machine.
enum class FrameTag : std::uint8_t {
  EM1 = 0x01,
  EM2 = 0x02,
  EM3 = 0x03,
  DR1 = 0x04,
  DR2 = 0x05,
  DR3 = 0x06,
  SetupOffer = 0x10,
  SetupReply = 0x11,
  Error = 0x12,
  Hello = 0x13,
};

std::string_view to_string(FrameTag tag);
bool is_message_tag(FrameTag tag);

inline constexpr std::size_t kFrameHeaderSize = 16 + 1 + 4;
inline constexpr std::size_t kDefaultMaxFrameBytes = 16u << 20;

class FrameError : public DecodeError {
 public:
  enum class Kind { Truncated, Oversize, UnknownTag };
  FrameError(Kind kind, const std::string& what) : DecodeError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Frame {
  SessionId session{};
  FrameTag tag = FrameTag::Error;
  Bytes payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// [16-byte session id][1-byte tag][4-byte big-endian length][payload]
Bytes encode_frame(const Frame& frame, std::size_t max_payload = kDefaultMaxFrameBytes);
// Exactly one frame; anything short is Truncated, anything extra is rejected.
Frame decode_frame(ByteView bytes, std::size_t max_payload = kDefaultMaxFrameBytes);

// Incremental decoder for a byte stream. Only complete frames come out;
// a bad header poisons the stream.
class FrameDecoder {
 public:
  explicit FrameDecoder(std::size_t max_payload = kDefaultMaxFrameBytes) : max_(max_payload) {}

  void feed(ByteView bytes);
  std::optional<Frame> next();
  // Bytes of an incomplete frame are buffered. At end of stream that means
  // the peer truncated a frame.
  bool has_partial() const { return !buffer_.empty(); }

 private:
  std::size_t max_;
  Bytes buffer_;
};

Frame message_frame(const SessionId& session, const ExchangeMessage& msg);
// Throws FrameError(UnknownTag) for control frames.
ExchangeMessage frame_message(const Frame& frame);

struct Hello {
  PartyId party;
  Bytes serialize() const;
  static Hello deserialize(ByteView bytes);
};

// Sent by the STTP when it refuses or cannot parse a request. failed_check
// is the dispute check number, 0 for an unknown subject and -1 for input
// that was not a well-formed request.
struct WireError {
  int failed_check = -1;
  std::string reason;
  Bytes serialize() const;
  static WireError deserialize(ByteView bytes);
};

}  // namespace fairx
