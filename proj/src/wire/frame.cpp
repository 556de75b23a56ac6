#include "fairx/wire/frame.hpp"

#include <algorithm>

#include "fairx/crypto/canonical.hpp"

namespace fairx {

std::string_view to_string(FrameTag tag) {
  switch (tag) {
    case FrameTag::SetupOffer: return "setup-offer";
    case FrameTag::SetupReply: return "setup-reply";
    case FrameTag::Error: return "error";
    case FrameTag::Hello: return "hello";
    default: return to_string(static_cast<MessageType>(tag));
  }
}

bool is_message_tag(FrameTag tag) {
  auto v = static_cast<std::uint8_t>(tag);
  return v >= 0x01 && v <= 0x06;
}

namespace {

FrameTag parse_tag(std::uint8_t v) {
  if ((v >= 0x01 && v <= 0x06) || (v >= 0x10 && v <= 0x13)) return static_cast<FrameTag>(v);
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", v);
  throw FrameError(FrameError::Kind::UnknownTag, std::string("unknown frame type ") + buf);
}

struct Header {
  SessionId session;
  FrameTag tag;
  std::size_t length;
};

Header parse_header(ByteView bytes, std::size_t max_payload) {
  Header h;
  std::copy_n(bytes.begin(), 16, h.session.begin());
  h.tag = parse_tag(bytes[16]);
  h.length = read_u32_be(bytes.subspan(17, 4));
  if (h.length > max_payload) {
    throw FrameError(FrameError::Kind::Oversize,
                     "frame payload of " + std::to_string(h.length) + " bytes exceeds limit");
  }
  return h;
}

}  // namespace

Bytes encode_frame(const Frame& frame, std::size_t max_payload) {
  if (frame.payload.size() > max_payload) {
    throw FrameError(FrameError::Kind::Oversize, "frame payload exceeds limit");
  }
  parse_tag(static_cast<std::uint8_t>(frame.tag));
  Bytes out(frame.session.begin(), frame.session.end());
  out.push_back(static_cast<std::uint8_t>(frame.tag));
  append_u32_be(out, static_cast<std::uint32_t>(frame.payload.size()));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

Frame decode_frame(ByteView bytes, std::size_t max_payload) {
  if (bytes.size() < kFrameHeaderSize) {
    throw FrameError(FrameError::Kind::Truncated, "truncated frame header");
  }
  Header h = parse_header(bytes, max_payload);
  if (bytes.size() < kFrameHeaderSize + h.length) {
    throw FrameError(FrameError::Kind::Truncated, "truncated frame payload");
  }
  if (bytes.size() > kFrameHeaderSize + h.length) throw DecodeError("trailing bytes after frame");
  auto body = bytes.subspan(kFrameHeaderSize);
  return Frame{h.session, h.tag, Bytes(body.begin(), body.end())};
}

void FrameDecoder::feed(ByteView bytes) { buffer_.insert(buffer_.end(), bytes.begin(), bytes.end()); }

std::optional<Frame> FrameDecoder::next() {
  if (buffer_.size() < kFrameHeaderSize) return std::nullopt;
  Header h = parse_header(buffer_, max_);
  if (buffer_.size() < kFrameHeaderSize + h.length) return std::nullopt;
  auto begin = buffer_.begin() + kFrameHeaderSize;
  Frame f{h.session, h.tag, Bytes(begin, begin + static_cast<std::ptrdiff_t>(h.length))};
  buffer_.erase(buffer_.begin(), begin + static_cast<std::ptrdiff_t>(h.length));
  return f;
}

Frame message_frame(const SessionId& session, const ExchangeMessage& msg) {
  return Frame{session, static_cast<FrameTag>(type_of(msg)), encode_body(msg)};
}

ExchangeMessage frame_message(const Frame& frame) {
  if (!is_message_tag(frame.tag)) {
    throw FrameError(FrameError::Kind::UnknownTag,
                     "frame " + std::string(to_string(frame.tag)) + " is not a protocol message");
  }
  return decode_body(static_cast<MessageType>(frame.tag), frame.payload);
}

Bytes Hello::serialize() const { return CanonicalWriter().str(party.value).take(); }

Hello Hello::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  Hello h{PartyId{r.str()}};
  r.expect_end();
  return h;
}

Bytes WireError::serialize() const {
  // The check number travels shifted by one so that -1 stays non-negative.
  return CanonicalWriter().integer(BigInt(failed_check + 1)).str(reason).take();
}

WireError WireError::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  WireError e;
  BigInt shifted = r.integer();
  if (shifted < 0 || shifted > 64) throw DecodeError("error frame check number out of range");
  e.failed_check = static_cast<int>(shifted.get_si()) - 1;
  e.reason = r.str();
  r.expect_end();
  return e;
}

}  // namespace fairx
