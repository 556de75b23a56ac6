#pragma once

#include <string>
#include <vector>

#include "fairx/crypto/op_counter.hpp"
#include "fairx/protocol/messages.hpp"

namespace fairx {

struct TranscriptEntry {
  Actor from = Actor::None;
  Actor to = Actor::None;
  MessageType type = MessageType::EM1;
  Bytes bytes;  // serialize_message() output

  // "B A E-M1 <hex>"
  std::string line() const;
  static TranscriptEntry parse_line(const std::string& line);

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Transcript = std::vector<TranscriptEntry>;

// The entries a single role sent or received, in order.
Transcript project(const Transcript& t, Actor role);

std::string to_text(const Transcript& t);
Transcript parse_transcript(const std::string& text);

}  // namespace fairx
