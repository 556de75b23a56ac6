#include "fairx/harness/transcript.hpp"

#include <sstream>

namespace fairx {

namespace {
Actor parse_actor(const std::string& s) {
  if (s == "A") return Actor::A;
  if (s == "B") return Actor::B;
  if (s == "STTP") return Actor::Sttp;
  throw DecodeError("unknown actor in transcript: " + s);
}

MessageType parse_type_name(const std::string& s) {
  for (std::uint8_t tag = 1; tag <= 6; ++tag) {
    auto t = static_cast<MessageType>(tag);
    if (to_string(t) == s) return t;
  }
  throw DecodeError("unknown message name in transcript: " + s);
}
}  // namespace

std::string TranscriptEntry::line() const {
  std::string out;
  out += to_string(from);
  out += ' ';
  out += to_string(to);
  out += ' ';
  out += to_string(type);
  out += ' ';
  out += to_hex(bytes);
  return out;
}

TranscriptEntry TranscriptEntry::parse_line(const std::string& line) {
  std::istringstream in(line);
  std::string from, to, type, hex;
  if (!(in >> from >> to >> type >> hex)) throw DecodeError("malformed transcript line");
  return TranscriptEntry{parse_actor(from), parse_actor(to), parse_type_name(type), from_hex(hex)};
}

Transcript project(const Transcript& t, Actor role) {
  Transcript out;
  for (const auto& e : t) {
    if (e.from == role || e.to == role) out.push_back(e);
  }
  return out;
}

std::string to_text(const Transcript& t) {
  std::string out;
  for (const auto& e : t) {
    out += e.line();
    out += '\n';
  }
  return out;
}

Transcript parse_transcript(const std::string& text) {
  Transcript out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(TranscriptEntry::parse_line(line));
  }
  return out;
}

}  // namespace fairx
