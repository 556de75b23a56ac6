#include "fairx/crypto/canonical.hpp"

#include <limits>

namespace fairx {

CanonicalWriter& CanonicalWriter::bytes(ByteView field) {
  if (field.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CryptoError("canonical field exceeds 4-byte length prefix");
  }
  append_u32_be(out_, static_cast<std::uint32_t>(field.size()));
  out_.insert(out_.end(), field.begin(), field.end());
  return *this;
}

CanonicalWriter& CanonicalWriter::str(std::string_view field) {
  return bytes(ByteView(reinterpret_cast<const std::uint8_t*>(field.data()), field.size()));
}

CanonicalWriter& CanonicalWriter::integer(const BigInt& field) {
  return bytes(int_to_bytes(field));
}

ByteView CanonicalReader::next() {
  if (in_.size() - pos_ < 4) throw DecodeError("truncated canonical length prefix");
  std::uint32_t len = read_u32_be(in_.subspan(pos_, 4));
  pos_ += 4;
  if (in_.size() - pos_ < len) throw DecodeError("truncated canonical field");
  ByteView field = in_.subspan(pos_, len);
  pos_ += len;
  return field;
}

Bytes CanonicalReader::bytes() {
  ByteView f = next();
  return Bytes(f.begin(), f.end());
}

std::string CanonicalReader::str() { return to_string(next()); }

BigInt CanonicalReader::integer() { return decode_canonical_int(next()); }

void CanonicalReader::expect_end() const {
  if (!done()) throw DecodeError("trailing bytes after canonical payload");
}

Bytes encode_canonical(std::span<const CanonicalField> fields) {
  CanonicalWriter w;
  for (const auto& f : fields) {
    if (const auto* b = std::get_if<Bytes>(&f)) {
      w.bytes(*b);
    } else {
      w.integer(std::get<BigInt>(f));
    }
  }
  return w.take();
}

std::vector<Bytes> decode_canonical(ByteView payload) {
  CanonicalReader r(payload);
  std::vector<Bytes> out;
  while (!r.done()) out.push_back(r.bytes());
  return out;
}

BigInt decode_canonical_int(ByteView field) {
  if (field.empty()) throw DecodeError("empty integer field");
  if (field.size() > 1 && field[0] == 0x00) throw DecodeError("non-minimal integer encoding");
  return int_from_bytes(field);
}

}  // namespace fairx
