#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairx/common/bytes.hpp"
#include "fairx/crypto/bigint.hpp"

namespace fairx {

// Length-prefixed field concatenation: every field is a 4-byte big-endian
// length followed by its content. Integers are written as minimal big-endian
// magnitudes, zero as a single 0x00 byte.
class CanonicalWriter {
 public:
  CanonicalWriter& bytes(ByteView field);
  CanonicalWriter& str(std::string_view field);
  CanonicalWriter& integer(const BigInt& field);

  const Bytes& payload() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Sequential reader over a canonical payload. Integers must be minimally
// encoded; anything else is a DecodeError.
class CanonicalReader {
 public:
  explicit CanonicalReader(ByteView payload) : in_(payload) {}

  Bytes bytes();
  std::string str();
  BigInt integer();

  bool done() const { return pos_ == in_.size(); }
  void expect_end() const;

 private:
  ByteView next();

  ByteView in_;
  std::size_t pos_ = 0;
};

using CanonicalField = std::variant<Bytes, BigInt>;

Bytes encode_canonical(std::span<const CanonicalField> fields);

// Splits a payload back into its raw field contents.
std::vector<Bytes> decode_canonical(ByteView payload);

// Reads an integer field written by CanonicalWriter::integer.
BigInt decode_canonical_int(ByteView field);

}  // namespace fairx
