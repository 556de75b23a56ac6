#pragma once

#include <string_view>

#include "fairx/common/bytes.hpp"
#include "fairx/crypto/bigint.hpp"

namespace fairx {

enum class HashAlgorithm { Sha256, Sha1 };

std::string_view hash_name(HashAlgorithm alg);
std::size_t digest_size(HashAlgorithm alg);

struct Digest {
  Bytes bytes;

  // Big-endian interpretation of the digest bytes.
  BigInt as_int() const { return int_from_bytes(bytes); }

  friend bool operator==(const Digest&, const Digest&) = default;
};

Digest hash(ByteView data, HashAlgorithm alg = HashAlgorithm::Sha256);

}  // namespace fairx
