#pragma once

#include "fairx/common/bytes.hpp"
#include "fairx/crypto/bigint.hpp"
#include "fairx/crypto/hash.hpp"
#include "fairx/crypto/random.hpp"

namespace fairx {

inline constexpr std::size_t kDefaultSymmetricKeyBits = 128;

struct SymmetricKey {
  BigInt k;

  // Uniform key with 0 < k < 2^bits.
  static SymmetricKey random(std::size_t bits, Rng& rng);

  friend bool operator==(const SymmetricKey& a, const SymmetricKey& b) { return a.k == b.k; }
};

// Deterministic XOR stream cipher. Keystream block i is
// hash(canonical([k, i])); identical (key, plaintext) always produces the
// identical ciphertext, which is what lets the parties compare ciphertext
// hashes against advertised values. Each call counts as one symmetric op.
Bytes sym_encrypt(const SymmetricKey& key, ByteView plaintext,
                  HashAlgorithm alg = HashAlgorithm::Sha256);
Bytes sym_decrypt(const SymmetricKey& key, ByteView ciphertext,
                  HashAlgorithm alg = HashAlgorithm::Sha256);

}  // namespace fairx
