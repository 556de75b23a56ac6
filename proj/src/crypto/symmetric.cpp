#include "fairx/crypto/symmetric.hpp"

#include "fairx/crypto/canonical.hpp"
#include "fairx/crypto/op_counter.hpp"

namespace fairx {

SymmetricKey SymmetricKey::random(std::size_t bits, Rng& rng) {
  if (bits == 0) throw CryptoError("symmetric key needs at least one bit");
  for (;;) {
    BigInt k = rng.bits(bits);
    if (k != 0) return SymmetricKey{k};
  }
}

namespace {
Bytes apply_keystream(const SymmetricKey& key, ByteView in, HashAlgorithm alg) {
  if (key.k <= 0) throw CryptoError("symmetric key must be positive");
  Bytes out(in.begin(), in.end());
  std::size_t pos = 0;
  for (unsigned long block = 0; pos < out.size(); ++block) {
    Bytes seed = CanonicalWriter().integer(key.k).integer(BigInt(block)).take();
    Digest ks = hash(seed, alg);
    for (std::size_t i = 0; i < ks.bytes.size() && pos < out.size(); ++i, ++pos) {
      out[pos] ^= ks.bytes[i];
    }
  }
  return out;
}
}  // namespace

Bytes sym_encrypt(const SymmetricKey& key, ByteView plaintext, HashAlgorithm alg) {
  ops::record_symmetric("encrypt");
  return apply_keystream(key, plaintext, alg);
}

Bytes sym_decrypt(const SymmetricKey& key, ByteView ciphertext, HashAlgorithm alg) {
  ops::record_symmetric("decrypt");
  return apply_keystream(key, ciphertext, alg);
}

}  // namespace fairx
