#pragma once

#include <optional>
#include <string_view>

#include "fairx/crypto/bigint.hpp"
#include "fairx/crypto/hash.hpp"
#include "fairx/crypto/op_counter.hpp"
#include "fairx/crypto/random.hpp"

namespace fairx {

// Textbook RSA, no padding. Values are raw residues.

struct RsaPublicKey {
  BigInt e;
  BigInt n;

  // n >= 2, e >= 3, e odd.
  bool well_formed() const;

  friend bool operator==(const RsaPublicKey& a, const RsaPublicKey& b) {
    return a.e == b.e && a.n == b.n;
  }
};

struct RsaPrivateKey {
  BigInt d;
  BigInt n;
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
  BigInt p;
  BigInt q;

  // Builds the pair from known factors. Throws if e is not invertible
  // modulo (p-1)(q-1) or the factors are equal.
  static RsaKeyPair from_factors(const BigInt& p, const BigInt& q, const BigInt& e);
};

inline constexpr std::size_t kMinRsaBits = 12;
inline constexpr unsigned long kDefaultPublicExponent = 65537;

struct KeygenOptions {
  std::optional<BigInt> fixed_e;
  std::optional<BigInt> n_greater_than;
};

RsaKeyPair generate_rsa_keypair(std::size_t bits, Rng& rng, const KeygenOptions& opts = {});

// base^exp mod modulus. Bases outside [0, modulus) are reduced first and the
// reduction is counted. Each call counts as one RSA operation under `op`.
BigInt rsa_apply(const BigInt& base, const BigInt& exp, const BigInt& modulus,
                 RsaOp op = RsaOp::ProtocolCheck, std::string_view item = {});

inline BigInt rsa_encrypt(const RsaPublicKey& pk, const BigInt& m, std::string_view item = {}) {
  return rsa_apply(m, pk.e, pk.n, RsaOp::Encrypt, item);
}

inline BigInt rsa_decrypt(const RsaPrivateKey& sk, const BigInt& c, std::string_view item = {}) {
  return rsa_apply(c, sk.d, sk.n, RsaOp::Decrypt, item);
}

// Digest interpreted as an integer and reduced mod n. The reduction only
// bites for toy moduli smaller than the digest.
BigInt digest_residue(ByteView data, const BigInt& n, HashAlgorithm alg);

BigInt sign(const RsaPrivateKey& sk, ByteView data, HashAlgorithm alg = HashAlgorithm::Sha256,
            std::string_view item = {});

// sig must lie in [0, n); anything outside is rejected without exponentiation.
bool verify_signature(const RsaPublicKey& pk, ByteView data, const BigInt& sig,
                      HashAlgorithm alg = HashAlgorithm::Sha256, std::string_view item = {});

}  // namespace fairx
