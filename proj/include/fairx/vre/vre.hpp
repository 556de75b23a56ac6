#pragma once

#include "fairx/crypto/rsa.hpp"
#include "fairx/crypto/symmetric.hpp"

namespace fairx {

class VreError : public Error {
 public:
  using Error::Error;
};

// Verifiable and recoverable encryption of a document key k_b:
//   X_b = r_b * k_b                 (must stay below n_b)
//   Y_b = r_b^e  mod n_b*n_bt
//   Z_b = k_b^e  mod n_b*n_bt
// A verifier holding ek_b = k_b^e mod n_b can check the triple without
// learning k_b; either sk_b or sk_bt recovers r_b from Y_b.
struct VrePublic {
  BigInt x_b;
  BigInt y_b;
  BigInt z_b;

  friend bool operator==(const VrePublic&, const VrePublic&) = default;
};

struct VreSecret {
  BigInt r_b;
  SymmetricKey k_b;
};

struct KeyCommitment {
  BigInt ek_b;

  static KeyCommitment commit(const SymmetricKey& k_b, const RsaPublicKey& pk_b);

  friend bool operator==(const KeyCommitment&, const KeyCommitment&) = default;
};

struct VreOutput {
  VrePublic pub;
  VreSecret secret;
};

// Picks a prime r_b coprime to n_b with bits(n_b) - bits(k_b) - 1 bits.
VreOutput vre_generate(const SymmetricKey& k_b, const RsaPublicKey& pk_b,
                       const RsaPublicKey& pk_bt, Rng& rng,
                       std::size_t max_key_bits = kDefaultSymmetricKeyBits);

// Same construction with a caller-chosen blinding factor.
VreOutput vre_generate_with_blinding(const SymmetricKey& k_b, const BigInt& r_b,
                                     const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt);

// First failing verification, numbered as the receiver's E-M1 checks.
enum class VreCheck {
  Ok = 0,
  RangeAndCommitment = 4,  // X_b < n_b, Y_b and Z_b below n_b*n_bt, Z_b mod n_b = ek_b
  OwnerModulus = 5,        // X_b^e mod n_b  = Y_b * ek_b mod n_b
  SharedModulus = 6,       // X_b^e mod n_bt = Y_b * Z_b  mod n_bt
};

// Checks 5 and 6 share a single exponentiation mod n_b*n_bt, reduced
// separately, so a full verification costs one RSA operation.
VreCheck vre_check(const VrePublic& pub, const KeyCommitment& commitment,
                   const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt);

inline bool vre_verify(const VrePublic& pub, const KeyCommitment& commitment,
                       const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt) {
  return vre_check(pub, commitment, pk_b, pk_bt) == VreCheck::Ok;
}

BigInt recover_blinding_with_owner_key(const BigInt& y_b, const RsaPrivateKey& sk_b);
BigInt recover_blinding_with_shared_key(const BigInt& y_b, const BigInt& d_bt, const BigInt& n_bt);

// k_b = X_b / r_b. Throws VreError unless r_b > 0 divides X_b exactly.
SymmetricKey unblind_key(const BigInt& x_b, const BigInt& r_b);

// r_b^e mod n_b*n_bt == Y_b. Divisibility of X_b is left to unblind_key.
bool check_blinding_consistency(const BigInt& r_b, const BigInt& y_b, const RsaPublicKey& pk_b,
                                const RsaPublicKey& pk_bt);

}  // namespace fairx
