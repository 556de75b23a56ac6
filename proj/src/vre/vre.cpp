#include "fairx/vre/vre.hpp"

#include "fairx/crypto/prime.hpp"

namespace fairx {

namespace {
void require_compatible(const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt) {
  if (pk_bt.e != pk_b.e) throw VreError("shared key exponent must equal the owner's exponent");
  if (pk_bt.n <= pk_b.n) throw VreError("shared modulus must exceed the owner's modulus");
}
}  // namespace

KeyCommitment KeyCommitment::commit(const SymmetricKey& k_b, const RsaPublicKey& pk_b) {
  return KeyCommitment{rsa_encrypt(pk_b, k_b.k, "ek_b")};
}

VreOutput vre_generate(const SymmetricKey& k_b, const RsaPublicKey& pk_b,
                       const RsaPublicKey& pk_bt, Rng& rng, std::size_t max_key_bits) {
  require_compatible(pk_b, pk_bt);
  if (k_b.k <= 0) throw VreError("document key must be positive");
  const std::size_t key_bits = bit_length(k_b.k);
  if (key_bits > max_key_bits) throw VreError("document key exceeds the configured key size");
  const std::size_t n_bits = bit_length(pk_b.n);
  if (n_bits < key_bits + 3) {
    throw VreError("document key too large: no prime blinding factor keeps X_b below n_b");
  }
  const std::size_t r_bits = n_bits - key_bits - 1;
  BigInt r_b = generate_prime(r_bits, rng, pk_b.n);
  return vre_generate_with_blinding(k_b, r_b, pk_b, pk_bt);
}

VreOutput vre_generate_with_blinding(const SymmetricKey& k_b, const BigInt& r_b,
                                     const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt) {
  require_compatible(pk_b, pk_bt);
  if (k_b.k <= 0) throw VreError("document key must be positive");
  if (r_b < 2 || gcd(r_b, pk_b.n) != 1) throw VreError("blinding factor must be coprime to n_b");
  BigInt x_b = r_b * k_b.k;
  if (x_b >= pk_b.n) throw VreError("blinded key X_b must stay below n_b");
  const BigInt joint = pk_b.n * pk_bt.n;
  VreOutput out;
  out.pub.x_b = x_b;
  out.pub.y_b = rsa_apply(r_b, pk_b.e, joint, RsaOp::Encrypt, "Y_b");
  out.pub.z_b = rsa_apply(k_b.k, pk_b.e, joint, RsaOp::Encrypt, "Z_b");
  out.secret = VreSecret{r_b, k_b};
  return out;
}

VreCheck vre_check(const VrePublic& pub, const KeyCommitment& commitment,
                   const RsaPublicKey& pk_b, const RsaPublicKey& pk_bt) {
  const BigInt joint = pk_b.n * pk_bt.n;
  if (pub.x_b < 0 || pub.x_b >= pk_b.n) return VreCheck::RangeAndCommitment;
  if (pub.y_b < 0 || pub.y_b >= joint || pub.z_b < 0 || pub.z_b >= joint) {
    return VreCheck::RangeAndCommitment;
  }
  if (BigInt(pub.z_b % pk_b.n) != commitment.ek_b) return VreCheck::RangeAndCommitment;
  const BigInt x_pow = rsa_apply(pub.x_b, pk_b.e, joint, RsaOp::ProtocolCheck, "X_b^e (checks 5+6)");
  if (BigInt(x_pow % pk_b.n) != BigInt((pub.y_b * commitment.ek_b) % pk_b.n)) {
    return VreCheck::OwnerModulus;
  }
  if (BigInt(x_pow % pk_bt.n) != BigInt((pub.y_b * pub.z_b) % pk_bt.n)) {
    return VreCheck::SharedModulus;
  }
  return VreCheck::Ok;
}

BigInt recover_blinding_with_owner_key(const BigInt& y_b, const RsaPrivateKey& sk_b) {
  return rsa_decrypt(sk_b, y_b, "r_b from Y_b (sk_b)");
}

BigInt recover_blinding_with_shared_key(const BigInt& y_b, const BigInt& d_bt, const BigInt& n_bt) {
  return rsa_apply(y_b, d_bt, n_bt, RsaOp::Decrypt, "r_b from Y_b (sk_bt)");
}

SymmetricKey unblind_key(const BigInt& x_b, const BigInt& r_b) {
  if (r_b <= 0) throw VreError("blinding factor must be positive");
  if (mpz_divisible_p(x_b.get_mpz_t(), r_b.get_mpz_t()) == 0) {
    throw VreError("blinding factor does not divide X_b");
  }
  return SymmetricKey{x_b / r_b};
}

bool check_blinding_consistency(const BigInt& r_b, const BigInt& y_b, const RsaPublicKey& pk_b,
                                const RsaPublicKey& pk_bt) {
  if (r_b < 0) return false;
  const BigInt joint = pk_b.n * pk_bt.n;
  return rsa_apply(r_b, pk_b.e, joint, RsaOp::ProtocolCheck, "r_b^e vs Y_b") == y_b;
}

}  // namespace fairx
