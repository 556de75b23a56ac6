#include "fairx/crypto/rsa.hpp"

#include "fairx/crypto/prime.hpp"

namespace fairx {

bool RsaPublicKey::well_formed() const {
  return n >= 2 && e >= 3 && mpz_odd_p(e.get_mpz_t()) != 0;
}

RsaKeyPair RsaKeyPair::from_factors(const BigInt& p, const BigInt& q, const BigInt& e) {
  if (p == q) throw CryptoError("RSA factors must be distinct");
  BigInt phi = (p - 1) * (q - 1);
  if (gcd(e, phi) != 1) throw CryptoError("public exponent not invertible mod phi(n)");
  BigInt n = p * q;
  BigInt d = mod_inverse(e, phi);
  return RsaKeyPair{RsaPublicKey{e, n}, RsaPrivateKey{d, n}, p, q};
}

RsaKeyPair generate_rsa_keypair(std::size_t bits, Rng& rng, const KeygenOptions& opts) {
  if (bits < kMinRsaBits) {
    throw CryptoError("RSA modulus must have at least " + std::to_string(kMinRsaBits) + " bits");
  }
  BigInt e = opts.fixed_e.value_or(BigInt(kDefaultPublicExponent));
  if (e < 3 || mpz_even_p(e.get_mpz_t()) != 0) throw CryptoError("public exponent must be odd and >= 3");
  if (opts.n_greater_than && bit_length(*opts.n_greater_than) > bits) {
    throw CryptoError("requested modulus size cannot exceed the lower bound");
  }
  const std::size_t p_bits = (bits + 1) / 2;
  const std::size_t q_bits = bits / 2;
  constexpr int kBudget = 2000;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    BigInt p = generate_prime(p_bits, rng);
    BigInt q = generate_prime(q_bits, rng);
    if (p == q) continue;
    BigInt n = p * q;
    if (bit_length(n) != bits) continue;
    if (opts.n_greater_than && n <= *opts.n_greater_than) continue;
    BigInt phi = (p - 1) * (q - 1);
    if (gcd(e, phi) != 1) continue;
    BigInt d = mod_inverse(e, phi);
    if (d <= 1) continue;
    return RsaKeyPair{RsaPublicKey{e, n}, RsaPrivateKey{d, n}, p, q};
  }
  throw CryptoError("RSA key generation exhausted its retry budget");
}

BigInt rsa_apply(const BigInt& base, const BigInt& exp, const BigInt& modulus, RsaOp op,
                 std::string_view item) {
  if (modulus < 2) throw CryptoError("RSA modulus must be at least 2");
  if (exp < 0) throw CryptoError("negative exponent");
  ops::record_rsa(op, item);
  BigInt b = base;
  if (b < 0 || b >= modulus) {
    ops::record_reduced_base();
    mpz_mod(b.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
  }
  BigInt out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

BigInt digest_residue(ByteView data, const BigInt& n, HashAlgorithm alg) {
  BigInt h = hash(data, alg).as_int();
  mpz_mod(h.get_mpz_t(), h.get_mpz_t(), n.get_mpz_t());
  return h;
}

BigInt sign(const RsaPrivateKey& sk, ByteView data, HashAlgorithm alg, std::string_view item) {
  return rsa_apply(digest_residue(data, sk.n, alg), sk.d, sk.n, RsaOp::Sign, item);
}

bool verify_signature(const RsaPublicKey& pk, ByteView data, const BigInt& sig, HashAlgorithm alg,
                      std::string_view item) {
  if (sig < 0 || sig >= pk.n) return false;
  return rsa_apply(sig, pk.e, pk.n, RsaOp::Verify, item) == digest_residue(data, pk.n, alg);
}

}  // namespace fairx
