#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fairx/crypto/canonical.hpp"
#include "fairx/crypto/hash.hpp"
#include "fairx/crypto/op_counter.hpp"
#include "fairx/crypto/prime.hpp"
#include "fairx/crypto/random.hpp"
#include "fairx/crypto/rsa.hpp"
#include "fairx/crypto/symmetric.hpp"

using namespace fairx;

namespace {

// Independent oracles, kept free of GMP.
std::uint64_t modexp_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = (r * x) % m;
    x = (x * x) % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::int64_t ext_euclid_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return ((old_s % m) + m) % m;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t u64(const BigInt& v) { return v.get_ui(); }

}  // namespace

TEST_CASE("canonical encoding of the spec's worked examples") {
  CHECK(encode_canonical({}).empty());
  std::vector<CanonicalField> zero{BigInt(0)};
  CHECK(encode_canonical(zero) == Bytes{0, 0, 0, 1, 0});
  std::vector<CanonicalField> ab{to_bytes("AB"), BigInt(256)};
  Bytes expected{0, 0, 0, 2, 0x41, 0x42, 0, 0, 0, 2, 0x01, 0x00};
  CHECK(encode_canonical(ab) == expected);
  auto fields = decode_canonical(expected);
  REQUIRE(fields.size() == 2);
  CHECK(fields[0] == to_bytes("AB"));
  CHECK(decode_canonical_int(fields[1]) == 256);
}

TEST_CASE("canonical decoding rejects malformed input") {
  CHECK_THROWS_AS(decode_canonical(Bytes{0, 0, 0}), DecodeError);
  CHECK_THROWS_AS(decode_canonical(Bytes{0, 0, 0, 5, 1}), DecodeError);
  // Non-minimal integers would give one value two encodings.
  CHECK_THROWS_AS(decode_canonical_int(Bytes{0, 1}), DecodeError);
  CHECK_THROWS_AS(decode_canonical_int(Bytes{}), DecodeError);
  Bytes one = CanonicalWriter().integer(7).take();
  CanonicalReader r(one);
  CHECK(r.integer() == 7);
  CHECK_THROWS_AS(r.integer(), DecodeError);
}

TEST_CASE("canonical encoding is injective on random field lists") {
  Rng rng(11, "canonical");
  std::set<Bytes> seen;
  std::set<std::vector<Bytes>> lists;
  for (int i = 0; i < 500; ++i) {
    std::vector<CanonicalField> fields;
    std::vector<Bytes> raw;
    int count = static_cast<int>(rng.below(4).get_ui());
    for (int j = 0; j < count; ++j) {
      if (rng.below(2) == 0) {
        Bytes b = rng.bytes(rng.below(4).get_ui());
        raw.push_back(b);
        fields.emplace_back(b);
      } else {
        BigInt v = rng.bits(rng.below(24).get_ui());
        raw.push_back(int_to_bytes(v));
        fields.emplace_back(v);
      }
    }
    Bytes enc = encode_canonical(fields);
    CHECK(decode_canonical(enc) == raw);
    if (lists.insert(raw).second) CHECK(seen.insert(enc).second);
  }
}

TEST_CASE("integer byte conversion") {
  CHECK(int_to_bytes(0) == Bytes{0});
  CHECK(int_to_bytes(256) == Bytes{1, 0});
  CHECK(int_to_bytes_padded(5, 3) == Bytes{0, 0, 5});
  CHECK(int_from_bytes(Bytes{1, 0}) == 256);
  CHECK(bit_length(0) == 0);
  CHECK(bit_length(3233) == 12);
  CHECK_THROWS(mod_inverse(6, 9));
}

TEST_CASE("hash reference vectors and behaviour") {
  CHECK(to_hex(hash({}).bytes) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(to_hex(hash({}, HashAlgorithm::Sha1).bytes) ==
        "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  CHECK(to_hex(hash(to_bytes("abc")).bytes) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(hash(to_bytes("x")) == hash(to_bytes("x")));
  CHECK(digest_size(HashAlgorithm::Sha256) == 32);

  Rng rng(3, "hash-pairs");
  std::set<Bytes> digests;
  for (int i = 0; i < 1000; ++i) {
    Bytes a = rng.bytes(32);
    Bytes b = a;
    std::size_t bit = rng.below(256).get_ui();
    b[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    CHECK(hash(a) != hash(b));
  }
}

TEST_CASE("seeded generator replays exactly and labels separate streams") {
  Rng a(5, "x"), b(5, "x"), c(5, "y");
  CHECK(a.bytes(64) == b.bytes(64));
  CHECK(Rng(5, "x").bytes(16) != c.bytes(16));
  Rng r(9);
  for (int i = 0; i < 200; ++i) {
    BigInt v = r.between(10, 20);
    CHECK(v >= 10);
    CHECK(v <= 20);
  }
}

TEST_CASE("prime generation") {
  Rng rng(1, "primes");
  for (int i = 0; i < 20; ++i) {
    BigInt p = generate_prime(2, rng);
    CHECK((p == 2 || p == 3));
  }
  for (int i = 0; i < 50; ++i) {
    BigInt p = generate_prime(8, rng, BigInt(3233));
    CHECK(bit_length(p) == 8);
    CHECK(trial_division_prime(u64(p)));
    CHECK(std::gcd(u64(p), std::uint64_t{3233}) == 1);
  }
  BigInt big = generate_prime(512, rng);
  CHECK(bit_length(big) == 512);
  CHECK(mpz_probab_prime_p(big.get_mpz_t(), 40) > 0);
  CHECK_THROWS_AS(generate_prime(1, rng), CryptoError);
  // Only 2 and 3 have two bits, and both divide 6.
  CHECK_THROWS_AS(generate_prime(2, rng, BigInt(6)), CryptoError);
}

TEST_CASE("primality test agrees with trial division below 5000") {
  Rng rng(2, "mr");
  for (std::uint64_t n = 0; n < 5000; ++n) {
    CHECK_MESSAGE(is_probable_prime(BigInt(static_cast<unsigned long>(n)), rng) ==
                      trial_division_prime(n),
                  n);
  }
  // Carmichael numbers.
  for (unsigned long n : {561ul, 41041ul, 825265ul, 321197185ul}) {
    CHECK_FALSE(is_probable_prime(BigInt(n), rng));
  }
}

TEST_CASE("toy key from injected factors") {
  RsaKeyPair kp = RsaKeyPair::from_factors(61, 53, 17);
  CHECK(kp.pub.n == 3233);
  CHECK(kp.priv.d == ext_euclid_inverse(17, 3120));
  CHECK(kp.priv.d == 2753);
  CHECK_THROWS(RsaKeyPair::from_factors(61, 61, 17));
  CHECK_THROWS(RsaKeyPair::from_factors(61, 53, 3));  // gcd(3, 3120) = 3
}

TEST_CASE("rsa_apply examples") {
  CHECK(rsa_apply(5, 1, 3233) == 5);
  BigInt c = rsa_apply(5, 17, 3233);
  CHECK(c == modexp_u64(5, 17, 3233));
  CHECK(rsa_apply(c, 2753, 3233) == 5);
  CHECK(rsa_apply(0, 17, 3233) == 0);
  CHECK_THROWS_AS(rsa_apply(1, 1, 1), CryptoError);
}

TEST_CASE("12-bit keypair round-trips every message") {
  Rng rng(12, "toy");
  RsaKeyPair kp = generate_rsa_keypair(12, rng, {BigInt(17), std::nullopt});
  CHECK(kp.pub.e == 17);
  CHECK(bit_length(kp.pub.n) == 12);
  CHECK(kp.p != kp.q);
  const std::uint64_t n = u64(kp.pub.n), d = u64(kp.priv.d);
  for (std::uint64_t m = 0; m < n; ++m) {
    std::uint64_t c = u64(rsa_encrypt(kp.pub, BigInt(static_cast<unsigned long>(m))));
    CHECK(c == modexp_u64(m, 17, n));
    REQUIRE(modexp_u64(c, d, n) == m);
  }
}

TEST_CASE("keygen constraints") {
  Rng rng(4, "keygen");
  RsaKeyPair kp = generate_rsa_keypair(16, rng, {BigInt(17), BigInt(3233)});
  CHECK(kp.pub.n > 3233);
  CHECK(kp.pub.e == 17);
  CHECK((kp.pub.e * kp.priv.d) % ((kp.p - 1) * (kp.q - 1)) == 1);
  for (std::size_t bits : {16u, 64u, 512u}) {
    RsaKeyPair k = generate_rsa_keypair(bits, rng);
    CHECK(bit_length(k.pub.n) == bits);
    CHECK(k.p * k.q == k.pub.n);
    for (int i = 0; i < 20; ++i) {
      BigInt m = rng.below(k.pub.n);
      CHECK(rsa_decrypt(k.priv, rsa_encrypt(k.pub, m)) == m);
    }
  }
  CHECK_THROWS(generate_rsa_keypair(8, rng));
  // No 12-bit modulus exceeds 2^12.
  CHECK_THROWS(generate_rsa_keypair(12, rng, {std::nullopt, BigInt(1) << 12}));
}

TEST_CASE("signatures") {
  Rng rng(6, "sig");
  RsaKeyPair kp = generate_rsa_keypair(512, rng);
  Bytes data = to_bytes("contract text");
  BigInt sig = sign(kp.priv, data);
  CHECK(sig == rsa_apply(hash(data).as_int() % kp.pub.n, kp.priv.d, kp.pub.n));
  CHECK(verify_signature(kp.pub, data, sig));
  CHECK_FALSE(verify_signature(kp.pub, data, sig + kp.pub.n));
  CHECK_FALSE(verify_signature(kp.pub, data, -1));
  for (int i = 0; i < 100; ++i) {
    Bytes m = data;
    m[rng.below(m.size()).get_ui()] ^= static_cast<std::uint8_t>(1 + rng.below(255).get_ui());
    CHECK_FALSE(verify_signature(kp.pub, m, sig));
  }
  for (int i = 0; i < 20; ++i) {
    RsaKeyPair other = generate_rsa_keypair(64, rng);
    CHECK_FALSE(verify_signature(other.pub, data, sig));
  }
  for (int i = 0; i < 50; ++i) CHECK_FALSE(verify_signature(kp.pub, rng.bytes(20), 0));
}

TEST_CASE("keystream cipher") {
  Rng rng(8, "sym");
  SymmetricKey k = SymmetricKey::random(128, rng);
  CHECK(k.k > 0);
  CHECK(bit_length(k.k) <= 128);
  CHECK(sym_decrypt(k, sym_encrypt(k, {})).empty());
  for (int i = 0; i < 100; ++i) {
    Bytes m = rng.bytes(rng.below(300).get_ui());
    Bytes c = sym_encrypt(k, m);
    CHECK(c.size() == m.size());
    CHECK(c == sym_encrypt(k, m));
    CHECK(sym_decrypt(k, c) == m);
    CHECK(sym_decrypt(k, sym_decrypt(k, c)) == c);
  }
  Bytes m = rng.bytes(64);
  SymmetricKey k2 = SymmetricKey::random(128, rng);
  CHECK(sym_encrypt(k, m) != sym_encrypt(k2, m));
  CHECK(sym_decrypt(k2, sym_encrypt(k, m)) != m);

  // First keystream block is hash(canonical[k, 0]).
  Bytes one{0};
  Bytes block = hash(encode_canonical(std::vector<CanonicalField>{k.k, BigInt(0)})).bytes;
  CHECK(sym_encrypt(k, one)[0] == block[0]);
}

TEST_CASE("operation counter is exact and scoped") {
  OpCounter c;
  {
    ScopedOps s(c, Actor::B, Phase::Exchange);
    for (int i = 0; i < 7; ++i) rsa_apply(3, 5, 3233, RsaOp::Encrypt, "x");
    rsa_apply(4000, 5, 3233);  // reduced base
    SymmetricKey k{BigInt(5)};
    sym_encrypt(k, to_bytes("abc"));
    {
      ScopedOps inner(c, Actor::A, Phase::Dispute);
      rsa_apply(2, 3, 3233, RsaOp::Decrypt);
    }
    rsa_apply(2, 3, 3233, RsaOp::Verify);
  }
  rsa_apply(2, 3, 3233);  // no sink installed
  CHECK(c.total(OpKind::Rsa) == 10);
  CHECK(c.total(OpKind::Rsa, Phase::Exchange, Actor::B) == 9);
  CHECK(c.total(OpKind::Rsa, Phase::Dispute, Actor::A) == 1);
  CHECK(c.total(OpKind::Symmetric) == 1);
  CHECK(c.total(OpKind::ReducedBase) == 1);
  OpCounter d;
  d.merge(c);
  d.merge(c);
  CHECK(d.total(OpKind::Rsa) == 20);
}
