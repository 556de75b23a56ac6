#include "fairx/cert/shared_cert.hpp"

#include "fairx/crypto/canonical.hpp"

namespace fairx {

Bytes SharedKeyCertificate::signed_payload() const {
  return CanonicalWriter()
      .str(subject_id.value)
      .integer(pk_bt.e)
      .integer(pk_bt.n)
      .integer(w_bt)
      .take();
}

Bytes SharedKeyCertificate::serialize() const {
  return CanonicalWriter()
      .str(subject_id.value)
      .integer(pk_bt.e)
      .integer(pk_bt.n)
      .integer(w_bt)
      .integer(sig_t)
      .take();
}

SharedKeyCertificate SharedKeyCertificate::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  SharedKeyCertificate c;
  c.subject_id = PartyId{r.str()};
  c.pk_bt.e = r.integer();
  c.pk_bt.n = r.integer();
  c.w_bt = r.integer();
  c.sig_t = r.integer();
  r.expect_end();
  return c;
}

BigInt shared_key_mask(const RsaPrivateKey& sk_t, const RsaPublicKey& pk_bt, HashAlgorithm alg) {
  Bytes input =
      CanonicalWriter().integer(sk_t.d).integer(sk_t.n).integer(pk_bt.e).integer(pk_bt.n).take();
  BigInt h = hash(input, alg).as_int();
  mpz_mod(h.get_mpz_t(), h.get_mpz_t(), pk_bt.n.get_mpz_t());
  return h;
}

SharedKeyCertificate issue_with_shared_key(const SttpIdentity& sttp, const PartyId& subject_id,
                                           const RsaKeyPair& shared, HashAlgorithm alg) {
  BigInt mask = shared_key_mask(sttp.keypair.priv, shared.pub, alg);
  if (mask == 0 || gcd(mask, shared.pub.n) != 1) {
    throw CertificateError("shared-key mask is not invertible modulo n_bt");
  }
  SharedKeyCertificate cert;
  cert.subject_id = subject_id;
  cert.pk_bt = shared.pub;
  cert.w_bt = (mod_inverse(mask, shared.pub.n) * shared.priv.d) % shared.pub.n;
  cert.sig_t = sign(sttp.keypair.priv, cert.signed_payload(), alg, "Sig_t");
  return cert;
}

SharedKeyCertificate issue_shared_certificate(const SttpIdentity& sttp,
                                              const RsaPublicKey& subject_pk,
                                              const PartyId& subject_id, Rng& rng,
                                              std::size_t bits_margin, HashAlgorithm alg) {
  if (!subject_pk.well_formed()) throw CertificateError("subject public key is malformed");
  const std::size_t bits = bit_length(subject_pk.n) + bits_margin;
  KeygenOptions opts;
  opts.fixed_e = subject_pk.e;
  opts.n_greater_than = subject_pk.n;
  constexpr int kBudget = 64;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    RsaKeyPair shared = generate_rsa_keypair(bits, rng, opts);
    BigInt mask = shared_key_mask(sttp.keypair.priv, shared.pub, alg);
    if (mask == 0 || gcd(mask, shared.pub.n) != 1) continue;
    return issue_with_shared_key(sttp, subject_id, shared, alg);
  }
  throw CertificateError("could not find an invertible shared-key mask");
}

bool verify_certificate(const SharedKeyCertificate& cert, const RsaPublicKey& pk_t,
                        const RsaPublicKey& subject_pk, HashAlgorithm alg) {
  if (!verify_signature(pk_t, cert.signed_payload(), cert.sig_t, alg, "Sig_t")) return false;
  return cert.pk_bt.e == subject_pk.e && cert.pk_bt.n > subject_pk.n;
}

BigInt recover_shared_private_exponent(const SharedKeyCertificate& cert, const SttpIdentity& sttp,
                                       HashAlgorithm alg) {
  if (!verify_signature(sttp.pk(), cert.signed_payload(), cert.sig_t, alg, "Sig_t")) {
    throw CertificateError("certificate was not issued by this STTP");
  }
  return (shared_key_mask(sttp.keypair.priv, cert.pk_bt, alg) * cert.w_bt) % cert.pk_bt.n;
}

CertRegistry::CertRegistry(const CertRegistry& other) : entries_(other.entries()) {}

CertRegistry& CertRegistry::operator=(const CertRegistry& other) {
  if (this != &other) {
    auto copy = other.entries();
    std::lock_guard lock(mu_);
    entries_ = std::move(copy);
  }
  return *this;
}

void CertRegistry::append(Entry entry) {
  std::lock_guard lock(mu_);
  entries_.push_back(std::move(entry));
}

std::optional<CertRegistry::Entry> CertRegistry::find(const PartyId& subject_id) const {
  std::lock_guard lock(mu_);
  // Latest issuance wins.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->subject_id == subject_id) return *it;
  }
  return std::nullopt;
}

std::vector<CertRegistry::Entry> CertRegistry::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

Bytes CertRegistry::serialize() const {
  CanonicalWriter w;
  for (const auto& e : entries()) {
    w.bytes(CanonicalWriter()
                .str(e.subject_id.value)
                .integer(e.subject_pk.e)
                .integer(e.subject_pk.n)
                .bytes(e.cert.serialize())
                .take());
  }
  return w.take();
}

CertRegistry CertRegistry::deserialize(ByteView bytes) {
  CertRegistry reg;
  for (const Bytes& field : decode_canonical(bytes)) {
    CanonicalReader r(field);
    Entry e;
    e.subject_id = PartyId{r.str()};
    e.subject_pk.e = r.integer();
    e.subject_pk.n = r.integer();
    e.cert = SharedKeyCertificate::deserialize(r.bytes());
    r.expect_end();
    reg.entries_.push_back(std::move(e));
  }
  return reg;
}

}  // namespace fairx
