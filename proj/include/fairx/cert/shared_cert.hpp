#pragma once

#include <mutex>
#include <optional>
#include <vector>

#include "fairx/common/party_id.hpp"
#include "fairx/crypto/rsa.hpp"

namespace fairx {

class CertificateError : public Error {
 public:
  using Error::Error;
};

// C_bt: binds a subject to a shared key pk_bt whose private exponent the
// issuing STTP can rebuild from W_bt and its own private key.
struct SharedKeyCertificate {
  PartyId subject_id;
  RsaPublicKey pk_bt;
  BigInt w_bt;
  BigInt sig_t;

  // canonical([subject_id, e_bt, n_bt, W_bt]) -- what sig_t covers.
  Bytes signed_payload() const;

  // canonical([subject_id, e_bt, n_bt, W_bt, sig_t])
  Bytes serialize() const;
  static SharedKeyCertificate deserialize(ByteView bytes);

  friend bool operator==(const SharedKeyCertificate& a, const SharedKeyCertificate& b) {
    return a.subject_id == b.subject_id && a.pk_bt == b.pk_bt && a.w_bt == b.w_bt &&
           a.sig_t == b.sig_t;
  }
};

struct SttpIdentity {
  PartyId id;
  RsaKeyPair keypair;

  const RsaPublicKey& pk() const { return keypair.pub; }
};

inline constexpr std::size_t kDefaultSharedKeyMargin = 8;

// hash(canonical([d_t, n_t, e_bt, n_bt])) reduced mod n_bt.
BigInt shared_key_mask(const RsaPrivateKey& sk_t, const RsaPublicKey& pk_bt, HashAlgorithm alg);

// Issues a certificate for an already generated shared keypair. Throws
// CertificateError if the mask is not invertible mod n_bt; callers that own
// key generation should pick a fresh keypair and retry.
SharedKeyCertificate issue_with_shared_key(const SttpIdentity& sttp, const PartyId& subject_id,
                                           const RsaKeyPair& shared,
                                           HashAlgorithm alg = HashAlgorithm::Sha256);

// Generates pk_bt/sk_bt with e_bt = subject e and n_bt > subject n
// (bit-length of n_b plus `bits_margin`), then issues C_bt. The shared
// private exponent is discarded before returning.
SharedKeyCertificate issue_shared_certificate(const SttpIdentity& sttp,
                                              const RsaPublicKey& subject_pk,
                                              const PartyId& subject_id, Rng& rng,
                                              std::size_t bits_margin = kDefaultSharedKeyMargin,
                                              HashAlgorithm alg = HashAlgorithm::Sha256);

bool verify_certificate(const SharedKeyCertificate& cert, const RsaPublicKey& pk_t,
                        const RsaPublicKey& subject_pk, HashAlgorithm alg = HashAlgorithm::Sha256);

// d_bt = mask * W_bt mod n_bt. Refuses certificates whose signature does not
// verify under the STTP's key.
BigInt recover_shared_private_exponent(const SharedKeyCertificate& cert, const SttpIdentity& sttp,
                                       HashAlgorithm alg = HashAlgorithm::Sha256);

// Append-only record of issued certificates and the subject keys they were
// issued against. Safe for concurrent use.
class CertRegistry {
 public:
  struct Entry {
    PartyId subject_id;
    RsaPublicKey subject_pk;
    SharedKeyCertificate cert;
  };

  CertRegistry() = default;
  CertRegistry(const CertRegistry& other);
  CertRegistry& operator=(const CertRegistry& other);

  void append(Entry entry);
  std::optional<Entry> find(const PartyId& subject_id) const;
  std::vector<Entry> entries() const;

  Bytes serialize() const;
  static CertRegistry deserialize(ByteView bytes);

 private:
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

}  // namespace fairx
