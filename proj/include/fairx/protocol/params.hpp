#pragma once

#include <cstddef>
#include <string_view>

#include "fairx/crypto/hash.hpp"
#include "fairx/crypto/symmetric.hpp"

namespace fairx {

class ProtocolError : public Error {
 public:
  using Error::Error;
};

struct ProtocolParams {
  HashAlgorithm hash = HashAlgorithm::Sha256;
  std::size_t sym_key_bits = kDefaultSymmetricKeyBits;
};

// Deviation hooks. A default-constructed conduct is the honest protocol;
// the harness turns adversary behaviors into these.

enum class Em1Mutation {
  None,
  EncDb,           // flip a ciphertext byte of enc.k_b(D_b)
  CertSignature,   // forge Sig_t, re-sign S_b over the forged certificate
  TokenYa,         // S_b signed over a Y_a for some other document
  TokenPa,         // S_b signed for some other receiver
  XbPlusOne,       // X_b + 1
  XbOverflow,      // X_b + n_b
  ZbForeignKey,    // Z_b built from a key other than k_b
  YbForeignBlind,  // Y_b from another blinding prime, S_b re-signed
  EncKa,           // enc.pk_a(k) for a key other than the advertised k_a
};

std::string_view to_string(Em1Mutation m);

struct PartyBConduct {
  Em1Mutation em1 = Em1Mutation::None;
  bool withhold_em3 = false;
  bool corrupt_em3 = false;
};

enum class Em2Deviation { None, WrongKey, WrongDocument, WrongDocumentWrongKey, Absent };

enum class Dr1Mutation { None, JunkEncDa, ForeignYb, CorruptToken, CorruptCert };

std::string_view to_string(Em2Deviation d);
std::string_view to_string(Dr1Mutation m);

struct PartyAConduct {
  Em2Deviation em2 = Em2Deviation::None;
  // Go to the STTP straight after a valid E-M1 instead of sending E-M2.
  bool premature_dispute = false;
  Dr1Mutation dr1 = Dr1Mutation::None;
  // Dispute automatically when E-M3 is missing or wrong.
  bool auto_dispute = true;
};

struct SttpConduct {
  bool corrupt_dr3 = false;
  bool withhold_dr2 = false;
};

}  // namespace fairx
