#include "fairx/protocol/token.hpp"

#include "fairx/crypto/canonical.hpp"

namespace fairx {

Bytes token_payload(const SharedKeyCertificate& cert, const BigInt& y_b, const Digest& y_a,
                    const PartyId& pa_id) {
  return CanonicalWriter()
      .bytes(cert.serialize())
      .integer(y_b)
      .bytes(y_a.bytes)
      .str(pa_id.value)
      .take();
}

AuthorizationToken make_authorization_token(const RsaPrivateKey& sk_b,
                                            const SharedKeyCertificate& cert, const BigInt& y_b,
                                            const Digest& y_a, const PartyId& pa_id,
                                            HashAlgorithm alg) {
  return AuthorizationToken{sign(sk_b, token_payload(cert, y_b, y_a, pa_id), alg, "S_b")};
}

bool verify_authorization_token(const RsaPublicKey& pk_b, const AuthorizationToken& token,
                                const SharedKeyCertificate& cert, const BigInt& y_b,
                                const Digest& y_a, const PartyId& pa_id, HashAlgorithm alg) {
  return verify_signature(pk_b, token_payload(cert, y_b, y_a, pa_id), token.s_b, alg, "S_b");
}

}  // namespace fairx
