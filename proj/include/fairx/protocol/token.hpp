#pragma once

#include "fairx/common/party_id.hpp"
#include "fairx/protocol/messages.hpp"

namespace fairx {

// canonical([C_bt, Y_b, Y_a, P_a]) with C_bt in its serialized form.
Bytes token_payload(const SharedKeyCertificate& cert, const BigInt& y_b, const Digest& y_a,
                    const PartyId& pa_id);

AuthorizationToken make_authorization_token(const RsaPrivateKey& sk_b,
                                            const SharedKeyCertificate& cert, const BigInt& y_b,
                                            const Digest& y_a, const PartyId& pa_id,
                                            HashAlgorithm alg = HashAlgorithm::Sha256);

bool verify_authorization_token(const RsaPublicKey& pk_b, const AuthorizationToken& token,
                                const SharedKeyCertificate& cert, const BigInt& y_b,
                                const Digest& y_a, const PartyId& pa_id,
                                HashAlgorithm alg = HashAlgorithm::Sha256);

}  // namespace fairx
