#include "fairx/protocol/sttp.hpp"

#include "fairx/crypto/canonical.hpp"
#include "fairx/protocol/token.hpp"

namespace fairx {

SttpRole::SttpRole(SttpIdentity identity, std::shared_ptr<const CertRegistry> registry,
                   ProtocolParams params, SttpConduct conduct)
    : identity_(std::move(identity)),
      registry_(std::move(registry)),
      params_(params),
      conduct_(conduct) {}

void SttpRole::log(const ExchangeMessage& msg) {
  Bytes bytes = serialize_message(msg);
  std::lock_guard lock(mu_);
  audit_.push_back(std::move(bytes));
}

DisputeDecision SttpRole::process_dr1(const PartyId& requester, const MessageDR1& msg) {
  log(msg);
  const auto alg = params_.hash;
  auto entry = registry_->find(msg.cert.subject_id);
  if (!entry) return Rejection{0, "certificate subject is not registered with this STTP"};
  const RsaPublicKey& pk_b = entry->subject_pk;

  // Y_a is whatever the requester's ciphertext hashes to; S_b only verifies
  // if that is the ciphertext P_b asked for.
  const Digest y_a = hash(msg.enc_da, alg);
  if (!verify_authorization_token(pk_b, msg.s_b, msg.cert, msg.y_b, y_a, requester, alg)) {
    return Rejection{1, "authorization token does not cover this request"};
  }
  if (!verify_certificate(msg.cert, identity_.pk(), pk_b, alg)) {
    return Rejection{2, "shared-key certificate invalid"};
  }
  if (hash(msg.enc_da, alg) != y_a) {
    return Rejection{3, "enc.k_a(D_a) does not hash to Y_a"};
  }

  BigInt r_b;
  {
    BigInt d_bt = recover_shared_private_exponent(msg.cert, identity_, alg);
    r_b = recover_blinding_with_shared_key(msg.y_b, d_bt, msg.cert.pk_bt.n);
  }
  if (conduct_.corrupt_dr3) r_b += 2;

  Resolution res{msg.cert.subject_id, std::nullopt, MessageDR3{r_b}};
  if (!conduct_.withhold_dr2) {
    res.to_subject = MessageDR2{msg.enc_da};
    log(*res.to_subject);
  }
  log(res.to_requester);
  return res;
}

std::vector<Bytes> SttpRole::audit_log() const {
  std::lock_guard lock(mu_);
  return audit_;
}

Bytes SttpRole::state_snapshot() const {
  CanonicalWriter w;
  w.str(identity_.id.value).integer(identity_.pk().e).integer(identity_.pk().n);
  w.bytes(registry_->serialize());
  for (const auto& entry : audit_log()) w.bytes(entry);
  return w.take();
}

}  // namespace fairx
