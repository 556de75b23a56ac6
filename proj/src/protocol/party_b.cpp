#include "fairx/protocol/party_b.hpp"

#include "fairx/protocol/token.hpp"

namespace fairx {

std::string_view to_string(PhaseB p) {
  switch (p) {
    case PhaseB::Setup: return "setup";
    case PhaseB::Advertised: return "advertised";
    case PhaseB::AwaitingEM2: return "awaiting-em2";
    case PhaseB::Completed: return "completed";
    case PhaseB::Withheld: return "withheld";
    case PhaseB::TimedOut: return "timed-out";
  }
  return "?";
}

PartyB::PartyB(PartyBConfig cfg, Rng rng, PartyBConduct conduct)
    : cfg_(std::move(cfg)), rng_(std::move(rng)), conduct_(conduct) {}

SetupOffer PartyB::make_offer() {
  if (phase_ != PhaseB::Setup || !adv_.he_db.bytes.empty()) {
    throw ProtocolError("offer already made");
  }
  const auto& p = cfg_.params;
  k_b_ = SymmetricKey::random(p.sym_key_bits, rng_);
  k_a_ = SymmetricKey::random(p.sym_key_bits, rng_);
  if (k_a_.k >= cfg_.peer_pk.n) throw ProtocolError("k_a does not fit under P_a's modulus");
  SetupOffer offer;
  offer.he_db = hash(sym_encrypt(k_b_, cfg_.document, p.hash), p.hash);
  offer.ek_b = KeyCommitment::commit(k_b_, cfg_.keys.pub);
  offer.enc_ka = rsa_encrypt(cfg_.peer_pk, k_a_.k, "enc.pk_a(k_a)");
  adv_.he_db = offer.he_db;
  adv_.ek_b = offer.ek_b;
  adv_.enc_ka_for_pa = offer.enc_ka;
  return offer;
}

void PartyB::accept_reply(const SetupReply& reply) {
  if (phase_ != PhaseB::Setup || adv_.he_db.bytes.empty()) {
    throw ProtocolError("setup reply without an outstanding offer");
  }
  adv_.he_da = reply.he_da;
  phase_ = PhaseB::Advertised;
}

MessageEM1 PartyB::build_em1() {
  if (phase_ != PhaseB::Advertised) throw ProtocolError("E-M1 requires a completed setup");
  const auto& p = cfg_.params;
  const RsaPublicKey& pk_b = cfg_.keys.pub;
  const RsaPublicKey& pk_bt = cfg_.cert.pk_bt;

  MessageEM1 m;
  m.enc_db = sym_encrypt(k_b_, cfg_.document, p.hash);
  m.cert = cfg_.cert;
  vre_ = vre_generate(k_b_, pk_b, pk_bt, rng_, p.sym_key_bits);
  VrePublic pub = vre_->pub;
  Digest y_a = adv_.he_da;
  PartyId receiver = cfg_.peer_id;
  // The ciphertext was already computed for the setup offer; textbook RSA is
  // deterministic so it is carried again rather than recomputed.
  m.enc_ka = adv_.enc_ka_for_pa;

  const BigInt joint = pk_b.n * pk_bt.n;
  switch (conduct_.em1) {
    case Em1Mutation::None:
      break;
    case Em1Mutation::EncDb:
      if (m.enc_db.empty()) m.enc_db.push_back(0);
      m.enc_db[0] ^= 0x01;
      break;
    case Em1Mutation::CertSignature:
      m.cert.sig_t = (m.cert.sig_t + 1) % cfg_.sttp_pk.n;
      break;
    case Em1Mutation::TokenYa:
      y_a = hash(rng_.bytes(32), p.hash);
      break;
    case Em1Mutation::TokenPa:
      receiver = PartyId{cfg_.peer_id.value + "-other"};
      break;
    case Em1Mutation::XbPlusOne:
      pub.x_b += 1;
      break;
    case Em1Mutation::XbOverflow:
      pub.x_b += pk_b.n;
      break;
    case Em1Mutation::ZbForeignKey: {
      SymmetricKey other = SymmetricKey::random(p.sym_key_bits, rng_);
      if (other == k_b_) other.k += 1;
      pub.z_b = rsa_apply(other.k, pk_b.e, joint, RsaOp::Encrypt, "Z_b");
      break;
    }
    case Em1Mutation::YbForeignBlind:
      pub.y_b = rsa_apply(vre_->secret.r_b + 2, pk_b.e, joint, RsaOp::Encrypt, "Y_b");
      break;
    case Em1Mutation::EncKa: {
      SymmetricKey other = SymmetricKey::random(p.sym_key_bits, rng_);
      if (other == k_a_) other.k += 1;
      m.enc_ka = rsa_encrypt(cfg_.peer_pk, other.k, "enc.pk_a(k_a)");
      break;
    }
  }

  m.y_b = pub.y_b;
  m.enc_xz = encrypt_pair(pub.x_b, pub.z_b, cfg_.peer_pk);
  m.s_b = make_authorization_token(cfg_.keys.priv, m.cert, m.y_b, y_a, receiver, p.hash);
  phase_ = PhaseB::AwaitingEM2;
  return m;
}

bool PartyB::accept_ciphertext(const Bytes& enc_da, std::string_view via) {
  const auto& p = cfg_.params;
  if (hash(enc_da, p.hash) != adv_.he_da) {
    notes_.push_back(std::string(via) + ": ciphertext does not match heD_a");
    return false;
  }
  if (!received_) {
    received_ = sym_decrypt(k_a_, enc_da, p.hash);
    notes_.push_back(std::string(via) + ": recovered D_a");
  }
  return true;
}

std::optional<MessageEM3> PartyB::process_em2(const MessageEM2& msg) {
  if (phase_ != PhaseB::AwaitingEM2) {
    notes_.push_back("E-M2 ignored in phase " + std::string(to_string(phase_)));
    return std::nullopt;
  }
  if (!accept_ciphertext(msg.enc_da, "E-M2")) {
    phase_ = PhaseB::Withheld;
    return std::nullopt;
  }
  if (conduct_.withhold_em3) {
    notes_.push_back("E-M3 withheld");
    phase_ = PhaseB::Withheld;
    return std::nullopt;
  }
  phase_ = PhaseB::Completed;
  BigInt r_b = vre_->secret.r_b;
  if (conduct_.corrupt_em3) r_b += 2;
  return MessageEM3{r_b};
}

void PartyB::on_em2_timeout() {
  if (phase_ == PhaseB::AwaitingEM2) {
    notes_.push_back("no E-M2 before timeout");
    phase_ = PhaseB::TimedOut;
  }
}

bool PartyB::process_dr2(const MessageDR2& msg) {
  if (phase_ == PhaseB::Setup || phase_ == PhaseB::Advertised) {
    notes_.push_back("DR-M2 ignored before E-M1");
    return false;
  }
  bool had = received_.has_value();
  accept_ciphertext(msg.enc_da, "DR-M2");
  return !had && received_.has_value();
}

}  // namespace fairx
