#include "fairx/protocol/party_a.hpp"

#include "fairx/crypto/canonical.hpp"
#include "fairx/protocol/token.hpp"

namespace fairx {

std::string_view to_string(PhaseA p) {
  switch (p) {
    case PhaseA::Setup: return "setup";
    case PhaseA::AwaitingEM1: return "awaiting-em1";
    case PhaseA::AwaitingEM3: return "awaiting-em3";
    case PhaseA::Completed: return "completed";
    case PhaseA::Aborted: return "aborted";
    case PhaseA::WalkedAway: return "walked-away";
    case PhaseA::Disputing: return "disputing";
    case PhaseA::DisputeRejected: return "dispute-rejected";
    case PhaseA::Unresolved: return "unresolved";
  }
  return "?";
}

Bytes PartyASession::serialize() const {
  return CanonicalWriter()
      .str(self_id.value)
      .str(peer_id.value)
      .integer(pk_b.e)
      .integer(pk_b.n)
      .integer(sttp_pk.e)
      .integer(sttp_pk.n)
      .integer(BigInt(hash == HashAlgorithm::Sha1 ? 1 : 0))
      .bytes(adv.he_db.bytes)
      .integer(adv.ek_b.ek_b)
      .bytes(adv.he_da.bytes)
      .integer(adv.enc_ka_for_pa)
      .bytes(cert.serialize())
      .bytes(enc_db)
      .integer(vre.x_b)
      .integer(vre.y_b)
      .integer(vre.z_b)
      .integer(s_b.s_b)
      .bytes(enc_da)
      .take();
}

PartyASession PartyASession::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  PartyASession s;
  s.self_id = PartyId{r.str()};
  s.peer_id = PartyId{r.str()};
  s.pk_b.e = r.integer();
  s.pk_b.n = r.integer();
  s.sttp_pk.e = r.integer();
  s.sttp_pk.n = r.integer();
  s.hash = r.integer() == 1 ? HashAlgorithm::Sha1 : HashAlgorithm::Sha256;
  s.adv.he_db = Digest{r.bytes()};
  s.adv.ek_b = KeyCommitment{r.integer()};
  s.adv.he_da = Digest{r.bytes()};
  s.adv.enc_ka_for_pa = r.integer();
  s.cert = SharedKeyCertificate::deserialize(r.bytes());
  s.enc_db = r.bytes();
  s.vre.x_b = r.integer();
  s.vre.y_b = r.integer();
  s.vre.z_b = r.integer();
  s.s_b.s_b = r.integer();
  s.enc_da = r.bytes();
  r.expect_end();
  return s;
}

MessageDR1 build_dr1(const PartyASession& s) {
  return MessageDR1{s.cert, s.enc_da, s.vre.y_b, s.s_b};
}

std::optional<Bytes> recover_document(const PartyASession& s, const BigInt& r_b) {
  if (!check_blinding_consistency(r_b, s.vre.y_b, s.pk_b, s.cert.pk_bt)) return std::nullopt;
  try {
    SymmetricKey k_b = unblind_key(s.vre.x_b, r_b);
    return sym_decrypt(k_b, s.enc_db, s.hash);
  } catch (const VreError&) {
    return std::nullopt;
  }
}

PartyA::PartyA(PartyAConfig cfg, Rng rng, PartyAConduct conduct)
    : cfg_(std::move(cfg)), rng_(std::move(rng)), conduct_(conduct) {
  session_.self_id = cfg_.id;
  session_.peer_id = cfg_.peer_id;
  session_.pk_b = cfg_.peer_pk;
  session_.sttp_pk = cfg_.sttp_pk;
  session_.hash = cfg_.params.hash;
}

SetupReply PartyA::accept_offer(const SetupOffer& offer) {
  if (phase_ != PhaseA::Setup) throw ProtocolError("setup already complete");
  const auto& p = cfg_.params;
  k_a_ = SymmetricKey{rsa_decrypt(cfg_.keys.priv, offer.enc_ka, "k_a")};
  if (k_a_.k <= 0) throw ProtocolError("offered k_a decrypts to zero");
  session_.adv.he_db = offer.he_db;
  session_.adv.ek_b = offer.ek_b;
  session_.adv.enc_ka_for_pa = offer.enc_ka;
  session_.adv.he_da = hash(sym_encrypt(k_a_, cfg_.document, p.hash), p.hash);
  phase_ = PhaseA::AwaitingEM1;
  return SetupReply{session_.adv.he_da};
}

Bytes PartyA::deviated_em2_ciphertext() {
  const auto& p = cfg_.params;
  SymmetricKey key = k_a_;
  Bytes doc = cfg_.document;
  const auto dev = conduct_.em2;
  if (dev == Em2Deviation::WrongKey || dev == Em2Deviation::WrongDocumentWrongKey) {
    key = SymmetricKey::random(p.sym_key_bits, rng_);
    if (key == k_a_) key.k += 1;
  }
  if (dev == Em2Deviation::WrongDocument || dev == Em2Deviation::WrongDocumentWrongKey) {
    Bytes other = rng_.bytes(std::max<std::size_t>(doc.size(), 1));
    if (other == doc) other[0] ^= 0xff;
    doc = std::move(other);
  }
  return sym_encrypt(key, doc, p.hash);
}

Em1Outcome PartyA::process_em1(const MessageEM1& msg) {
  Em1Outcome out;
  if (phase_ != PhaseA::AwaitingEM1) {
    notes_.push_back("E-M1 ignored in phase " + std::string(to_string(phase_)));
    return out;
  }
  const auto& p = cfg_.params;
  const RsaPublicKey& pk_b = cfg_.peer_pk;
  auto abort_at = [&](int check, const char* why) {
    failed_check_ = check;
    phase_ = PhaseA::Aborted;
    notes_.push_back("E-M1 check " + std::to_string(check) + " failed: " + why);
    out.failed_check = check;
    return out;
  };

  // (1) S_b over (C_bt, Y_b, Y_a, P_a) with Y_a = heD_a.
  if (!verify_authorization_token(pk_b, msg.s_b, msg.cert, msg.y_b, session_.adv.he_da, cfg_.id,
                                  p.hash)) {
    return abort_at(1, "authorization token does not verify");
  }
  // (2) C_bt issued by the STTP for this peer.
  if (msg.cert.subject_id != cfg_.peer_id ||
      !verify_certificate(msg.cert, cfg_.sttp_pk, pk_b, p.hash)) {
    return abort_at(2, "shared-key certificate invalid");
  }
  // (3) enc.k_b(D_b) is the advertised ciphertext.
  if (hash(msg.enc_db, p.hash) != session_.adv.he_db) {
    return abort_at(3, "enc.k_b(D_b) does not match heD_b");
  }
  // (4)-(6) the verifiable encryption of k_b.
  VrePublic vre;
  try {
    auto [x_b, z_b] = decrypt_pair(msg.enc_xz, cfg_.keys.priv);
    vre = VrePublic{x_b, msg.y_b, z_b};
  } catch (const DecodeError&) {
    return abort_at(4, "enc.pk_a(X_b + Z_b) does not decrypt to a pair");
  }
  VreCheck check = vre_check(vre, session_.adv.ek_b, pk_b, msg.cert.pk_bt);
  if (check != VreCheck::Ok) {
    return abort_at(static_cast<int>(check), "verifiable key encryption rejected");
  }

  // k_a: the setup offer already delivered this ciphertext and A already
  // decrypted it; only a different ciphertext needs a fresh decryption.
  if (msg.enc_ka != session_.adv.enc_ka_for_pa) {
    k_a_ = SymmetricKey{rsa_decrypt(cfg_.keys.priv, msg.enc_ka, "k_a")};
    notes_.push_back("E-M1 carries a different k_a than setup; using E-M1's");
  }

  session_.cert = msg.cert;
  session_.enc_db = msg.enc_db;
  session_.vre = vre;
  session_.s_b = msg.s_b;

  if (conduct_.premature_dispute || conduct_.dr1 != Dr1Mutation::None) {
    session_.enc_da = sym_encrypt(k_a_, cfg_.document, p.hash);
    out.dr1 = begin_dispute();
    return out;
  }
  if (conduct_.em2 == Em2Deviation::Absent) {
    phase_ = PhaseA::WalkedAway;
    notes_.push_back("E-M2 not sent");
    return out;
  }
  session_.enc_da = conduct_.em2 == Em2Deviation::None ? sym_encrypt(k_a_, cfg_.document, p.hash)
                                                       : deviated_em2_ciphertext();
  phase_ = PhaseA::AwaitingEM3;
  out.em2 = MessageEM2{session_.enc_da};
  return out;
}

std::optional<MessageDR1> PartyA::begin_dispute() {
  if (!conduct_.auto_dispute && !conduct_.premature_dispute && conduct_.dr1 == Dr1Mutation::None) {
    phase_ = PhaseA::Disputing;
    notes_.push_back("dispute needed; left to the operator");
    return std::nullopt;
  }
  MessageDR1 dr1 = build_dr1(session_);
  switch (conduct_.dr1) {
    case Dr1Mutation::None:
      break;
    case Dr1Mutation::JunkEncDa:
      dr1.enc_da = rng_.bytes(std::max<std::size_t>(dr1.enc_da.size(), 1));
      break;
    case Dr1Mutation::ForeignYb:
      dr1.y_b += 1;
      break;
    case Dr1Mutation::CorruptToken:
      dr1.s_b.s_b = (dr1.s_b.s_b + 1) % cfg_.peer_pk.n;
      break;
    case Dr1Mutation::CorruptCert:
      dr1.cert.w_bt += 1;
      break;
  }
  phase_ = PhaseA::Disputing;
  notes_.push_back("DR-M1 sent to STTP");
  return dr1;
}

Em3Outcome PartyA::process_em3(const MessageEM3& msg) {
  Em3Outcome out;
  if (phase_ != PhaseA::AwaitingEM3 && phase_ != PhaseA::Disputing) {
    notes_.push_back("E-M3 ignored in phase " + std::string(to_string(phase_)));
    return out;
  }
  if (auto doc = recover_document(session_, msg.r_b)) {
    received_ = std::move(doc);
    phase_ = PhaseA::Completed;
    out.recovered = true;
    notes_.push_back("E-M3: recovered D_b");
    return out;
  }
  notes_.push_back("E-M3: r_b inconsistent with Y_b / X_b");
  if (phase_ == PhaseA::AwaitingEM3) out.dr1 = begin_dispute();
  return out;
}

std::optional<MessageDR1> PartyA::on_em3_timeout() {
  if (phase_ != PhaseA::AwaitingEM3) return std::nullopt;
  notes_.push_back("no E-M3 before timeout");
  return begin_dispute();
}

void PartyA::process_dr3(const MessageDR3& msg) {
  if (phase_ == PhaseA::Completed) {
    notes_.push_back("DR-M3 after completion ignored");
    return;
  }
  if (phase_ != PhaseA::Disputing) {
    notes_.push_back("DR-M3 ignored in phase " + std::string(to_string(phase_)));
    return;
  }
  if (auto doc = recover_document(session_, msg.r_b)) {
    received_ = std::move(doc);
    phase_ = PhaseA::Completed;
    notes_.push_back("DR-M3: recovered D_b");
    return;
  }
  sttp_misbehaved_ = true;
  phase_ = PhaseA::Unresolved;
  notes_.push_back("DR-M3: STTP returned an inconsistent r_b (STTP misbehavior)");
}

void PartyA::process_sttp_error(int failed_check, const std::string& reason) {
  if (phase_ != PhaseA::Disputing) return;
  phase_ = PhaseA::DisputeRejected;
  notes_.push_back("STTP rejected DR-M1 at check " + std::to_string(failed_check) + ": " + reason);
}

void PartyA::on_dr3_timeout() {
  if (phase_ != PhaseA::Disputing) return;
  phase_ = PhaseA::Unresolved;
  notes_.push_back("STTP never answered DR-M1");
}

}  // namespace fairx
